//! Adaptive Dormand–Prince 5(4) integration with cubic-Hermite dense output.
//!
//! The right-hand side writes its derivative into a caller-provided slice and
//! returns `false` when the requested point lies outside its domain; the
//! stepper treats that exactly like an oversized local error and retries with
//! a smaller step, so trajectories can hug an open domain without the caller
//! wiring up event detection.

use crate::error::{Error, Result};

/// Tolerances and step limits for [`integrate`] / [`integrate_until`].
#[derive(Debug, Clone)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Upper bound on the step magnitude. The Hermite interpolant between
    /// accepted knots is only O(h⁴), two orders below the stepper itself, so
    /// callers that evaluate dense output should cap the step accordingly.
    pub max_step: f64,
    /// Accepted + rejected step budget.
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-10,
            atol: 1e-10,
            max_step: f64::INFINITY,
            max_steps: 1_000_000,
        }
    }
}

impl OdeOptions {
    pub fn with_tol(tol: f64) -> Self {
        OdeOptions {
            rtol: tol,
            atol: tol,
            ..OdeOptions::default()
        }
    }
}

/// Accepted knots (state and derivative) of one integration, evaluable
/// anywhere on the covered interval by cubic Hermite interpolation.
#[derive(Debug, Clone)]
pub struct DenseOutput {
    dim: usize,
    ts: Vec<f64>,
    ys: Vec<f64>,
    dys: Vec<f64>,
}

impl DenseOutput {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn t_start(&self) -> f64 {
        self.ts[0]
    }

    pub fn t_end(&self) -> f64 {
        *self.ts.last().unwrap()
    }

    pub fn y_end(&self) -> &[f64] {
        &self.ys[self.ys.len() - self.dim..]
    }

    /// Iterator over the accepted knots in integration order.
    pub fn knots(&self) -> impl Iterator<Item = (f64, &[f64])> {
        self.ts
            .iter()
            .copied()
            .zip(self.ys.chunks_exact(self.dim))
    }

    fn segment_for(&self, t: f64) -> usize {
        // Knots are monotone in integration direction (either way round).
        let forward = self.ts[self.ts.len() - 1] >= self.ts[0];
        let n = self.ts.len();
        let mut lo = 0usize;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let before = if forward {
                self.ts[mid] <= t
            } else {
                self.ts[mid] >= t
            };
            if before {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Cubic Hermite evaluation at `t`, which must lie on the covered
    /// interval (clamped to it otherwise).
    pub fn eval(&self, t: f64, out: &mut [f64]) {
        assert_eq!(out.len(), self.dim);
        let k = self.segment_for(t);
        let (t0, t1) = (self.ts[k], self.ts[k + 1]);
        let h = t1 - t0;
        if h == 0.0 {
            out.copy_from_slice(&self.ys[k * self.dim..(k + 1) * self.dim]);
            return;
        }
        let s = ((t - t0) / h).clamp(0.0, 1.0);
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        let y0 = &self.ys[k * self.dim..(k + 1) * self.dim];
        let y1 = &self.ys[(k + 1) * self.dim..(k + 2) * self.dim];
        let d0 = &self.dys[k * self.dim..(k + 1) * self.dim];
        let d1 = &self.dys[(k + 1) * self.dim..(k + 2) * self.dim];
        for i in 0..self.dim {
            out[i] = h00 * y0[i] + h10 * h * d0[i] + h01 * y1[i] + h11 * h * d1[i];
        }
    }

    pub fn eval_component(&self, t: f64, i: usize) -> f64 {
        let mut buf = vec![0.0; self.dim];
        self.eval(t, &mut buf);
        buf[i]
    }
}

// Dormand–Prince RK5(4)7M tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 35.0 / 384.0 - 5179.0 / 57600.0;
const E3: f64 = 500.0 / 1113.0 - 7571.0 / 16695.0;
const E4: f64 = 125.0 / 192.0 - 393.0 / 640.0;
const E5: f64 = -2187.0 / 6784.0 + 92097.0 / 339200.0;
const E6: f64 = 11.0 / 84.0 - 187.0 / 2100.0;
const E7: f64 = -1.0 / 40.0;

struct Stepper<'a, F> {
    rhs: F,
    opts: &'a OdeOptions,
    dim: usize,
    k: [Vec<f64>; 7],
    y_tmp: Vec<f64>,
    y_next: Vec<f64>,
}

impl<'a, F> Stepper<'a, F>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> bool,
{
    fn new(rhs: F, dim: usize, opts: &'a OdeOptions) -> Self {
        Stepper {
            rhs,
            opts,
            dim,
            k: std::array::from_fn(|_| vec![0.0; dim]),
            y_tmp: vec![0.0; dim],
            y_next: vec![0.0; dim],
        }
    }

    fn stage(&mut self, t: f64, y: &[f64], h: f64, coefs: &[(f64, usize)], c: f64, out: usize) -> bool {
        for i in 0..self.dim {
            let mut acc = y[i];
            for &(a, j) in coefs {
                acc += h * a * self.k[j][i];
            }
            self.y_tmp[i] = acc;
        }
        let ok = (self.rhs)(t + c * h, &self.y_tmp, &mut self.k[out]);
        ok && self.k[out].iter().all(|v| v.is_finite())
    }

    /// One attempted step from (t, y) with k[0] already holding f(t, y).
    /// Returns Ok(err_norm) on a computable step (accept iff err ≤ 1),
    /// Err(()) when a stage left the domain.
    fn try_step(&mut self, t: f64, y: &[f64], h: f64) -> std::result::Result<f64, ()> {
        if !self.stage(t, y, h, &[(A21, 0)], C2, 1) {
            return Err(());
        }
        if !self.stage(t, y, h, &[(A31, 0), (A32, 1)], C3, 2) {
            return Err(());
        }
        if !self.stage(t, y, h, &[(A41, 0), (A42, 1), (A43, 2)], C4, 3) {
            return Err(());
        }
        if !self.stage(t, y, h, &[(A51, 0), (A52, 1), (A53, 2), (A54, 3)], C5, 4) {
            return Err(());
        }
        if !self.stage(t, y, h, &[(A61, 0), (A62, 1), (A63, 2), (A64, 3), (A65, 4)], 1.0, 5) {
            return Err(());
        }
        for i in 0..self.dim {
            self.y_next[i] = y[i]
                + h * (B1 * self.k[0][i]
                    + B3 * self.k[2][i]
                    + B4 * self.k[3][i]
                    + B5 * self.k[4][i]
                    + B6 * self.k[5][i]);
        }
        let feasible = {
            let (rhs, y_next, k6) = (&mut self.rhs, &self.y_next, &mut self.k[6]);
            rhs(t + h, y_next, k6)
        };
        if !feasible || !self.k[6].iter().all(|v| v.is_finite()) {
            return Err(());
        }
        let mut err = 0.0f64;
        for i in 0..self.dim {
            let e = h
                * (E1 * self.k[0][i]
                    + E3 * self.k[2][i]
                    + E4 * self.k[3][i]
                    + E5 * self.k[4][i]
                    + E6 * self.k[5][i]
                    + E7 * self.k[6][i]);
            let scale = self.opts.atol
                + self.opts.rtol * y[i].abs().max(self.y_next[i].abs());
            err += (e / scale) * (e / scale);
        }
        Ok((err / self.dim as f64).sqrt())
    }
}

fn run<F>(
    mut rhs: F,
    t0: f64,
    y0: &[f64],
    t_limit: f64,
    mut stop: Option<&mut dyn FnMut(f64, &[f64]) -> bool>,
    opts: &OdeOptions,
) -> Result<DenseOutput>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> bool,
{
    let dim = y0.len();
    let dir = if t_limit >= t0 { 1.0 } else { -1.0 };
    let span = (t_limit - t0).abs();

    let mut dy0 = vec![0.0; dim];
    if !rhs(t0, y0, &mut dy0) || !dy0.iter().all(|v| v.is_finite()) {
        return Err(Error::StepFailure(
            "right-hand side is infeasible at the initial state".into(),
        ));
    }

    let mut dense = DenseOutput {
        dim,
        ts: vec![t0],
        ys: y0.to_vec(),
        dys: dy0.clone(),
    };
    if span == 0.0 {
        return Ok(dense);
    }
    if let Some(s) = stop.as_mut() {
        if s(t0, y0) {
            return Ok(dense);
        }
    }

    let mut st = Stepper::new(&mut rhs, dim, opts);
    st.k[0].copy_from_slice(&dy0);

    let mut t = t0;
    let mut y = y0.to_vec();
    let mut h = span.min(opts.max_step).min(1e-2_f64.max(span * 1e-4));
    let mut steps = 0usize;

    loop {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::StepFailure(format!(
                "step budget {} exhausted at t = {t:e}",
                opts.max_steps
            )));
        }
        let remaining = (t_limit - t) * dir;
        let h_eff = h.min(remaining).min(opts.max_step);
        if h_eff <= (t.abs() + 1.0) * 1e-14 {
            return Err(Error::StepFailure(format!("step underflow at t = {t:e}")));
        }

        match st.try_step(t, &y, dir * h_eff) {
            Err(()) => {
                h = h_eff * 0.5;
                continue;
            }
            Ok(err) if err > 1.0 => {
                let factor = (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
                h = h_eff * factor;
                continue;
            }
            Ok(err) => {
                t += dir * h_eff;
                y.copy_from_slice(&st.y_next);
                // FSAL: stage 7 is the derivative at the accepted point.
                let knext = st.k[6].clone();
                st.k[0].copy_from_slice(&knext);
                dense.ts.push(t);
                dense.ys.extend_from_slice(&y);
                dense.dys.extend_from_slice(&knext);

                if let Some(s) = stop.as_mut() {
                    if s(t, &y) {
                        return Ok(dense);
                    }
                }
                if (t_limit - t) * dir <= 0.0 {
                    if stop.is_some() {
                        return Err(Error::StepFailure(format!(
                            "stop condition not met before t = {t_limit:e}"
                        )));
                    }
                    return Ok(dense);
                }
                let factor = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                };
                h = h_eff * factor;
            }
        }
    }
}

/// Integrate y' = f(t, y) from `t0` to `t1` (either direction).
pub fn integrate<F>(rhs: F, t0: f64, y0: &[f64], t1: f64, opts: &OdeOptions) -> Result<DenseOutput>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> bool,
{
    run(rhs, t0, y0, t1, None, opts)
}

/// Integrate forward (in the direction of `t_cap`) until `stop` holds at an
/// accepted knot. Errors with [`Error::StepFailure`] if the cap is reached
/// first.
pub fn integrate_until<F, S>(
    rhs: F,
    t0: f64,
    y0: &[f64],
    t_cap: f64,
    mut stop: S,
    opts: &OdeOptions,
) -> Result<DenseOutput>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> bool,
    S: FnMut(f64, &[f64]) -> bool,
{
    run(rhs, t0, y0, t_cap, Some(&mut stop), opts)
}
