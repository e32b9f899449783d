//! Acceptance gate: twelve end-to-end checks over the whole workspace, one
//! per criterion, each printing a single `[PASS]`/`[FAIL]` line. The target
//! runs without the libtest harness so the lines always reach the terminal;
//! pass a substring (e.g. `criterion_07`) to run a subset. Tolerances are
//! pinned as named constants next to the criterion that uses them.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use htubes::curvature::numeric_mean_curvature;
use htubes::foliation::{embeddedness, foliation_criterion, solve_x0, tangency_scan};
use htubes::isoperimetric::{ambient_volume, tube_area, tube_volume};
use htubes::profile::{
    closed_form_profile, energy, integrate_profile, profile_normal_and_convexity, TubeParams,
};
use htubes::sister::{
    conformal_profile, helicoid_fundamental_forms, horizontal_geodesic_deformation,
    induced_metric_rho, jacobi_amplitude, lattice_b, ruling_rate, sister_params,
    vertical_geodesic_deformation, GeodesicDeformation, SisterParams,
};
use htubes::space::{metric_and_frame, ModelPoint, SpaceParams};
use htubes::Error;

/// Parameter triples (κ, τ, H) spanning all three signs of κ and both signs
/// of κ − 4τ².
const TRIPLES: [(f64, f64, f64); 9] = [
    (4.0, 0.4, 1.0),
    (4.0, 1.5, 1.0),
    (4.0, 1.0, 0.6),
    (0.0, 0.5, 1.0),
    (0.0, 0.5, 2.0),
    (0.0, 1.0, 1.0),
    (-1.0, 1.0, 1.0),
    (-1.0, 0.4, 0.9),
    (-2.0, 0.7, 1.2),
];

fn verdict(n: usize, desc: &str, outcome: Result<(), String>) -> bool {
    match outcome {
        Ok(()) => {
            println!("[PASS] criterion {n}: {desc}");
            true
        }
        Err(detail) => {
            println!("[FAIL] criterion {n}: {desc} — {detail}");
            false
        }
    }
}

/// Deterministic pseudo-random stream for the sampled criteria.
struct Lcg(u64);

impl Lcg {
    fn next_unit(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

const X0_TOL: f64 = 5e-7;
const X0_RESIDUAL_TOL: f64 = 1e-12;

fn criterion_01_root_constant() -> bool {
    let x0 = solve_x0();
    let residual = (x0 * x0.atanh() - 1.0).abs();
    let outcome = if (x0 - 0.833557).abs() > X0_TOL {
        Err(format!("x0 = {x0:.9}, expected 0.833557 within {X0_TOL:e}"))
    } else if residual > X0_RESIDUAL_TOL {
        Err(format!("residual {residual:e} exceeds {X0_RESIDUAL_TOL:e}"))
    } else {
        Ok(())
    };
    verdict(1, "x0 solves x·arctanh x = 1 and equals 0.833557", outcome)
}

const H0_TOL: f64 = 1e-4;

fn criterion_02_foliation_decisions() -> bool {
    let outcome = (|| {
        let hyperbolic = foliation_criterion(&SpaceParams::new(4.0, 1.5).unwrap());
        if !hyperbolic.foliates || hyperbolic.h0.is_some() {
            return Err(format!("(4, 1.5) should foliate: {hyperbolic:?}"));
        }
        let elliptic = foliation_criterion(&SpaceParams::new(4.0, 0.4).unwrap());
        if elliptic.foliates {
            return Err("(4, 0.4) should not foliate".to_string());
        }
        let h0 = elliptic
            .h0
            .ok_or_else(|| "(4, 0.4) should report the critical H".to_string())?;
        if (h0 - 0.4571).abs() > H0_TOL {
            return Err(format!("H0 = {h0:.6}, expected 0.4571 within {H0_TOL:e}"));
        }
        Ok(())
    })();
    verdict(
        2,
        "(4, 1.5) foliates; (4, 0.4) fails with critical H = 0.4571",
        outcome,
    )
}

const MC_GRID_TOL: f64 = 1e-5;
const MC_STD_TOL: f64 = 1e-6;
/// Centered five-point second differences balance truncation against f64
/// rounding near this step for the κ > 0 charts; 1e-5 would leave the grids
/// dominated by rounding noise above the 1e-5 accuracy target.
const MC_FD_STEP: f64 = 1e-4;

fn criterion_03_mean_curvature_oracle() -> bool {
    let outcome = (|| {
        for &(kappa, tau, h) in &TRIPLES {
            let t = TubeParams::new(kappa, tau, h).map_err(|e| e.to_string())?;
            let mut errs = Vec::with_capacity(25);
            for i in 0..5 {
                let phi = 0.17 + i as f64 * (2.0 * PI - 0.3) / 4.9;
                for j in 0..5 {
                    let v = 0.1 + 1.1 * j as f64;
                    let h_num =
                        numeric_mean_curvature(&t, phi, v, MC_FD_STEP).map_err(|e| e.to_string())?;
                    errs.push((h_num - h).abs());
                }
            }
            let max = errs.iter().cloned().fold(0.0, f64::max);
            let mean = errs.iter().sum::<f64>() / errs.len() as f64;
            let std =
                (errs.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / errs.len() as f64)
                    .sqrt();
            if max > MC_GRID_TOL {
                return Err(format!("({kappa}, {tau}, {h}): max error {max:e} > {MC_GRID_TOL:e}"));
            }
            if std > MC_STD_TOL {
                return Err(format!("({kappa}, {tau}, {h}): error std {std:e} > {MC_STD_TOL:e}"));
            }
        }
        Ok(())
    })();
    verdict(
        3,
        "finite-difference mean curvature equals prescribed H on 25-point grids for nine triples",
        outcome,
    )
}

const PROFILE_SUP_TOL: f64 = 1e-8;
const ENERGY_DRIFT_TOL: f64 = 1e-8;
const PROFILE_ODE_TOL: f64 = 1e-12;

fn criterion_04_closed_form_ode_equivalence() -> bool {
    let outcome = (|| {
        for &(kappa, tau, h) in &TRIPLES {
            let t = TubeParams::new(kappa, tau, h).map_err(|e| e.to_string())?;
            let curve =
                integrate_profile(&t, 0.0, 2.0 * PI, PROFILE_ODE_TOL).map_err(|e| e.to_string())?;
            let mut sup = 0.0f64;
            let mut drift = 0.0f64;
            for s in &curve.samples {
                let exact = closed_form_profile(&t, s.phi).map_err(|e| e.to_string())?;
                sup = sup.max((s.r - exact.r).abs()).max((s.h - exact.h).abs());
                drift = drift.max(energy(&t, s.r, s.phi).abs());
            }
            if sup > PROFILE_SUP_TOL {
                return Err(format!("({kappa}, {tau}, {h}): sup distance {sup:e} > {PROFILE_SUP_TOL:e}"));
            }
            if drift > ENERGY_DRIFT_TOL {
                return Err(format!("({kappa}, {tau}, {h}): energy drift {drift:e} > {ENERGY_DRIFT_TOL:e}"));
            }
        }
        Ok(())
    })();
    verdict(
        4,
        "integrated profiles match the closed forms with conserved energy for nine triples",
        outcome,
    )
}

const AREA_LAW_TOL: f64 = 1e-8;
const AREA_QUAD_TOL: f64 = 1e-10;
const AREA_LIMIT_TOL: f64 = 1e-6;

fn criterion_05_round_sphere_area_law() -> bool {
    let outcome = (|| {
        for h in [1e-5, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
            let t = TubeParams::new(4.0, 1.0, h).map_err(|e| e.to_string())?;
            let area = tube_area(&t, AREA_QUAD_TOL).map_err(|e| e.to_string())?;
            let law = 2.0 * PI * PI / (1.0 + h * h).sqrt();
            if (area - law).abs() > AREA_LAW_TOL {
                return Err(format!(
                    "H = {h}: area {area:.12} vs law {law:.12}, gap {:e}",
                    (area - law).abs()
                ));
            }
        }
        // As H → 0 the family closes up on the minimal torus of area 2π².
        let t = TubeParams::new(4.0, 1.0, 1e-5).map_err(|e| e.to_string())?;
        let area = tube_area(&t, AREA_QUAD_TOL).map_err(|e| e.to_string())?;
        if (area - 2.0 * PI * PI).abs() > AREA_LIMIT_TOL {
            return Err(format!("area(1e-5) = {area:.10} is not 2π² within {AREA_LIMIT_TOL:e}"));
        }
        Ok(())
    })();
    verdict(
        5,
        "round-sphere areas follow 2π²/sqrt(1+H²) down to the minimal torus",
        outcome,
    )
}

const VOLUME_ORACLE_TOL: f64 = 1e-4;
const VOLUME_QUAD_TOL: f64 = 1e-10;

/// Independent volume oracle for the tube in E(4, 1) with H = 1: a brute
/// Jacobian triple integral over solid-torus coordinates (φ, v, t), where t
/// scales the profile curve toward the axis. The map into the model chart
/// mirrors the surface immersion; the Riemannian volume density comes from
/// the ambient metric evaluated on finite-difference coordinate frames —
/// nothing here shares code with the area/volume quadratures under test.
fn volume_oracle_round(h: f64) -> f64 {
    let p = SpaceParams::new(4.0, 1.0).unwrap();
    let t_params = TubeParams::new(4.0, 1.0, h).unwrap();
    let chart = |phi: f64, v: f64, t: f64| -> [f64; 3] {
        let prof = closed_form_profile(&t_params, phi).unwrap();
        let (r, z) = (t * prof.r, t * prof.h);
        let big_r = (r + FRAC_PI_4).tan();
        [big_r * v.cos(), big_r * v.sin(), z + v / 2.0]
    };
    let density = |phi: f64, v: f64, t: f64| -> f64 {
        let d = 1e-6;
        let mut frame = [[0.0f64; 3]; 3];
        for (col, (dp, dv, dt)) in [(d, 0.0, 0.0), (0.0, d, 0.0), (0.0, 0.0, d)]
            .into_iter()
            .enumerate()
        {
            let plus = chart(phi + dp, v + dv, t + dt);
            let minus = chart(phi - dp, v - dv, t - dt);
            for k in 0..3 {
                frame[col][k] = (plus[k] - minus[k]) / (2.0 * d);
            }
        }
        let [x, y, z] = chart(phi, v, t);
        let (metric, _) = metric_and_frame(&p, &ModelPoint::cartan(x, y, z)).unwrap();
        let mut gram = [[0.0f64; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                gram[a][b] = metric.inner(&frame[a], &frame[b]);
            }
        }
        let det = gram[0][0] * (gram[1][1] * gram[2][2] - gram[1][2] * gram[2][1])
            - gram[0][1] * (gram[1][0] * gram[2][2] - gram[1][2] * gram[2][0])
            + gram[0][2] * (gram[1][0] * gram[2][1] - gram[1][1] * gram[2][0]);
        det.max(0.0).sqrt()
    };

    // φ and v directions are periodic (trapezoid sums converge spectrally);
    // the radial direction t uses composite Simpson.
    let (n_phi, n_v, n_t) = (192, 8, 96);
    let mut vol = 0.0;
    for it in 0..=n_t {
        let t = it as f64 / n_t as f64;
        let w_t = if it == 0 || it == n_t {
            1.0
        } else if it % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let mut slab = 0.0;
        for iv in 0..n_v {
            let v = 4.0 * PI * iv as f64 / n_v as f64;
            for ip in 0..n_phi {
                let phi = 2.0 * PI * ip as f64 / n_phi as f64;
                slab += density(phi, v, t);
            }
        }
        vol += w_t * slab;
    }
    vol * (1.0 / (3.0 * n_t as f64)) * (4.0 * PI / n_v as f64) * (2.0 * PI / n_phi as f64)
}

fn criterion_06_volume_consistency() -> bool {
    let outcome = (|| {
        let t = TubeParams::new(4.0, 1.0, 1.0).map_err(|e| e.to_string())?;
        let volume = tube_volume(&t, VOLUME_QUAD_TOL).map_err(|e| e.to_string())?;
        let oracle = volume_oracle_round(1.0);
        if (volume - oracle).abs() > VOLUME_ORACLE_TOL {
            return Err(format!(
                "tube_volume = {volume:.8} vs triple-integral oracle {oracle:.8}, gap {:e}",
                (volume - oracle).abs()
            ));
        }
        let ambient = ambient_volume(1.0);
        if ambient != 2.0 * PI * PI {
            return Err(format!("ambient volume {ambient} is not 2π²"));
        }
        let complement = ambient - volume;
        if volume + complement != ambient {
            return Err("volume + complement does not recover the ambient volume".to_string());
        }
        Ok(())
    })();
    verdict(
        6,
        "tube volume matches an independent Jacobian triple integral and splits 2π²",
        outcome,
    )
}

const LATTICE_ENDPOINT_TOL: f64 = 1e-9;
const LATTICE_ANTISYM_TOL: f64 = 1e-8;
const LATTICE_QUAD_TOL: f64 = 1e-11;

fn criterion_07_lattice_endpoints_and_symmetry() -> bool {
    let (kt, tt) = (4.0, 0.5);
    let outcome = (|| {
        let b0 = lattice_b(kt, tt, 0.0, LATTICE_QUAD_TOL).map_err(|e| e.to_string())?;
        if (b0 - 2.0 * PI).abs() > LATTICE_ENDPOINT_TOL {
            return Err(format!("b(0) = {b0:.12}, expected 2π"));
        }
        let b_half = lattice_b(kt, tt, FRAC_PI_2, LATTICE_QUAD_TOL).map_err(|e| e.to_string())?;
        if b_half.abs() > LATTICE_ENDPOINT_TOL {
            return Err(format!("b(π/2) = {b_half:e}, expected 0"));
        }
        for theta in [0.3, 0.7, 1.1, 1.4] {
            let plus = lattice_b(kt, tt, theta, LATTICE_QUAD_TOL).map_err(|e| e.to_string())?;
            let minus = lattice_b(kt, tt, PI - theta, LATTICE_QUAD_TOL).map_err(|e| e.to_string())?;
            if (plus + minus).abs() > LATTICE_ANTISYM_TOL {
                return Err(format!(
                    "b(π − {theta}) = {minus:.10} is not −b({theta}) = {:.10}",
                    -plus
                ));
            }
        }
        let mut prev = f64::INFINITY;
        for i in 0..50 {
            let theta = PI * i as f64 / 49.0;
            let b = lattice_b(kt, tt, theta, LATTICE_QUAD_TOL).map_err(|e| e.to_string())?;
            if b >= prev {
                return Err(format!("b not strictly decreasing at θ = {theta}: {b} >= {prev}"));
            }
            prev = b;
        }
        Ok(())
    })();
    verdict(
        7,
        "lattice shift b runs strictly from 2π to −2π with b(π/2) = 0 and b(π−θ) = −b(θ)",
        outcome,
    )
}

const QUASI_PERIOD_TOL: f64 = 1e-9;
const AMPLITUDE_MATCH_TOL: f64 = 1e-8;
const ROUND_PERIOD_TOL: f64 = 1e-10;

fn criterion_08_conformal_quasi_periodicity() -> bool {
    let (kt, tt) = (4.0, 0.5);
    let outcome = (|| {
        let cp = conformal_profile(kt, tt).map_err(|e| e.to_string())?;
        let a = cp.a();
        let increment = 2.0 * PI / kt.sqrt();
        let mut rng = Lcg(0x5eed_cafe_f00d_beef);
        for _ in 0..100 {
            let s = 3.0 * a * rng.next_unit();
            let gap = (cp.eval(s + a) - cp.eval(s) - increment).abs();
            if gap > QUASI_PERIOD_TOL {
                return Err(format!("g(s+a) − g(s) − 2π/√κ̃ = {gap:e} at s = {s}"));
            }
            // The derivative g′ = sqrt(ρ ∘ g) inherits the quasi-period.
            let d_gap = (induced_metric_rho(kt, tt, cp.eval(s + a)).sqrt()
                - induced_metric_rho(kt, tt, cp.eval(s)).sqrt())
            .abs();
            if d_gap > QUASI_PERIOD_TOL {
                return Err(format!("g′ quasi-period gap {d_gap:e} at s = {s}"));
            }
        }
        // Closed form through the Jacobi amplitude with m = 1 − κ̃/4τ̃².
        let m = 1.0 - kt / (4.0 * tt * tt);
        for i in 0..=60 {
            let s = 3.0 * a * i as f64 / 60.0;
            let am = jacobi_amplitude(2.0 * tt * s / kt.sqrt(), m).map_err(|e| e.to_string())?;
            let closed = am / kt.sqrt();
            let gap = (cp.eval(s) - closed).abs();
            if gap > AMPLITUDE_MATCH_TOL {
                return Err(format!("g vs Jacobi amplitude gap {gap:e} at s = {s}"));
            }
        }
        let round = conformal_profile(4.0, 1.0).map_err(|e| e.to_string())?;
        if (round.a() - 2.0 * PI).abs() > ROUND_PERIOD_TOL {
            return Err(format!("round-case period a = {:.14}, expected 2π", round.a()));
        }
        Ok(())
    })();
    verdict(
        8,
        "conformal change g is quasi-periodic, matches the Jacobi amplitude, and closes at 2π in the round case",
        outcome,
    )
}

const HELICOID_MINIMAL_TOL: f64 = 1e-5;
const HELICOID_FD_STEP: f64 = 1e-4;

fn criterion_09_helicoid_minimality() -> bool {
    let outcome = (|| {
        for (kt, tt, a) in [(4.0, 1.0, 0.5), (4.0, 0.4, 0.2), (1.0, 0.3, 0.6)] {
            for u in [-0.8, -0.3, 0.2, 0.7] {
                for v in [0.0, 1.3, 2.9] {
                    let forms = helicoid_fundamental_forms(kt, tt, a, u, v, HELICOID_FD_STEP)
                        .map_err(|e| e.to_string())?;
                    let h = forms.mean_curvature();
                    if h.abs() > HELICOID_MINIMAL_TOL {
                        return Err(format!(
                            "({kt}, {tt}, a = {a}) at (u, v) = ({u}, {v}): H = {h:e}"
                        ));
                    }
                }
            }
        }
        Ok(())
    })();
    verdict(9, "ruled minimal immersions have vanishing mean curvature", outcome)
}

fn criterion_10_embeddedness_regimes() -> bool {
    let outcome = (|| {
        let grid: Vec<f64> = (1..=40).map(|i| 0.05 * i as f64).collect();

        let tight = SpaceParams::new(4.0, 0.2).unwrap();
        let scan = tangency_scan(&tight, &grid).map_err(|e| e.to_string())?;
        let bound = 2.0 * PI * 0.2 / 4.0;
        let overshoot: Vec<f64> = scan
            .rows
            .iter()
            .filter(|r| r.max_height >= bound)
            .map(|r| r.h)
            .collect();
        if overshoot.is_empty() {
            return Err("(4, 0.2): no tube exceeds the fiber half-period".to_string());
        }
        for &h in &overshoot {
            let t = TubeParams::new(4.0, 0.2, h).unwrap();
            if embeddedness(&t).map_err(|e| e.to_string())? {
                return Err(format!("(4, 0.2): H = {h} overshoots yet reports embedded"));
            }
        }

        let loose = SpaceParams::new(4.0, 1.5).unwrap();
        let scan = tangency_scan(&loose, &grid).map_err(|e| e.to_string())?;
        let bound = 2.0 * PI * 1.5 / 4.0;
        for row in &scan.rows {
            let t = TubeParams::new(4.0, 1.5, row.h).unwrap();
            if row.max_height >= bound || !embeddedness(&t).map_err(|e| e.to_string())? {
                return Err(format!("(4, 1.5): H = {} is not embedded", row.h));
            }
        }
        Ok(())
    })();
    verdict(
        10,
        "(4, 0.2) develops non-embedded tubes while every (4, 1.5) tube embeds",
        outcome,
    )
}

const SYMMETRY_TOL: f64 = 1e-12;
const CONVEXITY_FLOOR: f64 = -1e-14;
const WINDING_TOL: f64 = 1e-6;
const SISTER_INVARIANT_SCALE: f64 = 1e-13;

fn criterion_11_property_suite() -> bool {
    let outcome = (|| {
        // Profile symmetry and periodicity; convexity; winding number.
        for &(kappa, tau, h) in &TRIPLES {
            let t = TubeParams::new(kappa, tau, h).map_err(|e| e.to_string())?;
            let mut angle_sum = 0.0;
            let mut prev: Option<[f64; 2]> = None;
            for i in 0..=400 {
                let phi = 2.0 * PI * i as f64 / 400.0;
                let p = closed_form_profile(&t, phi).map_err(|e| e.to_string())?;
                let m = closed_form_profile(&t, -phi).map_err(|e| e.to_string())?;
                let q = closed_form_profile(&t, phi + 2.0 * PI).map_err(|e| e.to_string())?;
                if (p.r - m.r).abs() > SYMMETRY_TOL || (p.h + m.h).abs() > SYMMETRY_TOL {
                    return Err(format!("({kappa}, {tau}, {h}): symmetry broken at φ = {phi}"));
                }
                if (p.r - q.r).abs() > SYMMETRY_TOL || (p.h - q.h).abs() > SYMMETRY_TOL {
                    return Err(format!("({kappa}, {tau}, {h}): period broken at φ = {phi}"));
                }
                let (eta, convexity) =
                    profile_normal_and_convexity(&t, phi).map_err(|e| e.to_string())?;
                if convexity < CONVEXITY_FLOOR {
                    return Err(format!(
                        "({kappa}, {tau}, {h}): convexity {convexity:e} at φ = {phi}"
                    ));
                }
                if let Some(last) = prev {
                    let cross = last[0] * eta[1] - last[1] * eta[0];
                    let dot = last[0] * eta[0] + last[1] * eta[1];
                    angle_sum += cross.atan2(dot);
                }
                prev = Some(eta);
            }
            let winding = angle_sum / (2.0 * PI);
            if (winding - 1.0).abs() > WINDING_TOL {
                return Err(format!("({kappa}, {tau}, {h}): normal winding {winding}"));
            }
        }

        // Sister correspondence preserves κ − 4τ² and τ² + H².
        let mut rng = Lcg(0x0dd_ba11_0f_fa17);
        for _ in 0..1000 {
            let kt = 0.2 + 5.8 * rng.next_unit();
            let tt = 0.05 + 1.95 * rng.next_unit();
            let ht = 4.0 * rng.next_unit() - 2.0;
            let theta = PI * rng.next_unit();
            let s = SisterParams::new(kt, tt, ht, theta).map_err(|e| e.to_string())?;
            let t = sister_params(s);
            let scale = SISTER_INVARIANT_SCALE
                * (1.0 + (kt - 4.0 * tt * tt).abs() + 4.0 * tt * tt + 4.0 * t.tau * t.tau);
            let bundle_gap = (t.kappa - 4.0 * t.tau * t.tau - (kt - 4.0 * tt * tt)).abs();
            let twist_gap = (t.tau * t.tau + t.mean_curvature * t.mean_curvature
                - (tt * tt + ht * ht))
                .abs();
            if bundle_gap > scale || twist_gap > scale {
                return Err(format!(
                    "sister invariants broken at (κ̃, τ̃, H̃, θ) = ({kt}, {tt}, {ht}, {theta})"
                ));
            }
        }

        // Geodesic-deformation formulas degenerate as stated at θ ∈ {0, π/2}.
        for (vartheta, vartheta_prime, tau) in
            [(0.3, 0.7, 0.5), (1.2, -0.4, 1.0), (2.1, 1.5, -0.8)]
        {
            let identity = GeodesicDeformation::horizontal(0.0, vartheta, vartheta_prime)
                .map_err(|e| e.to_string())?;
            let h = horizontal_geodesic_deformation(identity, tau);
            if h.kappa_g != Some(0.0) || h.kappa_g_p != Some(0.0) {
                return Err(format!(
                    "θ = 0 should preserve horizontal geodesics: {h:?}"
                ));
            }
            match vertical_geodesic_deformation(
                GeodesicDeformation::vertical(0.0, vartheta, vartheta_prime)
                    .map_err(|e| e.to_string())?,
                1.0,
            ) {
                Err(Error::DegenerateProjection) => {}
                other => return Err(format!("θ = 0 vertical case should degenerate: {other:?}")),
            }
            let conjugate = vertical_geodesic_deformation(
                GeodesicDeformation::vertical(FRAC_PI_2, vartheta, vartheta_prime)
                    .map_err(|e| e.to_string())?,
                0.9,
            )
            .map_err(|e| e.to_string())?;
            if (conjugate.kappa_g - (2.0 * 0.9 - vartheta_prime)).abs() > 1e-15 {
                return Err(format!("θ = π/2 vertical curvature wrong: {conjugate:?}"));
            }
        }
        // Ruling rate: 1 at θ = 0, 0 at θ = π/2 wherever cos φ ≠ 0.
        for phi in [0.0, 0.4, 1.2, 2.8] {
            let at_zero = ruling_rate(4.0, 0.5, 0.0, phi).map_err(|e| e.to_string())?;
            let at_half = ruling_rate(4.0, 0.5, FRAC_PI_2, phi).map_err(|e| e.to_string())?;
            if (at_zero - 1.0).abs() > 1e-12 || at_half.abs() > 1e-12 {
                return Err(format!("ruling rate at φ = {phi}: θ=0 gives {at_zero}, θ=π/2 gives {at_half}"));
            }
        }
        Ok(())
    })();
    verdict(
        11,
        "profile symmetry/convexity/winding, sister invariants, and deformation degenerations hold",
        outcome,
    )
}

fn criterion_12_figure_reproduction() -> bool {
    // Known to fail, deliberately: for the three smallest τ panels, area and
    // volume genuinely INCREASE with H near H → 0 (turnovers near H ≈ 0.39,
    // 0.21, 0.11 for τ = 0.244, 0.374, 0.407), so the blanket "both decrease
    // between every grid step" demand is unattainable. The rises are real
    // geometry, not quadrature noise: they reproduce under an independent
    // finite-difference surface-area integral and a Jacobian triple-integral
    // volume oracle to 1e−7, and the consecutive deltas satisfy the first
    // variation identity ΔA ≈ 2H·ΔV. The check below is intentionally kept
    // as stated so the failure stays visible rather than papered over.
    let outcome = (|| {
        let mut violations: Vec<String> = Vec::new();
        for &tau in &htubes_cli::figures::PROFILE_TAUS {
            let rows = htubes_cli::figures::isoperimetric_curve(tau, htubes_cli::figures::FIGURE_TOL)
                .map_err(|e| e.to_string())?;
            if rows.len() != 800 {
                return Err(format!("τ = {tau}: expected 800 sweep rows, got {}", rows.len()));
            }
            if rows.iter().any(|&(_, v, a)| !(v.is_finite() && a.is_finite())) {
                return Err(format!("τ = {tau}: sweep contains non-finite rows"));
            }
            // Collect every H-step where area or volume fails to strictly
            // decrease, so one message shows the full extent per panel.
            let bad: Vec<&[(f64, f64, f64)]> = rows
                .windows(2)
                .filter(|w| w[1].2 >= w[0].2 || w[1].1 >= w[0].1)
                .collect();
            if let (Some(first), Some(last)) = (bad.first(), bad.last()) {
                let (h0, v0, a0) = first[0];
                let (h1, v1, a1) = first[1];
                violations.push(format!(
                    "τ = {tau}: {} non-decreasing steps on H ∈ [{}, {}], e.g. H {h0} → {h1} has area {a0} → {a1}, volume {v0} → {v1}",
                    bad.len(),
                    first[0].0,
                    last[1].0,
                ));
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations.join("; "))
        }
    })();
    verdict(
        12,
        "area/volume sweeps for all eight τ panels are complete and monotone in H",
        outcome,
    )
}

const CRITERIA: [(usize, &str, fn() -> bool); 12] = [
    (1, "criterion_01_root_constant", criterion_01_root_constant),
    (2, "criterion_02_foliation_decisions", criterion_02_foliation_decisions),
    (3, "criterion_03_mean_curvature_oracle", criterion_03_mean_curvature_oracle),
    (4, "criterion_04_closed_form_ode_equivalence", criterion_04_closed_form_ode_equivalence),
    (5, "criterion_05_round_sphere_area_law", criterion_05_round_sphere_area_law),
    (6, "criterion_06_volume_consistency", criterion_06_volume_consistency),
    (7, "criterion_07_lattice_endpoints_and_symmetry", criterion_07_lattice_endpoints_and_symmetry),
    (8, "criterion_08_conformal_quasi_periodicity", criterion_08_conformal_quasi_periodicity),
    (9, "criterion_09_helicoid_minimality", criterion_09_helicoid_minimality),
    (10, "criterion_10_embeddedness_regimes", criterion_10_embeddedness_regimes),
    (11, "criterion_11_property_suite", criterion_11_property_suite),
    (12, "criterion_12_figure_reproduction", criterion_12_figure_reproduction),
];

fn main() {
    // Substring filters, libtest-style: any non-flag argument selects the
    // criteria whose name contains it; flags (--nocapture etc.) are ignored.
    let filters: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut ran = 0usize;
    let mut failed = 0usize;
    for &(n, name, f) in &CRITERIA {
        if !filters.is_empty() && !filters.iter().any(|q| name.contains(q.as_str())) {
            continue;
        }
        ran += 1;
        let passed = std::panic::catch_unwind(f).unwrap_or_else(|payload| {
            let msg = payload
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| payload.downcast_ref::<&str>().copied())
                .unwrap_or("panic with non-string payload");
            println!("[FAIL] criterion {n}: {name} panicked — {msg}");
            false
        });
        if !passed {
            failed += 1;
        }
    }
    println!("acceptance: {}/{ran} criteria passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
