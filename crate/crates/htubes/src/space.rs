//! Coordinate models of the homogeneous 3-manifolds E(κ, τ).
//!
//! Three charts cover all parameter regimes:
//!
//! * the **Cartan model** — the open set {λ > 0} of R³ with
//!   λ(x, y) = (1 + (κ/4)(x² + y²))⁻¹ and metric
//!   λ²(dx² + dy²) + (dz + τλ(y dx − x dy))², valid for every κ;
//! * the **half-space model** (κ < 0) — {y > 0} with metric
//!   (dx² + dy²)/(−κ y²) + (dz + (2τ/(κy)) dx)²;
//! * the **Berger sphere** (κ > 0, τ ≠ 0) — the unit 3-sphere in C² with the
//!   Hopf-fiber-rescaled round metric, reached from the Cartan chart by the
//!   covering map [`covering_map_theta`].
//!
//! The fibration E(κ, τ) → M²(κ) has unit Killing field ξ = ∂_z in both
//! R³ charts and the Hopf field on the Berger sphere.

use crate::error::{Error, Result};
use serde::Serialize;

/// The (κ, τ) pair that pins the ambient geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpaceParams {
    pub kappa: f64,
    pub tau: f64,
}

impl SpaceParams {
    pub fn new(kappa: f64, tau: f64) -> Result<Self> {
        if !(kappa.is_finite() && tau.is_finite()) {
            return Err(Error::DomainViolation(format!(
                "space parameters must be finite, got kappa = {kappa}, tau = {tau}"
            )));
        }
        Ok(SpaceParams { kappa, tau })
    }

    /// λ(x, y) = (1 + (κ/4)(x² + y²))⁻¹, the conformal factor of the base.
    pub fn lambda(&self, x: f64, y: f64) -> f64 {
        1.0 / (1.0 + 0.25 * self.kappa * (x * x + y * y))
    }

    pub fn classify(&self) -> SpaceClass {
        classify_space(self)
    }
}

/// Which homogeneous space (κ, τ) describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "space", rename_all = "snake_case")]
pub enum SpaceClass {
    /// κ > 0, κ = 4τ²: the round 3-sphere of curvature κ/4.
    RoundSphere,
    /// κ > 0, κ ≠ 4τ². `is_product` marks τ = 0, i.e. S²(κ) × R, which
    /// every downstream formula treats as the smooth τ → 0 limit of the
    /// Berger family rather than as a separate case.
    BergerSphere { is_product: bool },
    /// κ = 0, τ = 0.
    Euclidean,
    /// κ = 0, τ ≠ 0: the Heisenberg group Nil₃(τ).
    Heisenberg,
    /// κ < 0, τ = 0: H²(κ) × R.
    ProductHxR,
    /// κ < 0, τ ≠ 0: the universal cover of SL(2, R) with its (κ, τ) metric.
    SL2Cover,
}

pub fn classify_space(p: &SpaceParams) -> SpaceClass {
    if p.kappa > 0.0 {
        if p.kappa == 4.0 * p.tau * p.tau {
            SpaceClass::RoundSphere
        } else {
            SpaceClass::BergerSphere {
                is_product: p.tau == 0.0,
            }
        }
    } else if p.kappa == 0.0 {
        if p.tau == 0.0 {
            SpaceClass::Euclidean
        } else {
            SpaceClass::Heisenberg
        }
    } else if p.tau == 0.0 {
        SpaceClass::ProductHxR
    } else {
        SpaceClass::SL2Cover
    }
}

/// A point in one of the three charts. Berger-sphere points store
/// (z, w) ∈ C² as (re z, im z, re w, im w).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ModelPoint {
    Cartan { x: f64, y: f64, z: f64 },
    HalfSpace { x: f64, y: f64, z: f64 },
    BergerS3 { q: [f64; 4] },
}

impl ModelPoint {
    pub fn cartan(x: f64, y: f64, z: f64) -> Self {
        ModelPoint::Cartan { x, y, z }
    }

    pub fn half_space(x: f64, y: f64, z: f64) -> Self {
        ModelPoint::HalfSpace { x, y, z }
    }

    pub fn model_name(&self) -> &'static str {
        match self {
            ModelPoint::Cartan { .. } => "Cartan",
            ModelPoint::HalfSpace { .. } => "half-space",
            ModelPoint::BergerS3 { .. } => "Berger sphere",
        }
    }

    /// Chart coordinates as a slice-like array; Berger points keep all four
    /// components, R³ points pad nothing.
    pub fn coords3(&self) -> Option<[f64; 3]> {
        match *self {
            ModelPoint::Cartan { x, y, z } | ModelPoint::HalfSpace { x, y, z } => Some([x, y, z]),
            ModelPoint::BergerS3 { .. } => None,
        }
    }

    /// Check chart invariants against (κ, τ).
    pub fn validate(&self, p: &SpaceParams) -> Result<()> {
        match *self {
            ModelPoint::Cartan { x, y, .. } => {
                let inv_lambda = 1.0 + 0.25 * p.kappa * (x * x + y * y);
                if inv_lambda <= 0.0 {
                    return Err(Error::InvalidPoint {
                        model: "Cartan",
                        reason: format!("1 + (kappa/4)(x^2+y^2) = {inv_lambda:e} must be positive"),
                    });
                }
                Ok(())
            }
            ModelPoint::HalfSpace { y, .. } => {
                if p.kappa >= 0.0 {
                    return Err(Error::ModelMismatch(format!(
                        "half-space chart needs kappa < 0, got kappa = {}",
                        p.kappa
                    )));
                }
                if y <= 0.0 {
                    return Err(Error::InvalidPoint {
                        model: "half-space",
                        reason: format!("y = {y:e} must be positive"),
                    });
                }
                Ok(())
            }
            ModelPoint::BergerS3 { q } => {
                if p.kappa <= 0.0 {
                    return Err(Error::ModelMismatch(format!(
                        "Berger-sphere chart needs kappa > 0, got kappa = {}",
                        p.kappa
                    )));
                }
                let norm = q.iter().map(|v| v * v).sum::<f64>();
                if (norm - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidPoint {
                        model: "Berger sphere",
                        reason: format!("|z|^2 + |w|^2 = {norm} is off the unit sphere"),
                    });
                }
                Ok(())
            }
        }
    }
}

/// Symmetric coordinate-basis metric at a point of an R³ chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTensor(pub [[f64; 3]; 3]);

impl MetricTensor {
    pub fn inner(&self, u: &[f64; 3], v: &[f64; 3]) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += u[i] * self.0[i][j] * v[j];
            }
        }
        s
    }

    /// (det g, g⁻¹).
    pub fn det_inverse(&self) -> (f64, [[f64; 3]; 3]) {
        let g = &self.0;
        let c00 = g[1][1] * g[2][2] - g[1][2] * g[2][1];
        let c01 = -(g[1][0] * g[2][2] - g[1][2] * g[2][0]);
        let c02 = g[1][0] * g[2][1] - g[1][1] * g[2][0];
        let det = g[0][0] * c00 + g[0][1] * c01 + g[0][2] * c02;
        let inv = [
            [
                c00 / det,
                -(g[0][1] * g[2][2] - g[0][2] * g[2][1]) / det,
                (g[0][1] * g[1][2] - g[0][2] * g[1][1]) / det,
            ],
            [
                c01 / det,
                (g[0][0] * g[2][2] - g[0][2] * g[2][0]) / det,
                -(g[0][0] * g[1][2] - g[0][2] * g[1][0]) / det,
            ],
            [
                c02 / det,
                -(g[0][0] * g[2][1] - g[0][1] * g[2][0]) / det,
                (g[0][0] * g[1][1] - g[0][1] * g[1][0]) / det,
            ],
        ];
        (det, inv)
    }
}

/// Global orthonormal frame in coordinate components; e3 is the unit
/// Killing field ∂_z in both R³ charts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub e1: [f64; 3],
    pub e2: [f64; 3],
    pub e3: [f64; 3],
}

impl Frame {
    pub fn vector(&self, a: usize) -> &[f64; 3] {
        match a {
            1 => &self.e1,
            2 => &self.e2,
            3 => &self.e3,
            _ => panic!("frame index must be 1, 2 or 3, got {a}"),
        }
    }
}

/// Metric tensor and orthonormal frame at a Cartan or half-space point.
pub fn metric_and_frame(p: &SpaceParams, pt: &ModelPoint) -> Result<(MetricTensor, Frame)> {
    pt.validate(p)?;
    match *pt {
        ModelPoint::Cartan { x, y, .. } => {
            let l = p.lambda(x, y);
            let a = p.tau * l * y; // dz-coefficient picked up by dx
            let b = -p.tau * l * x; // and by dy
            let g = MetricTensor([
                [l * l + a * a, a * b, a],
                [a * b, l * l + b * b, b],
                [a, b, 1.0],
            ]);
            let frame = Frame {
                e1: [1.0 / l, 0.0, -p.tau * y],
                e2: [0.0, 1.0 / l, p.tau * x],
                e3: [0.0, 0.0, 1.0],
            };
            Ok((g, frame))
        }
        ModelPoint::HalfSpace { y, .. } => {
            let k = p.kappa;
            let a = -1.0 / (k * y * y);
            let c = 2.0 * p.tau / (k * y);
            let g = MetricTensor([[a + c * c, 0.0, c], [0.0, a, 0.0], [c, 0.0, 1.0]]);
            let sk = (-k).sqrt();
            let frame = Frame {
                e1: [y * sk, 0.0, 2.0 * p.tau / sk],
                e2: [0.0, y * sk, 0.0],
                e3: [0.0, 0.0, 1.0],
            };
            Ok((g, frame))
        }
        ModelPoint::BergerS3 { .. } => Err(Error::ModelMismatch(
            "metric/frame in coordinates is provided for the Cartan and half-space charts; \
             use berger_metric for sphere points"
                .into(),
        )),
    }
}

/// Coefficients of ∇_{E_a} E_b in the frame {E1, E2, E3} of the Cartan
/// chart. The full table, with λ-factors already absorbed:
///
/// ```text
/// ∇_{E1}E1 =  (κy/2) E2        ∇_{E1}E2 = −(κy/2) E1 + τ E3   ∇_{E1}E3 = −τ E2
/// ∇_{E2}E1 = −(κx/2) E2 − τ E3 ∇_{E2}E2 =  (κx/2) E1          ∇_{E2}E3 =  τ E1
/// ∇_{E3}E1 = −τ E2             ∇_{E3}E2 =  τ E1               ∇_{E3}E3 = 0
/// ```
pub fn levi_civita(p: &SpaceParams, pt: &ModelPoint, a: usize, b: usize) -> Result<[f64; 3]> {
    assert!((1..=3).contains(&a) && (1..=3).contains(&b), "frame indices are 1..=3");
    let (x, y) = match *pt {
        ModelPoint::Cartan { x, y, .. } => {
            pt.validate(p)?;
            (x, y)
        }
        _ => {
            return Err(Error::ModelMismatch(
                "frame connection table is expressed in the Cartan chart".into(),
            ))
        }
    };
    let (k, t) = (p.kappa, p.tau);
    Ok(match (a, b) {
        (1, 1) => [0.0, 0.5 * k * y, 0.0],
        (1, 2) => [-0.5 * k * y, 0.0, t],
        (1, 3) => [0.0, -t, 0.0],
        (2, 1) => [0.0, -0.5 * k * x, -t],
        (2, 2) => [0.5 * k * x, 0.0, 0.0],
        (2, 3) => [t, 0.0, 0.0],
        (3, 1) => [0.0, -t, 0.0],
        (3, 2) => [t, 0.0, 0.0],
        (3, 3) => [0.0, 0.0, 0.0],
        _ => unreachable!(),
    })
}

/// Riemannian covering map from the Cartan chart of E(κ, τ), κ > 0, τ ≠ 0,
/// onto the Berger sphere:
///
/// Θ(x, y, z) = λ^{1/2} · ( (√κ/2)(y + ix) e^{i κ z/(4τ)},  e^{i κ z/(4τ)} ).
pub fn covering_map_theta(p: &SpaceParams, pt: &ModelPoint) -> Result<ModelPoint> {
    if p.kappa <= 0.0 || p.tau == 0.0 {
        return Err(Error::ModelMismatch(format!(
            "covering map needs kappa > 0 and tau != 0, got ({}, {})",
            p.kappa, p.tau
        )));
    }
    let (x, y, z) = match *pt {
        ModelPoint::Cartan { x, y, z } => {
            pt.validate(p)?;
            (x, y, z)
        }
        _ => {
            return Err(Error::ModelMismatch(
                "covering map takes Cartan-chart points".into(),
            ))
        }
    };
    let s = p.lambda(x, y).sqrt();
    let ph = p.kappa / (4.0 * p.tau) * z;
    let (sin, cos) = ph.sin_cos();
    let half_sk = 0.5 * p.kappa.sqrt();
    // (√κ/2)(y + ix) e^{iφ}
    let zr = half_sk * s * (y * cos - x * sin);
    let zi = half_sk * s * (y * sin + x * cos);
    let wr = s * cos;
    let wi = s * sin;
    Ok(ModelPoint::BergerS3 { q: [zr, zi, wr, wi] })
}

/// The Berger metric on the unit sphere in C² ≅ R⁴, as a 4×4 tensor in
/// ambient coordinates (restricted to the tangent space of S³):
/// G = (4/κ)[ δ + (16τ²/κ²)(4τ²/κ − 1) ξ♭ ⊗ ξ♭ ] with the Hopf field
/// ξ = (κ/4τ)(−z₂, z₁, −w₂, w₁).
pub fn berger_metric(p: &SpaceParams, pt: &ModelPoint) -> Result<[[f64; 4]; 4]> {
    let q = match *pt {
        ModelPoint::BergerS3 { q } => {
            pt.validate(p)?;
            q
        }
        _ => {
            return Err(Error::ModelMismatch(
                "berger_metric takes Berger-sphere points".into(),
            ))
        }
    };
    if p.tau == 0.0 {
        return Err(Error::ModelMismatch(
            "the sphere chart of S^2 x R (tau = 0) is not a Berger metric".into(),
        ));
    }
    let (k, t) = (p.kappa, p.tau);
    let xi = [
        -q[1] * k / (4.0 * t),
        q[0] * k / (4.0 * t),
        -q[3] * k / (4.0 * t),
        q[2] * k / (4.0 * t),
    ];
    let coef = (16.0 * t * t / (k * k)) * (4.0 * t * t / k - 1.0);
    let mut g = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let delta = if i == j { 1.0 } else { 0.0 };
            g[i][j] = 4.0 / k * (delta + coef * xi[i] * xi[j]);
        }
    }
    Ok(g)
}

/// The Hopf fibration S³ → S²(κ), written into C × R:
/// π(z, w) = (2/√κ)(z w̄, (|z|² − |w|²)/2). The image lies on the sphere of
/// radius 1/√κ.
pub fn hopf_projection(p: &SpaceParams, pt: &ModelPoint) -> Result<[f64; 3]> {
    let q = match *pt {
        ModelPoint::BergerS3 { q } => {
            pt.validate(p)?;
            q
        }
        _ => {
            return Err(Error::ModelMismatch(
                "Hopf projection takes Berger-sphere points".into(),
            ))
        }
    };
    let (zr, zi, wr, wi) = (q[0], q[1], q[2], q[3]);
    let f = 2.0 / p.kappa.sqrt();
    // z·conj(w)
    let re = zr * wr + zi * wi;
    let im = zi * wr - zr * wi;
    let third = 0.5 * (zr * zr + zi * zi - wr * wr - wi * wi);
    Ok([f * re, f * im, f * third])
}

/// Coordinate Christoffel symbols Γ^k_{ij} of the Cartan / half-space
/// metrics, from the analytic metric partials. This is the same connection
/// as the frame table of [`levi_civita`], converted once to coordinates —
/// the finite-difference curvature machinery contracts against it.
pub fn christoffels(p: &SpaceParams, pt: &ModelPoint) -> Result<[[[f64; 3]; 3]; 3]> {
    let (g, _) = metric_and_frame(p, pt)?;
    let dgs = metric_partials(p, pt)?;
    let (_, gi) = g.det_inverse();
    let mut gam = [[[0.0; 3]; 3]; 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for l in 0..3 {
                    s += gi[k][l] * (dgs[i][j][l] + dgs[j][i][l] - dgs[l][i][j]);
                }
                gam[k][i][j] = 0.5 * s;
            }
        }
    }
    Ok(gam)
}

/// Analytic partial derivatives ∂g/∂x^c of the chart metric; index order is
/// `[c][i][j]`.
pub fn metric_partials(p: &SpaceParams, pt: &ModelPoint) -> Result<[[[f64; 3]; 3]; 3]> {
    pt.validate(p)?;
    let (k, t) = (p.kappa, p.tau);
    match *pt {
        ModelPoint::Cartan { x, y, .. } => {
            let l = p.lambda(x, y);
            let lx = -(0.5 * k) * x * l * l;
            let ly = -(0.5 * k) * y * l * l;
            let a = t * l * y;
            let b = -t * l * x;
            let ax = t * y * lx;
            let ay = t * (l + y * ly);
            let bx = -t * (l + x * lx);
            let by = -t * x * ly;
            let dgx = [
                [2.0 * l * lx + 2.0 * a * ax, ax * b + a * bx, ax],
                [ax * b + a * bx, 2.0 * l * lx + 2.0 * b * bx, bx],
                [ax, bx, 0.0],
            ];
            let dgy = [
                [2.0 * l * ly + 2.0 * a * ay, ay * b + a * by, ay],
                [ay * b + a * by, 2.0 * l * ly + 2.0 * b * by, by],
                [ay, by, 0.0],
            ];
            Ok([dgx, dgy, [[0.0; 3]; 3]])
        }
        ModelPoint::HalfSpace { y, .. } => {
            let ay = 2.0 / (k * y * y * y);
            let c = 2.0 * t / (k * y);
            let cy = -2.0 * t / (k * y * y);
            let dgy = [
                [ay + 2.0 * c * cy, 0.0, cy],
                [0.0, ay, 0.0],
                [cy, 0.0, 0.0],
            ];
            Ok([[[0.0; 3]; 3], dgy, [[0.0; 3]; 3]])
        }
        ModelPoint::BergerS3 { .. } => Err(Error::ModelMismatch(
            "metric partials are provided for the R^3 charts".into(),
        )),
    }
}
