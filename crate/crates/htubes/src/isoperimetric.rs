//! Area and enclosed volume of horizontal tubes in the Berger spheres,
//! normalized to κ = 4.
//!
//! Both quantities come from the tube parametrization over one
//! fundamental torus (φ ∈ [0, 2π), v ∈ [0, 4π)): the area as the surface
//! integral of its area element, the volume by sweeping the mean
//! curvature as a third coordinate filling the inside of the tube — an
//! algebraic (signed) volume where the sweep is not a foliation.  A
//! sweep over an H-grid yields the (volume, area) isoperimetric profile
//! of the family.
//!
//! Everything here assumes the κ = 4 normalization; a general Berger
//! sphere (κ, τ) rescales to it by (κ, τ, H) ↦ (4, 2τ/√κ, 2H/√κ), with
//! areas scaling by κ/4 and volumes by (κ/4)^{3/2}.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::foliation::foliation_criterion;
use crate::numeric::quad::adaptive_simpson;
use crate::profile::TubeParams;
use crate::space::SpaceParams;

/// Total volume of the Berger sphere E(4, τ): 32τπ²/κ² at κ = 4.
pub fn ambient_volume(tau: f64) -> f64 {
    2.0 * PI * PI * tau
}

fn require_unit_berger(t: &TubeParams) -> Result<()> {
    if !((t.kappa - 4.0).abs() <= 1e-9) {
        return Err(Error::DomainViolation(format!(
            "area/volume formulas are normalized to kappa = 4 (rescale by \
             (kappa, tau, H) -> (4, 2 tau/sqrt(kappa), 2 H/sqrt(kappa)) first); \
             got kappa = {}",
            t.kappa
        )));
    }
    if !(t.mean_curvature > 0.0) {
        return Err(Error::NonpositiveH {
            h: t.mean_curvature,
            reason: "the tube area and volume are defined for H > 0",
        });
    }
    Ok(())
}

fn require_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0) {
        return Err(Error::DomainViolation(format!(
            "quadrature tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

/// Area of the tube with mean curvature H in E(4, τ):
/// Hπ ∫₀^{2π} √(H² + τ²cos²u) / (H² + cos²u)^{3/2} du, computed over a
/// quarter period by the u ↦ −u and u ↦ π − u symmetries.
pub fn tube_area(t: &TubeParams, tol: f64) -> Result<f64> {
    require_unit_berger(t)?;
    require_tol(tol)?;
    let h = t.mean_curvature;
    let h2 = h * h;
    let t2 = t.tau * t.tau;
    let quad = adaptive_simpson(
        |u| {
            let c2 = u.cos().powi(2);
            let d = h2 + c2;
            (h2 + t2 * c2).sqrt() / (d * d.sqrt())
        },
        0.0,
        PI / 2.0,
        (tol / (4.0 * h * PI)).max(1e-15),
    )?;
    Ok(4.0 * h * PI * quad)
}

/// Argument clamp for arctanh: the analytic argument stays strictly
/// inside (−1, 1), but rounding can graze the endpoints for large w.
const ATANH_CLAMP: f64 = 1.0 - 1e-14;

/// Radial volume density at sweep parameter w and angle u: the w-family
/// of tube parametrizations has Jacobian (π/2)·density per unit (u, w)
/// after integrating out the fiber direction.
fn volume_density(tau: f64, w: f64, u: f64) -> f64 {
    let (su, cu) = u.sin_cos();
    let c2 = cu * cu;
    let w2 = w * w;
    let q = (w2 + tau * tau * c2).sqrt();
    let d = w2 + c2;
    let d32 = d * d.sqrt();
    let sw = (1.0 + w2).sqrt();
    let i1 = w * q / ((1.0 + w2) * d32);
    let disc = 1.0 - tau * tau;
    let j2 = if disc > 0.0 {
        let r = disc.sqrt();
        let x = (r * w * su / (sw * q)).clamp(-ATANH_CLAMP, ATANH_CLAMP);
        r * x.atanh() * w2 * su / (sw * sw * sw * d32)
    } else if disc < 0.0 {
        let r = (-disc).sqrt();
        let x = r * w * su / (sw * q);
        -r * x.atan() * w2 * su / (sw * sw * sw * d32)
    } else {
        0.0
    };
    i1 - j2
}

/// Volume enclosed by the tube with mean curvature H in E(4, τ):
/// (π/2) ∫_H^∞ ∫₀^{2π} density du dw, with the improper direction
/// mapped to w = H + s/(1 − s), s ∈ [0, 1).  The density decays like
/// w⁻³, so the transformed outer integrand is bounded and vanishes at
/// s = 1.  Where the sweep fails to foliate the interior this is the
/// algebraic volume.
pub fn tube_volume(t: &TubeParams, tol: f64) -> Result<f64> {
    require_unit_berger(t)?;
    require_tol(tol)?;
    let h = t.mean_curvature;
    let tau = t.tau;
    // Total = 2π · ∫₀¹ inner(w(s))·(1−s)⁻² ds.  Splitting the budget
    // between the outer rule and the inner evaluations, with the inner
    // tolerance shrinking like (1−s)² to survive the Jacobian blow-up.
    let budget = tol / (4.0 * PI);
    let outer = adaptive_simpson(
        |s| {
            let rem = 1.0 - s;
            if rem <= 0.0 {
                return 0.0;
            }
            let w = h + s / rem;
            if !w.is_finite() {
                return 0.0;
            }
            let inner_tol = (budget * rem * rem).max(1e-16);
            let inner = adaptive_simpson(|u| volume_density(tau, w, u), 0.0, PI / 2.0, inner_tol)
                .unwrap_or(f64::NAN);
            4.0 * inner / (rem * rem)
        },
        0.0,
        1.0,
        budget,
    )?;
    let volume = 0.5 * PI * outer;
    if !volume.is_finite() {
        return Err(Error::QuadratureFailure(
            "volume integrand produced non-finite values".to_string(),
        ));
    }
    Ok(volume)
}

/// One point of the isoperimetric profile of the tube family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsoperimetricRecord {
    pub h: f64,
    pub area: f64,
    pub volume: f64,
    /// Ambient volume minus tube volume (the region outside the tube).
    pub complement_volume: f64,
    /// Whether E(4, τ) satisfies the tube-foliation criterion; when it
    /// fails, `volume` is the algebraic (signed) sweep value.
    pub foliates: bool,
}

/// One row of a sweep: quadrature failures are carried per row so a
/// single bad H does not lose the rest of the profile.
#[derive(Debug)]
pub struct SweepRow {
    pub h: f64,
    pub outcome: Result<IsoperimetricRecord>,
}

/// Sweep the (volume, area) profile of the tubes in E(4, τ) over the
/// closed H-grid `h_start, h_start + h_step, …, h_stop`.
pub fn isoperimetric_sweep(
    tau: f64,
    h_start: f64,
    h_stop: f64,
    h_step: f64,
    tol: f64,
) -> Result<Vec<SweepRow>> {
    require_tol(tol)?;
    if !(h_start > 0.0 && h_step > 0.0 && h_stop >= h_start) {
        return Err(Error::DomainViolation(format!(
            "H-grid must satisfy 0 < start <= stop with positive step, \
             got {h_start}:{h_stop}:{h_step}"
        )));
    }
    let space = SpaceParams::new(4.0, tau)?;
    let foliates = foliation_criterion(&space).foliates;
    let ambient = ambient_volume(tau);
    let count = ((h_stop - h_start) / h_step + 1e-9).floor() as usize;
    let mut rows = Vec::with_capacity(count + 1);
    for i in 0..=count {
        let h = h_start + h_step * i as f64;
        let outcome = TubeParams::new(4.0, tau, h).and_then(|t| {
            let area = tube_area(&t, tol)?;
            let volume = tube_volume(&t, tol)?;
            Ok(IsoperimetricRecord {
                h,
                area,
                volume,
                complement_volume: ambient - volume,
                foliates,
            })
        });
        rows.push(SweepRow { h, outcome });
    }
    Ok(rows)
}
