//! Foliation and embeddedness of the tube families.
//!
//! For fixed (κ, τ) the tubes {T_H : H > 0} sweep out the complement of
//! their common axis Γ (and of the antipodal geodesic Γ′ when κ > 0). They
//! form a foliation exactly when the maximal height H ↦ h_H(π/2) is
//! monotone, which reduces to the sign of (1 − x₀²)κ − 4τ² with x₀ the
//! unique positive root of x·arctanh x = 1. When the criterion fails, the
//! height has an interior maximum at a critical curvature H₀ and leaves of
//! nearby H intersect.

use crate::error::{Error, Result};
use crate::numeric::root::bisect_secant;
use crate::profile::{closed_form_profile, TubeParams};
use crate::space::SpaceParams;
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

/// The region foliated by the tube family (together with the tubes' axes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FoliatedSet {
    /// κ ≤ 0: the tubes fill E(κ, τ) ∖ Γ.
    ComplementOfGamma,
    /// κ > 0: the tubes fill the complement of Γ and of the antipodal
    /// horizontal geodesic Γ′ (where they collapse as H → 0).
    ComplementOfGammaAndGammaPrime,
    /// The family does not foliate.
    None,
}

/// Outcome of the foliation criterion for a parameter pair (κ, τ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FoliationReport {
    /// The universal constant x₀, root of x·arctanh x = 1.
    pub x0: f64,
    /// (1 − x₀²)κ − 4τ²; the family foliates iff this is ≤ 0.
    pub criterion_value: f64,
    pub foliates: bool,
    /// Critical mean curvature where the maximal height peaks; present
    /// exactly when the criterion fails, solving 4H₀²x₀² = criterion.
    pub h0: Option<f64>,
    pub foliated_set: FoliatedSet,
}

/// Slope of the maximal height with respect to H. `by_finite_difference`
/// marks the κ = 4τ² case, where no closed slope formula applies and a
/// central difference of [`max_height`] is used instead.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeightSlope {
    pub value: f64,
    pub by_finite_difference: bool,
}

/// The unique positive root of x·arctanh(x) = 1, ≈ 0.833557.
pub fn solve_x0() -> f64 {
    // The bracket keeps well clear of the arctanh blow-up at 1.
    bisect_secant(|x: f64| x * x.atanh() - 1.0, 0.6, 0.95, 1e-13)
        .expect("the bracket [0.6, 0.95] encloses the root")
}

/// Maximal vertical extent of the tube profile, h_H(π/2).
pub fn max_height(t: &TubeParams) -> Result<f64> {
    Ok(closed_form_profile(t, FRAC_PI_2)?.h)
}

/// d(max_height)/dH in closed form:
///
/// * κ − 4τ² > 0:  (2/(4H²+κ)) (x·arctanh x − 1), x = √(κ−4τ²)/√(4H²+κ);
/// * κ − 4τ² < 0: −(2/(4H²+κ)) (x·arctan x + 1), x = √(4τ²−κ)/√(4H²+κ),
///   which is negative for every H > 0;
/// * κ = 4τ² exactly: central finite difference of [`max_height`],
///   flagged in the result (the two formulas share the limit −2/(4H²+κ)).
pub fn d_max_height_dh(t: &TubeParams) -> Result<HeightSlope> {
    if t.mean_curvature <= 0.0 {
        return Err(Error::NonpositiveH {
            h: t.mean_curvature,
            reason: "the height slope is defined for tubes with H > 0",
        });
    }
    let d = t.kappa - 4.0 * t.tau * t.tau;
    let w2 = t.supercriticality();
    if d == 0.0 {
        let dh = 1e-6 * f64::max(1.0, t.mean_curvature);
        let hp = max_height(&TubeParams::new(t.kappa, t.tau, t.mean_curvature + dh)?)?;
        let hm = max_height(&TubeParams::new(t.kappa, t.tau, t.mean_curvature - dh)?)?;
        return Ok(HeightSlope {
            value: (hp - hm) / (2.0 * dh),
            by_finite_difference: true,
        });
    }
    let value = if d > 0.0 {
        let x = (d / w2).sqrt();
        2.0 / w2 * (x * x.atanh() - 1.0)
    } else {
        let x = (-d / w2).sqrt();
        -2.0 / w2 * (x * x.atan() + 1.0)
    };
    Ok(HeightSlope {
        value,
        by_finite_difference: false,
    })
}

/// Decide whether the tube family of (κ, τ) foliates its ambient space.
pub fn foliation_criterion(p: &SpaceParams) -> FoliationReport {
    let x0 = solve_x0();
    let criterion_value = (1.0 - x0 * x0) * p.kappa - 4.0 * p.tau * p.tau;
    // The boundary case is a foliation by the criterion's "≤"; values
    // within rounding of zero are folded into it.
    let foliates = criterion_value <= 1e-12;
    let h0 = if foliates {
        None
    } else {
        Some(criterion_value.sqrt() / (2.0 * x0))
    };
    let foliated_set = if !foliates {
        FoliatedSet::None
    } else if p.kappa > 0.0 {
        FoliatedSet::ComplementOfGammaAndGammaPrime
    } else {
        FoliatedSet::ComplementOfGamma
    };
    FoliationReport {
        x0,
        criterion_value,
        foliates,
        h0,
        foliated_set,
    }
}

/// Whether the tube T_H is embedded.
///
/// Failure is a Berger-sphere effect: consecutive turns of the tube around
/// its closed axis are shifted vertically by 4πτ/κ, and the sheets overlap
/// exactly when the profile's height reaches half that shift. For κ ≤ 0 the
/// axis is not closed, and for τ = 0 consecutive turns are the same sheet,
/// so embeddedness holds automatically.
pub fn embeddedness(t: &TubeParams) -> Result<bool> {
    if t.kappa <= 0.0 || t.tau == 0.0 {
        // Evaluate the profile anyway so invalid parameters still error.
        let _ = max_height(t)?;
        return Ok(true);
    }
    Ok(max_height(t)? < 2.0 * std::f64::consts::PI * t.tau.abs() / t.kappa)
}

/// One row of a tangency scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub h: f64,
    pub max_height: f64,
}

/// Scan of H ↦ max_height over a grid, reporting where monotonicity breaks.
/// Non-monotone stretches are the only places two tube profiles can become
/// tangent, i.e. the only obstruction to the foliation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangencyScan {
    pub rows: Vec<ScanRow>,
    /// (H-left, H-right) brackets around each interior extremum of the
    /// sampled max_height.
    pub non_monotone_intervals: Vec<(f64, f64)>,
    pub monotone_decreasing: bool,
}

/// Evaluate max_height on an H-grid for fixed (κ, τ) and flag intervals
/// where the height is not monotone.
pub fn tangency_scan(p: &SpaceParams, h_grid: &[f64]) -> Result<TangencyScan> {
    let mut rows = Vec::with_capacity(h_grid.len());
    for &h in h_grid {
        let t = TubeParams::new(p.kappa, p.tau, h)?;
        rows.push(ScanRow {
            h,
            max_height: max_height(&t)?,
        });
    }
    let mut non_monotone_intervals = Vec::new();
    for i in 1..rows.len().saturating_sub(1) {
        let before = rows[i].max_height - rows[i - 1].max_height;
        let after = rows[i + 1].max_height - rows[i].max_height;
        if before * after < 0.0 {
            non_monotone_intervals.push((rows[i - 1].h, rows[i + 1].h));
        }
    }
    let monotone_decreasing = rows.windows(2).all(|w| w[1].max_height < w[0].max_height);
    Ok(TangencyScan {
        rows,
        non_monotone_intervals,
        monotone_decreasing,
    })
}
