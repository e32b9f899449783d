//! Sister (Daniel) correspondence of horizontal tubes.
//!
//! Associate immersions with phase angle θ share the bundle curvature
//! κ − 4τ² while (τ, H) rotates by θ in the plane: [`sister_params`] is
//! that parameter map.  [`vertical_geodesic_deformation`] and
//! [`horizontal_geodesic_deformation`] give the pointwise data of the
//! conjugate curve (vertical component of the tangent, geodesic curvature
//! of the projection) from the rotation angle ϑ of the source normal.
//!
//! The minimal members of the tube family in Berger spheres are ruled
//! helicoids ([`helicoid_immersion`]); their sister tubes are all
//! isometric quotients of one warped-product plane, so the conformal
//! class of the quotient torus reduces to two numbers: the conformal
//! length `a` of the period ([`conformal_profile`]) and the shear `b(θ)`
//! of the lattice ([`lattice_b`]).

use std::f64::consts::PI;

use serde::Serialize;

use crate::curvature::{immersion_fundamental_forms, FundamentalForms};
use crate::error::{Error, Result};
use crate::numeric::ode::{integrate, integrate_until, DenseOutput, OdeOptions};
use crate::numeric::quad::adaptive_simpson;
use crate::numeric::root::bisect_secant;
use crate::profile::TubeParams;
use crate::space::{ModelPoint, SpaceParams};

/// Source data of a sister correspondence: an H̃-surface in E(κ̃,τ̃)
/// together with the phase angle θ of the associate family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SisterParams {
    pub kappa_t: f64,
    pub tau_t: f64,
    pub h_t: f64,
    /// Phase angle in radians, normalized to [0, π) by [`SisterParams::new`]:
    /// θ and θ + π give mirror images of the same surface, so one
    /// representative per class suffices.
    pub theta: f64,
}

impl SisterParams {
    pub fn new(kappa_t: f64, tau_t: f64, h_t: f64, theta: f64) -> Result<Self> {
        if !(kappa_t.is_finite() && tau_t.is_finite() && h_t.is_finite() && theta.is_finite()) {
            return Err(Error::DomainViolation(format!(
                "sister parameters must be finite, got ({kappa_t}, {tau_t}, {h_t}, {theta})"
            )));
        }
        Ok(SisterParams {
            kappa_t,
            tau_t,
            h_t,
            theta: theta.rem_euclid(PI),
        })
    }
}

/// Parameters (κ, τ, H) of the sister immersion with phase angle θ:
/// τ + iH = e^{iθ}(τ̃ + iH̃) and κ − 4τ² = κ̃ − 4τ̃².
///
/// The image may leave the regime where tubes exist (θ = 0 on a minimal
/// source gives H = 0; large θ can drive κ ≤ 0), so the result skips the
/// supercriticality checks and must be validated by the caller when fed
/// into the profile machinery.
pub fn sister_params(s: SisterParams) -> TubeParams {
    let (sin_t, cos_t) = s.theta.sin_cos();
    let tau = s.tau_t * cos_t - s.h_t * sin_t;
    let h = s.tau_t * sin_t + s.h_t * cos_t;
    let kappa = s.kappa_t - 4.0 * s.tau_t * s.tau_t + 4.0 * tau * tau;
    TubeParams::new_unchecked(kappa, tau, h)
}

/// Pointwise description of how the correspondence rotates the normal
/// along a geodesic of the source surface: the phase angle θ, the
/// rotation angle ϑ of the normal in its invariant plane, its derivative
/// ϑ′ with respect to arc length, and the angle function ν (vertical
/// component of the normal).
///
/// Along a vertical geodesic ν ≡ 0; along a horizontal geodesic
/// ν = sin ϑ, and ϑ carries one extra bit of orientation that ν alone
/// cannot see.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicDeformation {
    pub theta: f64,
    pub vartheta: f64,
    pub vartheta_prime: f64,
    pub nu: f64,
}

impl GeodesicDeformation {
    pub fn new(theta: f64, vartheta: f64, vartheta_prime: f64, nu: f64) -> Result<Self> {
        if !(theta.is_finite() && vartheta.is_finite() && vartheta_prime.is_finite()) {
            return Err(Error::DomainViolation(format!(
                "deformation data must be finite, got (theta = {theta}, vartheta = {vartheta}, \
                 vartheta' = {vartheta_prime})"
            )));
        }
        if !(nu.abs() <= 1.0) {
            return Err(Error::DomainViolation(format!(
                "the angle function satisfies |nu| <= 1, got {nu}"
            )));
        }
        Ok(GeodesicDeformation {
            theta,
            vartheta,
            vartheta_prime,
            nu,
        })
    }

    /// Data along a vertical geodesic, where the normal is horizontal.
    pub fn vertical(theta: f64, vartheta: f64, vartheta_prime: f64) -> Result<Self> {
        Self::new(theta, vartheta, vartheta_prime, 0.0)
    }

    /// Data along a horizontal geodesic, where ν = sin ϑ.
    pub fn horizontal(theta: f64, vartheta: f64, vartheta_prime: f64) -> Result<Self> {
        Self::new(theta, vartheta, vartheta_prime, vartheta.sin())
    }
}

/// Conjugate data of a vertical geodesic of the source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerticalDeformation {
    /// ⟨γ′, ξ⟩ of the conjugate curve — constant, so the curve is a helix.
    pub vertical_component: f64,
    /// Geodesic curvature of the projected curve in M²(κ).
    pub kappa_g: f64,
}

/// How the sister correspondence with phase θ deforms a vertical geodesic
/// whose normal rotates at rate ϑ′, on a target surface of mean curvature
/// `h`: the conjugate curve keeps a constant vertical component cos θ and
/// projects to a curve of geodesic curvature 2H − ϑ′/sin θ.
pub fn vertical_geodesic_deformation(
    d: GeodesicDeformation,
    h: f64,
) -> Result<VerticalDeformation> {
    let sin_t = d.theta.sin();
    if sin_t == 0.0 {
        return Err(Error::DegenerateProjection);
    }
    Ok(VerticalDeformation {
        vertical_component: d.theta.cos(),
        kappa_g: 2.0 * h - d.vartheta_prime / sin_t,
    })
}

/// Projection-speed threshold below which the projected curve is treated
/// as singular: cos²θ + ν²sin²θ is the squared norm of the horizontal
/// part of the conjugate tangent.
pub const PROJECTION_REGULARITY_EPS: f64 = 1e-14;

/// Conjugate data of a horizontal geodesic of the source.  The curvature
/// fields are populated only where the projection is regular.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorizontalDeformation {
    /// ⟨γ′, ξ⟩ = sin θ cos ϑ, no longer constant along the curve.
    pub vertical_component: f64,
    /// Whether the projected curve is regular at this point
    /// (cos²θ + ν²sin²θ above [`PROJECTION_REGULARITY_EPS`]).
    pub regular: bool,
    /// Geodesic curvature of the projection in M²(κ).
    pub kappa_g: Option<f64>,
    /// Geodesic curvature of the conjugate curve inside the flat vertical
    /// cylinder over its projection.
    pub kappa_g_p: Option<f64>,
    /// Cosine of the angle between the surface and that cylinder.
    pub cos_angle: Option<f64>,
}

/// How the sister correspondence with phase θ deforms a horizontal
/// geodesic, on a target space of bundle curvature `tau`.  Irregular
/// projection points are reported through the `regular` flag rather than
/// an error: they occur along genuine curves (θ = π/2 with ν = 0, the
/// conjugate of a horizontal geodesic into a vertical one).
pub fn horizontal_geodesic_deformation(d: GeodesicDeformation, tau: f64) -> HorizontalDeformation {
    let (sin_t, cos_t) = d.theta.sin_cos();
    let (sin_v, cos_v) = d.vartheta.sin_cos();
    let q = cos_t * cos_t + d.nu * d.nu * sin_t * sin_t;
    let vertical_component = sin_t * cos_v;
    if q <= PROJECTION_REGULARITY_EPS {
        return HorizontalDeformation {
            vertical_component,
            regular: false,
            kappa_g: None,
            kappa_g_p: None,
            cos_angle: None,
        };
    }
    let sq = q.sqrt();
    HorizontalDeformation {
        vertical_component,
        regular: true,
        kappa_g: Some((2.0 * tau * q - d.vartheta_prime * cos_t) * sin_t * cos_v / (q * sq)),
        kappa_g_p: Some(d.vartheta_prime * sin_v * sin_t / sq),
        cos_angle: Some(cos_t * cos_v / sq),
    }
}

fn require_berger_source(kappa_t: f64, tau_t: f64) -> Result<()> {
    if !(kappa_t > 0.0 && kappa_t.is_finite()) {
        return Err(Error::DomainViolation(format!(
            "the ruled minimal helicoids live in Berger spheres, which need kappa > 0; \
             got kappa = {kappa_t}"
        )));
    }
    if !(tau_t != 0.0 && tau_t.is_finite()) {
        return Err(Error::DomainViolation(format!(
            "the ruled minimal helicoids need tau != 0, got tau = {tau_t}"
        )));
    }
    Ok(())
}

/// Ruled minimal helicoid in the Berger sphere E(κ̃,τ̃), in Cartan
/// coordinates: the u-curves are horizontal geodesics through the z-axis
/// and v is the screw-motion parameter with pitch `a`.
///
/// τ̃ enters the ambient metric (hence minimality and the angle function)
/// but not the coordinates of the rulings; it is part of the signature so
/// the family is always named together with its ambient space.  The chart
/// covers |u| < π/√κ̃; the two rulings' endpoints at ±π/√κ̃ project to
/// the antipode of the axis.
pub fn helicoid_immersion(kappa_t: f64, tau_t: f64, a: f64, u: f64, v: f64) -> Result<ModelPoint> {
    require_berger_source(kappa_t, tau_t)?;
    let sk = kappa_t.sqrt();
    let half = 0.5 * sk * u;
    if !(half.abs() < PI / 2.0) {
        return Err(Error::DomainViolation(format!(
            "helicoid chart requires |u| < pi/sqrt(kappa) = {:.6}, got u = {u}",
            PI / sk
        )));
    }
    let rad = 2.0 / sk * half.tan();
    Ok(ModelPoint::Cartan {
        x: rad * v.cos(),
        y: rad * v.sin(),
        z: a * v,
    })
}

/// Angle function ν(u, ·) of [`helicoid_immersion`] — the vertical
/// component of the unit normal, independent of v by the screw-motion
/// invariance.  It reaches the value 1 somewhere if and only if
/// 0 ≤ a ≤ 4τ̃/κ̃ (the extreme pitches give minimal spheres, the middle
/// pitch a = 2τ̃/κ̃ the minimal tube).
pub fn helicoid_angle_function(kappa_t: f64, tau_t: f64, a: f64, u: f64) -> Result<f64> {
    require_berger_source(kappa_t, tau_t)?;
    let x = kappa_t.sqrt() * u;
    let den = 2.0 * a * a * kappa_t * kappa_t - 8.0 * a * kappa_t * tau_t
        + 8.0 * tau_t * (a * kappa_t - 2.0 * tau_t) * x.cos()
        + kappa_t
        + 12.0 * tau_t * tau_t
        - (kappa_t - 4.0 * tau_t * tau_t) * (2.0 * x).cos();
    if !(den > 0.0) {
        // |ν| ≤ 1 forces den ≥ 2κ̃ sin²(√κ̃ u), so a vanishing denominator
        // only happens where the axis itself degenerates (a = 0 or
        // a = 4τ̃/κ̃ at the poles).
        return Err(Error::DomainViolation(format!(
            "angle function undefined at a degenerate axis point (u = {u}, pitch a = {a})"
        )));
    }
    Ok((2.0 * kappa_t).sqrt() * x.sin() / den.sqrt())
}

/// Fundamental data of the helicoid through the shared finite-difference
/// engine, oriented like the tube charts for κ > 0 so that the reported
/// ν matches [`helicoid_angle_function`] in sign.
pub fn helicoid_fundamental_forms(
    kappa_t: f64,
    tau_t: f64,
    a: f64,
    u: f64,
    v: f64,
    step: f64,
) -> Result<FundamentalForms> {
    require_berger_source(kappa_t, tau_t)?;
    let p = SpaceParams::new(kappa_t, tau_t)?;
    immersion_fundamental_forms(
        &p,
        |uu, vv| helicoid_immersion(kappa_t, tau_t, a, uu, vv),
        u,
        v,
        step,
        true,
    )
}

/// Warp factor ρ(u) of the intrinsic metric du² + ρ(u)dv² shared by the
/// minimal helicoid of pitch 2τ̃/κ̃ and all of its sister tubes.
pub fn induced_metric_rho(kappa_t: f64, tau_t: f64, u: f64) -> f64 {
    let x = kappa_t.sqrt() * u;
    let (s, c) = x.sin_cos();
    s * s / kappa_t + 4.0 * tau_t * tau_t * c * c / (kappa_t * kappa_t)
}

/// Sister triple (κ, τ, H) of the minimal tube source in E(κ̃,τ̃) at raw
/// (unnormalized) phase θ.  Raw θ matters here: the lattice shear b(θ)
/// is odd about θ = π/2 and changes sign on (π/2, π], which a fold into
/// [0, π) would destroy.
fn sister_triple_raw(kappa_t: f64, tau_t: f64, theta: f64) -> (f64, f64, f64) {
    let (sin_t, cos_t) = theta.sin_cos();
    let kappa = kappa_t - 4.0 * tau_t * tau_t * sin_t * sin_t;
    (kappa, tau_t * cos_t, tau_t * sin_t)
}

/// Pointwise rate value; assumes κ > 0 was already checked.
fn ruling_rate_value(kappa: f64, tau: f64, h: f64, phi: f64) -> f64 {
    if h == 0.0 {
        // Zero phase: the two square roots reduce to √κ|cos φ| and
        // |τ cos φ|, so the rate is the constant sign(τ), extended by
        // continuity through cos φ = 0.
        return tau.signum();
    }
    let c2 = phi.cos().powi(2);
    tau * kappa.sqrt() * c2 / ((4.0 * h * h + kappa * c2).sqrt() * (h * h + tau * tau * c2).sqrt())
}

/// Reparametrization rate v′(φ) that makes the helicoid rulings
/// orthogonal to the level sets of the angle function inside the sister
/// tube chart with phase θ.  It interpolates between v′ ≡ 1 at θ = 0 and
/// v′ ≡ 0 at θ = π/2.
pub fn ruling_rate(kappa_t: f64, tau_t: f64, theta: f64, phi: f64) -> Result<f64> {
    require_berger_source(kappa_t, tau_t)?;
    let (kappa, tau, h) = sister_triple_raw(kappa_t, tau_t, theta);
    if kappa <= 0.0 {
        return Err(Error::NonToralSister { kappa });
    }
    Ok(ruling_rate_value(kappa, tau, h, phi))
}

/// Shear b(θ) of the first lattice generator: the total v-drift of one
/// ruling across a full period of the tube chart, i.e. the integral of
/// [`ruling_rate`] over φ ∈ [0, 2π].  Decreases strictly from 2π at
/// θ = 0 to −2π at θ = π, with b(π − θ) = −b(θ).
pub fn lattice_b(kappa_t: f64, tau_t: f64, theta: f64, tol: f64) -> Result<f64> {
    require_berger_source(kappa_t, tau_t)?;
    if !(tol > 0.0) {
        return Err(Error::DomainViolation(format!(
            "quadrature tolerance must be positive, got {tol}"
        )));
    }
    let (kappa, tau, h) = sister_triple_raw(kappa_t, tau_t, theta);
    if kappa <= 0.0 {
        return Err(Error::NonToralSister { kappa });
    }
    adaptive_simpson(|phi| ruling_rate_value(kappa, tau, h, phi), 0.0, 2.0 * PI, tol)
}

/// Conformal reparametrization u = g(s) of the warped-product metric
/// du² + ρ(u)dv², tabulated over several periods: g′ = √ρ(g), g(0) = 0,
/// strictly increasing, with quasi-period g(s + a) = g(s) + 2π/√κ̃.
///
/// `a` is the conformal length of one u-period and forms, together with
/// the shear [`lattice_b`], the first generator (a, b(θ)) of the
/// conformal lattice; the second generator is always (0, 4π).
#[derive(Debug, Clone)]
pub struct ConformalProfile {
    dense: DenseOutput,
    a: f64,
    /// 2π/√κ̃, the growth of g over one quasi-period.
    period_increment: f64,
}

impl ConformalProfile {
    /// Conformal length of the u-period: the unique solution of
    /// g(a) = 2π/√κ̃.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// 2π/√κ̃.
    pub fn period_increment(&self) -> f64 {
        self.period_increment
    }

    /// Evaluate g(s) anywhere: inside the tabulated range by dense
    /// interpolation, outside it by quasi-periodic reduction.
    pub fn eval(&self, s: f64) -> f64 {
        if (0.0..=self.dense.t_end()).contains(&s) {
            return self.dense.eval_component(s, 0);
        }
        let k = (s / self.a).floor();
        let reduced = s - k * self.a;
        self.dense.eval_component(reduced.clamp(0.0, self.dense.t_end()), 0)
            + k * self.period_increment
    }
}

/// Solve the conformal condition g′ = √ρ(g) from g(0) = 0 across a bit
/// more than five u-periods and locate the lattice length a with
/// g(a) = 2π/√κ̃.  The right-hand side stays between the two positive
/// constants √ρ ∈ {1/√κ̃, 2|τ̃|/κ̃}, so g is a diffeomorphism of ℝ and
/// the crossing is simple.
pub fn conformal_profile(kappa_t: f64, tau_t: f64) -> Result<ConformalProfile> {
    require_berger_source(kappa_t, tau_t)?;
    let sk = kappa_t.sqrt();
    let target = 2.0 * PI / sk;
    let g_stop = 5.25 * target;
    let min_speed = (1.0 / sk).min(2.0 * tau_t.abs() / kappa_t);
    let s_cap = 1.125 * g_stop / min_speed + 1.0;
    // The dense table is interpolated with O(max_step^4) error; 5e-3
    // keeps single evaluations near 1e-12 so that quasi-periodicity and
    // the frozen lattice lengths hold to 1e-9.
    let opts = OdeOptions {
        rtol: 1e-12,
        atol: 1e-12,
        max_step: 5e-3,
        max_steps: 50_000_000,
    };
    let dense = integrate_until(
        |_, y, dy| {
            dy[0] = induced_metric_rho(kappa_t, tau_t, y[0]).sqrt();
            true
        },
        0.0,
        &[0.0],
        s_cap,
        |_, y| y[0] >= g_stop,
        &opts,
    )?;

    let mut bracket = None;
    let mut prev = (0.0, 0.0);
    for (t, y) in dense.knots() {
        if y[0] >= target {
            bracket = Some((prev.0, t));
            break;
        }
        prev = (t, y[0]);
    }
    let (lo, hi) = bracket.ok_or_else(|| {
        Error::StepFailure("conformal profile never reached one period".to_string())
    })?;
    let a = bisect_secant(|s| dense.eval_component(s, 0) - target, lo, hi, 1e-13)?;
    Ok(ConformalProfile {
        dense,
        a,
        period_increment: target,
    })
}

/// Jacobi amplitude am(x, m) for modulus m ≤ 1, by integrating its
/// defining equation am′ = dn, dn² = 1 − m sin²(am).  The direct
/// integration keeps one code path for every sign of m, which matters
/// because the conformal profile uses m = 1 − κ̃/(4τ̃²) of either sign.
pub fn jacobi_amplitude(x: f64, m: f64) -> Result<f64> {
    if !(m <= 1.0) {
        return Err(Error::DomainViolation(format!(
            "jacobi amplitude is implemented for modulus m <= 1, got {m}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    // am is odd in x; integrate on the positive side only.
    let opts = OdeOptions::with_tol(1e-12);
    let dense = integrate(
        |_, y, dy| {
            let s = y[0].sin();
            let rad = 1.0 - m * s * s;
            if rad < 0.0 {
                return false;
            }
            dy[0] = rad.sqrt();
            true
        },
        0.0,
        &[0.0],
        x.abs(),
        &opts,
    )?;
    let v = dense.y_end()[0];
    Ok(if x < 0.0 { -v } else { v })
}

/// Conformal lattice of the sister tube with phase θ of the minimal tube
/// in E(κ̃,τ̃): the quotient of the conformal (s, v)-plane by
/// (a, b(θ)) and (0, 4π).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeSpec {
    /// Conformal length of the u-period (first generator's s-extent).
    pub a: f64,
    /// Shear of the first generator in the v-direction.
    pub b_theta: f64,
    /// Second generator; the rulings close up only after two turns.
    pub second_generator: (f64, f64),
    /// Whether the quotient is a torus (sister κ > 0).
    pub torus: bool,
}

/// Assemble the full lattice data for a toral sister; errors with
/// [`Error::NonToralSister`] when the sister space has κ ≤ 0 and the
/// quotient degenerates to a cylinder.
pub fn lattice_spec(kappa_t: f64, tau_t: f64, theta: f64, tol: f64) -> Result<LatticeSpec> {
    let b_theta = lattice_b(kappa_t, tau_t, theta, tol)?;
    let profile = conformal_profile(kappa_t, tau_t)?;
    Ok(LatticeSpec {
        a: profile.a(),
        b_theta,
        second_generator: (0.0, 4.0 * PI),
        torus: true,
    })
}

/// Conformal class of the quotient torus, normalized by the similarity
/// that maps the lattice to (1, 0) and (b/2π, a/2π).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizedClass {
    /// Always (1, 0) after the normalization.
    pub first: (f64, f64),
    /// (b(θ)/2π, a/2π), second coordinate positive.
    pub second: (f64, f64),
    /// The same modulus moved into the fundamental strip: the first
    /// coordinate reduced modulo 1 into (−1/2, 1/2].
    pub second_reduced: (f64, f64),
}

/// Quadrature tolerance used for the shear integral inside
/// [`normalized_conformal_class`].
const CLASS_QUAD_TOL: f64 = 1e-10;

/// Normalized conformal class of the sister tube with phase θ; the first
/// coordinate of the reduced second generator sweeps (−1/2, 1/2] as θ
/// runs over the phases with toral sisters.
pub fn normalized_conformal_class(
    kappa_t: f64,
    tau_t: f64,
    theta: f64,
) -> Result<NormalizedClass> {
    let spec = lattice_spec(kappa_t, tau_t, theta, CLASS_QUAD_TOL)?;
    let second = (spec.b_theta / (2.0 * PI), spec.a / (2.0 * PI));
    let mut r = second.0 - second.0.round();
    if r <= -0.5 {
        r += 1.0;
    }
    Ok(NormalizedClass {
        first: (1.0, 0.0),
        second,
        second_reduced: (r, second.1),
    })
}
