//! Profile curves of the horizontal constant-mean-curvature tubes.
//!
//! A horizontal H-tube in E(κ, τ) is swept by translating a closed curve
//! φ ↦ (r(φ), h(φ)) along a horizontal geodesic Γ, where r is the intrinsic
//! distance to Γ and h the vertical offset over Γ. The curve is available
//! two ways:
//!
//! * [`closed_form_profile`] — explicit quadratures, one branch per sign
//!   of κ and of κ − 4τ², with h normalized by h(0) = 0;
//! * [`integrate_profile`] — adaptive integration of the first-order system
//!   in the auxiliary angle φ, seeded from the closed form; the two must
//!   agree to ~1e−8, which is the main self-check of this crate.
//!
//! [`tube_immersion`] places the curve into the ambient coordinate models,
//! and [`profile_normal_and_convexity`] exposes the outward normal field and
//! the curvature of the profile, which drive the foliation analysis.

use crate::error::{Error, Result};
use crate::numeric::ode::{integrate_until, OdeOptions};
use crate::numeric::root::bisect_secant;
use crate::space::ModelPoint;
use serde::Serialize;
use std::f64::consts::FRAC_PI_4;

/// Below this |κ| every formula dispatches to its κ = 0 (Heisenberg) branch:
/// the κ ≠ 0 closed forms lose all significant digits as κ → 0 while the
/// Heisenberg ones are exact limits.
pub const KAPPA_EPS: f64 = 1e-7;

/// Parameters (κ, τ, H) of a horizontal tube, constrained to the
/// supercritical regime 4H² + κ > 0 where the tubes exist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TubeParams {
    pub kappa: f64,
    pub tau: f64,
    /// The prescribed mean curvature H (with respect to the inward normal).
    pub mean_curvature: f64,
}

impl TubeParams {
    /// Validated constructor: requires 4H² + κ > 0 strictly, H > 0 when
    /// κ ≤ 0 (the profile formulas are undefined at H = 0 there), and
    /// H ≥ 0 when κ > 0 (H = 0 is the minimal torus, which only the
    /// helicoid parametrization represents).
    pub fn new(kappa: f64, tau: f64, mean_curvature: f64) -> Result<Self> {
        if !(kappa.is_finite() && tau.is_finite() && mean_curvature.is_finite()) {
            return Err(Error::DomainViolation(format!(
                "tube parameters must be finite, got ({kappa}, {tau}, {mean_curvature})"
            )));
        }
        let crit = 4.0 * mean_curvature * mean_curvature + kappa;
        if crit <= 0.0 {
            return Err(Error::SupercriticalViolation { value: crit });
        }
        if mean_curvature < 0.0 || (mean_curvature == 0.0 && kappa <= 0.0) {
            return Err(Error::NonpositiveH {
                h: mean_curvature,
                reason: "horizontal tubes require H > 0 (H = 0 is allowed only for kappa > 0, \
                         as the minimal torus)",
            });
        }
        Ok(TubeParams {
            kappa,
            tau,
            mean_curvature,
        })
    }

    /// Constructor that skips the regime checks — for parameter maps
    /// (e.g. the sister correspondence) whose outputs may leave the tube
    /// regime and are validated by the caller when actually used.
    pub fn new_unchecked(kappa: f64, tau: f64, mean_curvature: f64) -> Self {
        TubeParams {
            kappa,
            tau,
            mean_curvature,
        }
    }

    /// 4H² + κ, positive in the supercritical regime.
    pub fn supercriticality(&self) -> f64 {
        4.0 * self.mean_curvature * self.mean_curvature + self.kappa
    }

    fn require_positive_h(&self) -> Result<()> {
        if self.mean_curvature <= 0.0 {
            return Err(Error::NonpositiveH {
                h: self.mean_curvature,
                reason: "the closed-form profile degenerates at H = 0; the minimal torus is \
                         covered by the helicoid parametrization",
            });
        }
        Ok(())
    }
}

/// One sample of the profile curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfilePoint {
    pub phi: f64,
    pub r: f64,
    pub h: f64,
}

/// State of the first-order profile system in the curve parameter u.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeState {
    pub u: f64,
    pub r: f64,
    pub h: f64,
    pub varphi: f64,
}

/// A sampled profile arc with strictly increasing φ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileCurve {
    pub params: TubeParams,
    pub samples: Vec<ProfilePoint>,
}

impl ProfileCurve {
    /// CSV with header `phi,r,h`, 17 significant digits per value so the
    /// text round-trips to the exact binary doubles.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(32 * self.samples.len() + 16);
        out.push_str("phi,r,h\n");
        for s in &self.samples {
            out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", s.phi, s.r, s.h));
        }
        out
    }
}

/// The profile curve in closed form.
///
/// * κ > 0: r = arctan(√κ cos φ / 2H)/√κ, and h splits into a κ − 4τ² term
///   — arctanh-shaped when κ − 4τ² ≥ 0 and its real arctan counterpart when
///   κ − 4τ² < 0 — plus a bundle term (4τ/κ)·arctan(τ sin φ/(√(H²+τ²) + q)).
/// * κ = 0: r = cos φ/(2H), h = (H²+τ²)/(4H²τ)·arcsin(τ sin φ/√(H²+τ²))
///   + sin φ·q/(4H²), with the τ = 0 limit sin φ/(2H).
/// * κ < 0: r = arctanh(√−κ cos φ / 2H)/√−κ and the same h expression as
///   κ > 0 (the κ − 4τ² < 0 branch always applies).
///
/// Here q = √(H² + τ² cos² φ). Normalization: h(0) = 0, r even, h odd.
pub fn closed_form_profile(t: &TubeParams, phi: f64) -> Result<ProfilePoint> {
    t.require_positive_h()?;
    let (k, tau, hh) = (t.kappa, t.tau, t.mean_curvature);
    if t.supercriticality() <= 0.0 {
        return Err(Error::SupercriticalViolation {
            value: t.supercriticality(),
        });
    }
    let (s, c) = phi.sin_cos();

    if k.abs() < KAPPA_EPS {
        let r = c / (2.0 * hh);
        let h = if tau == 0.0 {
            s / (2.0 * hh)
        } else {
            let ht = hh * hh + tau * tau;
            let q = (hh * hh + tau * tau * c * c).sqrt();
            ht / (4.0 * hh * hh * tau) * (tau * s / ht.sqrt()).asin() + s * q / (4.0 * hh * hh)
        };
        return Ok(ProfilePoint { phi, r, h });
    }

    let w = (4.0 * hh * hh + k).sqrt();
    let q = (hh * hh + tau * tau * c * c).sqrt();
    let d = k - 4.0 * tau * tau;

    let r = if k > 0.0 {
        let sk = k.sqrt();
        (sk * c / (2.0 * hh)).atan() / sk
    } else {
        let sk = (-k).sqrt();
        (sk * c / (2.0 * hh)).atanh() / sk
    };

    let first = if d >= 0.0 {
        let sd = d.sqrt();
        2.0 * hh * sd / (k * w) * (hh * sd * s / (w * q)).atanh()
    } else {
        let sd = (-d).sqrt();
        -2.0 * hh * sd / (k * w) * (hh * sd * s / (w * q)).atan()
    };
    let second = 4.0 * tau / k * (tau * s / ((hh * hh + tau * tau).sqrt() + q)).atan();

    Ok(ProfilePoint {
        phi,
        r,
        h: first + second,
    })
}

/// dr/dφ = −2H sin φ / (4H² + κ cos² φ), the φ-derivative shared by every
/// regime of the closed form.
pub fn d_r_d_phi(t: &TubeParams, phi: f64) -> f64 {
    let c = phi.cos();
    let denom = 4.0 * t.mean_curvature * t.mean_curvature + t.kappa * c * c;
    -2.0 * t.mean_curvature * phi.sin() / denom
}

/// dh/dφ = 2 cos φ √(H² + τ² cos² φ) / (4H² + κ cos² φ).
pub fn d_h_d_phi(t: &TubeParams, phi: f64) -> f64 {
    let c = phi.cos();
    let denom = 4.0 * t.mean_curvature * t.mean_curvature + t.kappa * c * c;
    let q = (t.mean_curvature * t.mean_curvature + t.tau * t.tau * c * c).sqrt();
    2.0 * c * q / denom
}

/// The conserved energy of the profile system; the tube profiles are
/// exactly its zero-level orbits.
///
/// * κ > 0: E = cos(r√κ) cos φ − (2H/√κ) sin(r√κ)
/// * κ = 0: E = cos φ − 2Hr
/// * κ < 0: E = cosh(r√−κ) cos φ − (2H/√−κ) sinh(r√−κ)
pub fn energy(t: &TubeParams, r: f64, phi: f64) -> f64 {
    let (k, hh) = (t.kappa, t.mean_curvature);
    if k.abs() < KAPPA_EPS {
        phi.cos() - 2.0 * hh * r
    } else if k > 0.0 {
        let sk = k.sqrt();
        (r * sk).cos() * phi.cos() - 2.0 * hh / sk * (r * sk).sin()
    } else {
        let sk = (-k).sqrt();
        (r * sk).cosh() * phi.cos() - 2.0 * hh / sk * (r * sk).sinh()
    }
}

/// Right-hand side (dr/du, dh/du, dφ/du) of the first-order profile system
/// in the curve parameter u. The three regimes:
///
/// * κ > 0, with W = √(4τ² + (κ − 4τ²) cos²(r√κ)):
///   r' = −sin φ/W, h' = cos φ/(√κ cos(r√κ)),
///   φ' = (2H + √κ cos φ tan(r√κ))/W;
/// * κ = 0, with S = √(1 + 4τ²r²):
///   r' = −sin φ/S, h' = cos φ, φ' = 2H/S;
/// * κ < 0, with W = √(−4τ² − (κ − 4τ²) cosh²(r√−κ)):
///   r' = −sin φ/W, h' = cos φ/(√−κ cosh(r√−κ)),
///   φ' = (2H − √−κ cos φ tanh(r√−κ))/W.
///
/// The parametrizations differ by a κ-dependent speed (the κ ≠ 0 systems run
/// ~1/√|κ| faster near κ = 0), so only the direction field (dr/dφ, dh/dφ)
/// is continuous across the κ = 0 seam — which is all trajectory-level
/// consumers need.
pub fn profile_ode_rhs(t: &TubeParams, s: &OdeState) -> Result<[f64; 3]> {
    let (k, tau, hh) = (t.kappa, t.tau, t.mean_curvature);
    let (sp, cp) = s.varphi.sin_cos();
    if k.abs() < KAPPA_EPS {
        let sq = (1.0 + 4.0 * tau * tau * s.r * s.r).sqrt();
        return Ok([-sp / sq, cp, 2.0 * hh / sq]);
    }
    if k > 0.0 {
        let sk = k.sqrt();
        let cr = (s.r * sk).cos();
        if cr <= 0.0 {
            return Err(Error::DomainViolation(format!(
                "profile system leaves its chart: cos(r sqrt(kappa)) = {cr:e} at r = {}",
                s.r
            )));
        }
        let rad = 4.0 * tau * tau + (k - 4.0 * tau * tau) * cr * cr;
        if rad <= 0.0 {
            return Err(Error::DomainViolation(format!(
                "profile system radicand {rad:e} is nonpositive at r = {}",
                s.r
            )));
        }
        let w = rad.sqrt();
        let tn = (s.r * sk).sin() / cr;
        Ok([-sp / w, cp / (sk * cr), (2.0 * hh + sk * cp * tn) / w])
    } else {
        let sk = (-k).sqrt();
        let ch = (s.r * sk).cosh();
        let rad = -4.0 * tau * tau - (k - 4.0 * tau * tau) * ch * ch;
        if rad <= 0.0 {
            return Err(Error::DomainViolation(format!(
                "profile system radicand {rad:e} is nonpositive at r = {}",
                s.r
            )));
        }
        let w = rad.sqrt();
        let th = (s.r * sk).tanh();
        Ok([-sp / w, cp / (sk * ch), (2.0 * hh - sk * cp * th) / w])
    }
}

/// Lower bound for dφ/du along a tube orbit — used to cap the integration
/// span. On the orbit, dφ/du = (4H² + κ cos²φ)^{3/2} / (4H √|κ| q) for
/// κ ≠ 0 and 2H²/q for κ = 0, with q = √(H² + τ² cos²φ) ≤ √(H² + τ²).
fn min_phi_speed(t: &TubeParams) -> f64 {
    let (k, tau, hh) = (t.kappa, t.tau, t.mean_curvature);
    let qmax = (hh * hh + tau * tau).sqrt();
    if k.abs() < KAPPA_EPS {
        2.0 * hh * hh / qmax
    } else if k > 0.0 {
        2.0 * hh * hh / (k.sqrt() * qmax)
    } else {
        let dmin: f64 = 4.0 * hh * hh + k;
        dmin.powf(1.5) / (4.0 * hh * (-k).sqrt() * qmax)
    }
}

/// Integrate the profile system from φ0 to φ1, seeding (r, h) from the
/// closed form at φ0, and return the arc re-indexed by φ on a uniform grid.
///
/// φ is strictly monotone in u along tube orbits, so the re-indexing solves
/// φ(u) = φ_target on the integrator's dense output. `tol` is the local
/// error tolerance of the integrator (both absolute and relative).
pub fn integrate_profile(t: &TubeParams, phi0: f64, phi1: f64, tol: f64) -> Result<ProfileCurve> {
    if !(tol > 0.0) {
        return Err(Error::DomainViolation(format!(
            "integration tolerance must be positive, got {tol}"
        )));
    }
    let seed = closed_form_profile(t, phi0)?;
    if phi0 == phi1 {
        return Ok(ProfileCurve {
            params: *t,
            samples: vec![seed],
        });
    }

    let span = phi1 - phi0;
    let dir = span.signum();
    // φ increases with u, so a decreasing φ range is traversed backwards.
    let u_cap = dir * (3.0 * span.abs() / min_phi_speed(t) + 0.01);
    let opts = OdeOptions {
        rtol: tol,
        atol: tol,
        // Dense output between knots is cubic Hermite, so cap the step to
        // keep its O(h^4) interpolation error well under the target.
        max_step: 0.01 / f64::max(1.0, 2.0 * t.mean_curvature),
        ..OdeOptions::default()
    };
    let y0 = [seed.r, seed.h, phi0];
    let rhs = |_u: f64, y: &[f64], dy: &mut [f64]| -> bool {
        let st = OdeState {
            u: 0.0,
            r: y[0],
            h: y[1],
            varphi: y[2],
        };
        match profile_ode_rhs(t, &st) {
            Ok(d) => {
                dy.copy_from_slice(&d);
                true
            }
            Err(_) => false,
        }
    };
    let stop = |_u: f64, y: &[f64]| dir * (y[2] - phi1) >= 0.0;
    let out = integrate_until(rhs, 0.0, &y0, u_cap, stop, &opts)?;
    if dir * (out.y_end()[2] - phi1) < 0.0 {
        return Err(Error::StepFailure(format!(
            "profile integration stalled at phi = {} before reaching {phi1}",
            out.y_end()[2]
        )));
    }

    // Choose a sample density fine enough for plotting and verification.
    let n = (span.abs() / 0.01).ceil() as usize;
    let n = n.clamp(16, 4096);
    let mut samples = Vec::with_capacity(n + 1);
    samples.push(seed);

    // Bracket each φ target between dense-output knots (φ is monotone in u),
    // then solve for u within the bracket.
    let knots: Vec<(f64, f64)> = out.knots().map(|(u, y)| (u, y[2])).collect();
    let mut seg = 0usize;
    for i in 1..=n {
        let phi_t = phi0 + span * i as f64 / n as f64;
        while seg + 1 < knots.len() && dir * (knots[seg + 1].1 - phi_t) < 0.0 {
            seg += 1;
        }
        let (ua, ub) = (knots[seg].0, knots[(seg + 1).min(knots.len() - 1)].0);
        let u_star = if ua == ub {
            ua
        } else {
            bisect_secant(
                |u| out.eval_component(u, 2) - phi_t,
                ua,
                ub,
                1e-13 * f64::max(1.0, ub.abs()),
            )?
        };
        samples.push(ProfilePoint {
            phi: phi_t,
            r: out.eval_component(u_star, 0),
            h: out.eval_component(u_star, 1),
        });
    }
    if dir < 0.0 {
        samples.reverse();
    }
    Ok(ProfileCurve {
        params: *t,
        samples,
    })
}

/// Immersion of the tube into the ambient coordinate model: Cartan chart
/// for κ ≥ 0, half-space chart for κ < 0. `v` is the coordinate along the
/// axis Γ, `phi` selects the profile point.
///
/// * κ > 0: X = (R cos v, R sin v, h + (2τ/κ)v) with
///   R = (2/√κ) tan(√κ r/2 + π/4);
/// * κ = 0: X = (v, r, h + τ v r);
/// * κ < 0: X = (e^v tanh(√−κ r), e^v sech(√−κ r),
///   h + (4τ/κ) arccos(t₂/√(1+t₂²))), t₂ = tanh(√−κ r/2) — the axis is the
///   dilation-invariant geodesic {x = 0}, so v acts by e^v and never enters
///   the fiber coordinate.
pub fn tube_immersion(t: &TubeParams, phi: f64, v: f64) -> Result<ModelPoint> {
    let p = closed_form_profile(t, phi)?;
    let (k, tau) = (t.kappa, t.tau);
    if k.abs() < KAPPA_EPS {
        return Ok(ModelPoint::cartan(v, p.r, p.h + tau * v * p.r));
    }
    if k > 0.0 {
        let sk = k.sqrt();
        let arg = sk * p.r / 2.0 + FRAC_PI_4;
        if !(arg.abs() < std::f64::consts::FRAC_PI_2) {
            return Err(Error::DomainViolation(format!(
                "tube immersion leaves the Cartan chart: tan argument {arg} at phi = {phi}"
            )));
        }
        let big_r = 2.0 / sk * arg.tan();
        let (sv, cv) = v.sin_cos();
        Ok(ModelPoint::cartan(
            big_r * cv,
            big_r * sv,
            p.h + 2.0 * tau / k * v,
        ))
    } else {
        let sk = (-k).sqrt();
        let t2 = (sk * p.r / 2.0).tanh();
        let z = p.h + 4.0 * tau / k * (t2 / (1.0 + t2 * t2).sqrt()).acos();
        let ev = v.exp();
        Ok(ModelPoint::half_space(
            ev * (sk * p.r).tanh(),
            ev / (sk * p.r).cosh(),
            z,
        ))
    }
}

/// The normal η = (−h′(φ), r′(φ)) of the profile curve in the (r, h)-plane
/// and its convexity scalar r′h″ − r″h′, which is nonnegative for every
/// supercritical H > 0:
///
///   r′h″ − r″h′ = 4H (H² + τ² cos²φ (1 + sin²φ))
///                 / (√(H² + τ² cos²φ) (4H² + κ cos²φ)²).
///
/// η has winding number 1 about the origin as φ runs over a period, which
/// is what makes the profile a convex closed curve.
pub fn profile_normal_and_convexity(t: &TubeParams, phi: f64) -> Result<([f64; 2], f64)> {
    t.require_positive_h()?;
    let (k, tau, hh) = (t.kappa, t.tau, t.mean_curvature);
    let (s, c) = phi.sin_cos();
    let eta = [-d_h_d_phi(t, phi), d_r_d_phi(t, phi)];
    let q = (hh * hh + tau * tau * c * c).sqrt();
    let dd = 4.0 * hh * hh + k * c * c;
    let convexity = 4.0 * hh * (hh * hh + tau * tau * c * c * (1.0 + s * s)) / (q * dd * dd);
    Ok((eta, convexity))
}
