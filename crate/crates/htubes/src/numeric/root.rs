//! Bracketed scalar root finding: bisection with opportunistic secant steps.
//!
//! The secant step is attempted first; whenever it falls outside the current
//! bracket (or makes negligible progress) the step falls back to the
//! midpoint, so convergence is never worse than bisection while staying
//! derivative-free. That matters for functions like x·artanh(x) whose
//! derivative blows up at the bracket edge.

use crate::error::{Error, Result};

/// Root of `f` inside `[a, b]`, located to a bracket width of `tol`.
/// Requires a sign change over the bracket.
pub fn bisect_secant<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    assert!(tol > 0.0, "tolerance must be positive");
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() {
        return Err(Error::DomainViolation(format!(
            "root not bracketed on [{lo:e}, {hi:e}]: f = ({flo:e}, {fhi:e})"
        )));
    }
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        // Secant candidate from the bracket endpoints.
        let sec = hi - fhi * (hi - lo) / (fhi - flo);
        let margin = 0.01 * (hi - lo);
        let x = if sec.is_finite() && sec > lo + margin && sec < hi - margin {
            sec
        } else {
            mid
        };
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if !fx.is_finite() {
            return Err(Error::DomainViolation(format!(
                "function not finite at {x:e} during root refinement"
            )));
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    // Pick the endpoint with the smaller residual.
    Ok(if flo.abs() <= fhi.abs() { lo } else { hi })
}
