//! Central finite-difference stencils (second-order accurate).

/// First derivative: (f(x+h) − f(x−h)) / 2h.
pub fn central_d1<F: FnMut(f64) -> f64>(mut f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Second derivative: (f(x+h) − 2f(x) + f(x−h)) / h².
pub fn central_d2<F: FnMut(f64) -> f64>(mut f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}
