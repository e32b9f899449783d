//! Self-contained numerical kernels: an embedded Runge–Kutta integrator with
//! dense output, adaptive Simpson quadrature, a bracketed root finder, and
//! central-difference helpers. No external numerics dependencies — every
//! routine here is small enough to audit alongside the geometry it serves.

pub mod diff;
pub mod ode;
pub mod quad;
pub mod root;
