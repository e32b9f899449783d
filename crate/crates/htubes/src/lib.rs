//! Horizontal constant-mean-curvature tubes in the homogeneous
//! 3-manifolds E(κ, τ).
//!
//! The family E(κ, τ) — Berger spheres, the Heisenberg group, the universal
//! cover of SL(2, R), and the product spaces S²×R, H²×R, R³ — fibers over
//! the simply connected surface of curvature κ with bundle curvature τ.
//! This crate computes the rotationally invariant cylinders of constant mean
//! curvature H > 0 whose axis is a *horizontal* geodesic of the fibration:
//! their profile curves in closed form and by integration, their second
//! fundamental forms (numerically, from the immersion alone), the vertical
//! tube foliations they produce, the conjugate ("sister") correspondence
//! with helicoids, and — on the Berger spheres with κ = 4 — the area and
//! enclosed volume that feed the isoperimetric comparison.
//!
//! Layout:
//! * [`space`] — coordinate models, metrics, frames and the Hopf fibration;
//! * [`profile`] — closed-form and integrated profile curves, immersions;
//! * [`curvature`] — finite-difference fundamental forms and mean curvature;
//! * [`foliation`] — the tube-foliation criterion and maximal-height scan;
//! * [`sister`] — sister parameters, helicoids, lattices, conformal classes;
//! * [`isoperimetric`] — area/volume of tubes in the κ = 4 Berger spheres;
//! * [`numeric`] — the ODE, quadrature and root-finding kernels used above.

pub mod error;
pub mod numeric;
pub mod space;

pub mod curvature;
pub mod foliation;
pub mod isoperimetric;
pub mod profile;
pub mod sister;

pub use error::{Error, Result};
pub use space::{classify_space, ModelPoint, SpaceClass, SpaceParams};

pub use curvature::{numeric_fundamental_forms, numeric_mean_curvature, FundamentalForms};
pub use foliation::{foliation_criterion, FoliatedSet, FoliationReport};
pub use isoperimetric::{isoperimetric_sweep, tube_area, tube_volume, IsoperimetricRecord};
pub use profile::{
    closed_form_profile, integrate_profile, tube_immersion, ProfileCurve, TubeParams,
};
pub use sister::{sister_params, NormalizedClass, SisterParams};
