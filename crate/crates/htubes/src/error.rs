use thiserror::Error;

/// Everything that can go wrong across the library.
///
/// Variants split into two families: *domain* errors (a request that the
/// geometry itself rules out — wrong model, inadmissible parameters,
/// degenerate configurations) and *numerical* errors (an adaptive scheme
/// that could not reach its tolerance). [`Error::is_numerical`] exposes the
/// distinction so callers (the CLI in particular) can map them to different
/// exit statuses.
#[derive(Debug, Error)]
pub enum Error {
    /// A coordinate triple that lies outside the chart of its model, e.g.
    /// a Cartan point with 1 + (κ/4)(x²+y²) ≤ 0 or a half-space point with
    /// y ≤ 0.
    #[error("invalid point for the {model} model: {reason}")]
    InvalidPoint {
        model: &'static str,
        reason: String,
    },

    /// The point's model and the requested operation (or the sign of κ)
    /// do not fit together.
    #[error("model mismatch: {0}")]
    ModelMismatch(String),

    /// The tube family only exists for 4H² + κ > 0.
    #[error("supercriticality violated: 4H^2 + kappa = {value:e} is not positive")]
    SupercriticalViolation { value: f64 },

    /// Closed-form profiles need H > 0 when κ ≤ 0, and H = 0 in a Berger
    /// sphere is the minimal torus, which lives in the helicoid family
    /// rather than in the closed-form branch.
    #[error("mean curvature H = {h} is not admissible here: {reason}")]
    NonpositiveH { h: f64, reason: &'static str },

    /// An evaluation left the open set on which a formula is defined
    /// (vanishing radicand, tangent singularity, parameter out of range).
    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// The adaptive ODE integrator gave up (step underflow or step budget
    /// exhausted before reaching the target).
    #[error("integration step control failed: {0}")]
    StepFailure(String),

    /// The finite-difference tangent vectors are numerically dependent,
    /// so no normal direction can be extracted.
    #[error("degenerate tangency: det I = {det:e} is below 1e-14")]
    DegenerateTangency { det: f64 },

    /// Vertical-geodesic curvature transport divides by sin θ.
    #[error("projection degenerates: sin(theta) = 0")]
    DegenerateProjection,

    /// Lattice data only exists when the sister ambient space is a Berger
    /// sphere; for κ ≤ 0 the quotient is a cylinder.
    #[error("sister space has kappa = {kappa:e} <= 0: the quotient is a cylinder, not a torus")]
    NonToralSister { kappa: f64 },

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),
}

impl Error {
    /// True for failures of a numerical scheme (as opposed to requests the
    /// geometry rules out).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::StepFailure(_) | Error::QuadratureFailure(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
