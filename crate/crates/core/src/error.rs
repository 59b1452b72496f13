use thiserror::Error;

/// Errors raised by field evaluation, quadrature and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BeamError {
    #[error("Hermite order {order} exceeds the supported maximum of {max}")]
    UnsupportedOrder { order: usize, max: usize },

    #[error("mode ({m}, {n}) exceeds the supported total order m + n <= {max}")]
    UnsupportedMode { m: usize, n: usize, max: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("non-finite integrand value at node ({x1}, {x2})")]
    NonFiniteIntegrand { x1: f64, x2: f64 },

    #[error("quadrature did not converge: {nodes} vs {refined} nodes differ by {difference:e}")]
    QuadratureNonConvergence {
        nodes: usize,
        refined: usize,
        difference: f64,
    },

    #[error("point violates the paraxial constraint: |x3 - v t| = {violation:e} exceeds {tolerance:e}")]
    ConstraintViolation { violation: f64, tolerance: f64 },

    #[error(
        "mode ({m}, {n}) has a node on the beam axis; use the off-axis ridge Gouy fit instead"
    )]
    OddModeOnAxis { m: usize, n: usize },

    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),

    #[error("numeric overflow guard tripped: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, BeamError>;
