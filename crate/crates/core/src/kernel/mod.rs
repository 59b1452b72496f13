//! Numerical building blocks shared by the beam, constraint and verifier
//! modules: physicists' Hermite polynomials, fixed-rule quadrature and
//! central finite-difference stencils.

pub(crate) mod hermite;
mod quadrature;
mod stencil;

pub use hermite::{hermite, hermite_roots, HermiteEval, MAX_HERMITE_ORDER};
pub use quadrature::{integrate_1d, integrate_2d, Interval, QuadratureRule, QuadratureScheme, QuadratureSpec};
pub use stencil::{first_derivative, second_derivative, AccuracyOrder, StencilSpec, DEFAULT_STEP_WAVELENGTHS};

/// Envelope checks step by this fraction of the local envelope scale
/// (`w(s)` transversely, `L_R` longitudinally).
pub const ENVELOPE_STEP_FRACTION: f64 = 1e-3;
