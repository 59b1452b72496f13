//! Independent numerical checks of the closed-form solutions: PDE
//! residuals by finite differences, the `x3 <-> v t` symmetry relations,
//! transverse orthonormality by quadrature, Gouy phase extraction, the
//! comparison with the complex-source solution, and a mollifier oracle for
//! the delta-function reduction.

mod compare;
mod delta;
mod gouy;
mod ortho;
mod residual;
pub mod sampling;
pub mod suite;

pub use compare::{compare_alternate, compare_sweep, CompareReport, ConvergenceReport, MAX_PARAXIALITY};
pub use delta::{mollified_time_integral, mollifier_limit, MollifierEstimate};
pub use gouy::{
    fit_gouy, fit_gouy_auto, fit_gouy_ridge, ridge_argument, symmetric_samples, unwrap_phase, GouyFitReport,
    GouyPath, GouySample,
};
pub use ortho::{
    compute_normalization, numerical_normalization_table, transverse_gram, transverse_quadrature, OrthoReport,
    DEFAULT_TRANSVERSE_NODES, TRUNCATION_RADII,
};
pub use residual::{
    check_symmetry, residual_full_wave, residual_paraxial, residual_reduced, EquationKind, ReducedPoint,
    ResidualReport, SymmetryReport, NODE_SKIP_FRACTION,
};
