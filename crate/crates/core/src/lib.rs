//! Exact Bateman-Hillion Hermite-Gaussian beams and their verification.
//!
//! The [`beam`] module evaluates the exact mode family, in which the
//! longitudinal coordinate of a paraxial envelope is replaced by
//! `s = (x3 + v t) / 2`, together with the paraxial modes and the
//! complex-source Gaussian. [`constraint`] implements the space-time
//! constraints and the delta-reduced densities, and [`verifier`] checks all
//! of it numerically. [`grid`] holds the run configuration and the gridded
//! output shared with the command-line tool.

pub mod beam;
pub mod constraint;
pub mod error;
pub mod grid;
pub mod kernel;
pub mod verifier;

pub use beam::{
    AlternateGaussian, BatemanGaussian, BeamParams, ComplexAmplitude, HermiteGaussMode, ModeIndex,
    NormalizationTable, SpaceTimePoint, WaveField,
};
pub use constraint::{Constraint, ConstraintKind, DensityConvention};
pub use error::{BeamError, Result};
pub use grid::{FieldGrid, RunConfig};
