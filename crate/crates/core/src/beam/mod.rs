//! Closed-form beam solutions: the exact Hermite-Gaussian family built on
//! the Bateman-Hillion variable `s = (x3 + v t) / 2`, its paraxial
//! counterpart, the literal Gaussian form and the complex-source spherical
//! wave.

mod alternate;
mod field;
mod hermite_gauss;
mod params;
mod point;

pub use alternate::{AlternateGaussian, AlternateValue, BRANCH_CUT_GUARD};
pub use field::{ReducedEnvelope, WaveField};
pub use hermite_gauss::{
    closed_form_normalization, gouy_phase, spot_radius, BatemanGaussian, ExactEnvelope, ExactPsi,
    GouyMutant, HermiteGaussMode, NormalizationTable, ParaxialEnvelope, ParaxialPsi,
};
pub use params::BeamParams;
pub use point::{Axis, ComplexAmplitude, Displacement, ModeIndex, SpaceTimePoint, MAX_MODE_ORDER};
