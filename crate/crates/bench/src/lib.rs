//! Fixtures shared by the criterion benchmarks.

use bateman_core::verifier::sampling;
use bateman_core::{BeamParams, SpaceTimePoint};

/// The reference beam used throughout: `k w0 = 50`.
pub fn reference_beam() -> BeamParams {
    BeamParams::natural(50.0).expect("positive parameters")
}

pub fn sample_points(count: usize) -> Vec<SpaceTimePoint> {
    sampling::beam_region(&reference_beam(), count, 3.0, 2.0, 7)
}
