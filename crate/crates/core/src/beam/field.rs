use num_complex::Complex64;

use super::{Displacement, SpaceTimePoint};

/// A scalar field over space-time that can be probed at small offsets
/// from a base point, as finite-difference stencils do.
pub trait WaveField: Sync {
    fn eval_displaced(&self, base: &SpaceTimePoint, d: &Displacement) -> Complex64;

    fn eval(&self, p: &SpaceTimePoint) -> Complex64 {
        self.eval_displaced(p, &Displacement::ZERO)
    }
}

impl<F: WaveField + ?Sized> WaveField for &F {
    fn eval_displaced(&self, base: &SpaceTimePoint, d: &Displacement) -> Complex64 {
        (**self).eval_displaced(base, d)
    }
}

/// An envelope `Phi(x1, x2, s)` of the reduced transverse equation.
pub trait ReducedEnvelope: Sync {
    /// Evaluate at `(x1 + d[0], x2 + d[1], s + d[2])`.
    fn eval_reduced(&self, x1: f64, x2: f64, s: f64, d: [f64; 3]) -> Complex64;
}

/// `exp(i phase)` with the phase split into a base part and an offset part.
#[inline]
pub(crate) fn carrier(base_phase: f64, offset_phase: f64) -> Complex64 {
    let c = Complex64::from_polar(1.0, base_phase);
    if offset_phase == 0.0 {
        c
    } else {
        c * Complex64::from_polar(1.0, offset_phase)
    }
}
