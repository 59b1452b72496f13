use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::BeamParams;
use crate::error::{BeamError, Result};

/// The `(m, n)` Hermite-Gaussian mode pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    pub m: usize,
    pub n: usize,
}

/// Library guard on `m + n`.
pub const MAX_MODE_ORDER: usize = 20;

impl ModeIndex {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m + n > MAX_MODE_ORDER {
            return Err(BeamError::UnsupportedMode {
                m,
                n,
                max: MAX_MODE_ORDER,
            });
        }
        Ok(Self { m, n })
    }

    pub const GAUSSIAN: ModeIndex = ModeIndex { m: 0, n: 0 };

    pub fn order(&self) -> usize {
        self.m + self.n
    }

    /// `1 + m + n`, the Gouy phase multiplier.
    pub fn gouy_factor(&self) -> f64 {
        (1 + self.m + self.n) as f64
    }

    pub fn transposed(&self) -> Self {
        Self {
            m: self.n,
            n: self.m,
        }
    }

    /// All modes with `m, n <= max_each`, row-major in `m`.
    pub fn square(max_each: usize) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        for m in 0..=max_each {
            for n in 0..=max_each {
                out.push(Self::new(m, n)?);
            }
        }
        Ok(out)
    }

    /// All modes with `m + n <= max_order`.
    pub fn up_to_order(max_order: usize) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        for total in 0..=max_order {
            for m in 0..=total {
                out.push(Self::new(m, total - m)?);
            }
        }
        Ok(out)
    }
}

impl std::fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// Cartesian space-time coordinate with spherical accessors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimePoint {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub t: f64,
}

impl SpaceTimePoint {
    pub fn new(x1: f64, x2: f64, x3: f64, t: f64) -> Self {
        Self { x1, x2, x3, t }
    }

    pub fn from_spherical(r: f64, theta: f64, phi: f64, t: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self {
            x1: r * st * cp,
            x2: r * st * sp,
            x3: r * ct,
            t,
        }
    }

    pub fn rho(&self) -> f64 {
        self.x1.hypot(self.x2)
    }

    pub fn rho_squared(&self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2
    }

    pub fn r(&self) -> f64 {
        self.rho().hypot(self.x3)
    }

    /// Inclination from the `+x3` axis, in `[0, pi]`.
    pub fn theta(&self) -> f64 {
        self.rho().atan2(self.x3)
    }

    /// Azimuth in `(-pi, pi]`.
    pub fn phi(&self) -> f64 {
        let phi = self.x2.atan2(self.x1);
        if phi <= -PI {
            PI
        } else {
            phi
        }
    }

    /// Bateman-Hillion longitudinal variable `(x3 + v t) / 2`.
    pub fn s(&self, params: &BeamParams) -> f64 {
        0.5 * (self.x3 + params.v * self.t)
    }

    pub fn with_t(self, t: f64) -> Self {
        Self { t, ..self }
    }

    pub fn displaced(&self, d: &Displacement) -> Self {
        Self {
            x1: self.x1 + d.x1,
            x2: self.x2 + d.x2,
            x3: self.x3 + d.x3,
            t: self.t + d.t,
        }
    }
}

/// Small offset from a base point. Fields evaluate `base + d` with the
/// offset kept separate so carrier phases keep full relative precision.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Displacement {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub t: f64,
}

impl Displacement {
    pub const ZERO: Displacement = Displacement {
        x1: 0.0,
        x2: 0.0,
        x3: 0.0,
        t: 0.0,
    };

    pub fn along(axis: Axis, h: f64) -> Self {
        let mut d = Self::ZERO;
        match axis {
            Axis::X1 => d.x1 = h,
            Axis::X2 => d.x2 = h,
            Axis::X3 => d.x3 = h,
            Axis::T => d.t = h,
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X1,
    X2,
    X3,
    T,
}

impl Axis {
    pub const ALL: [Axis; 4] = [Axis::X1, Axis::X2, Axis::X3, Axis::T];
}

/// A complex field value `Psi` or envelope `Phi`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexAmplitude {
    pub re: f64,
    pub im: f64,
}

impl ComplexAmplitude {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn modulus_squared(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    /// Principal phase in `(-pi, pi]`.
    pub fn phase(&self) -> f64 {
        self.im.atan2(self.re)
    }
}

impl From<Complex64> for ComplexAmplitude {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexAmplitude> for Complex64 {
    fn from(a: ComplexAmplitude) -> Self {
        a.value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mode_guard() {
        assert!(ModeIndex::new(10, 10).is_ok());
        assert!(ModeIndex::new(11, 10).is_err());
        assert_eq!(ModeIndex::up_to_order(6).unwrap().len(), 28);
        assert_eq!(ModeIndex::square(2).unwrap().len(), 9);
    }

    #[test]
    fn azimuth_range() {
        let p = SpaceTimePoint::new(-1.0, -0.0, 0.0, 0.0);
        assert_eq!(p.phi(), PI);
        assert_eq!(SpaceTimePoint::new(0.0, 0.0, 1.0, 0.0).theta(), 0.0);
        assert_eq!(SpaceTimePoint::new(0.0, 0.0, -1.0, 0.0).theta(), PI);
    }

    #[test]
    fn s_combines_x3_and_time() {
        let params = BeamParams::new(1.0, 2.0, 1.0).unwrap();
        assert_eq!(SpaceTimePoint::new(0.0, 0.0, 3.0, 0.5).s(&params), 2.0);
    }

    #[test]
    fn amplitude_accessors() {
        let a = ComplexAmplitude::new(3.0, -4.0);
        assert_eq!(a.modulus(), 5.0);
        assert_eq!(a.modulus_squared(), 25.0);
        assert!((a.phase() + (4.0f64 / 3.0).atan()).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn spherical_view_is_consistent(
            x1 in -10.0f64..10.0, x2 in -10.0f64..10.0, x3 in -10.0f64..10.0,
        ) {
            let p = SpaceTimePoint::new(x1, x2, x3, 0.0);
            let (r, th, ph) = (p.r(), p.theta(), p.phi());
            prop_assert!(r >= x3.abs());
            prop_assert!((0.0..=PI).contains(&th));
            prop_assert!(ph > -PI && ph <= PI);
            let tol = 1e-12 * r.max(1.0);
            prop_assert!((p.rho() - r * th.sin()).abs() <= tol);
            prop_assert!((x3 - r * th.cos()).abs() <= tol);
            let q = SpaceTimePoint::from_spherical(r, th, ph, 0.0);
            prop_assert!((q.x1 - x1).abs() <= tol && (q.x2 - x2).abs() <= tol);
        }
    }
}
