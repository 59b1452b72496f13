use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::carrier;
use super::{BeamParams, ComplexAmplitude, Displacement, SpaceTimePoint, WaveField};
use crate::error::{BeamError, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Points closer than this fraction of `L_R` to the `x3 = 0, rho < L_R`
/// disc are flagged as near the branch cut of `R`.
pub const BRANCH_CUT_GUARD: f64 = 1e-6;

/// Largest real exponent evaluated before the overflow guard trips.
const MAX_EXPONENT: f64 = 700.0;

/// Complex-source spherical wave `D00 L_R / R exp[i(k R - omega t)]` with
/// `R = sqrt(x1^2 + x2^2 + (x3 - i L_R)^2)`.
///
/// `D00` is stored as `coefficient * exp(log_scale)` because the constant
/// matching a unit-normalized Gaussian carries `exp(-k L_R)`, far below
/// the double-precision range for realistic beams.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlternateGaussian {
    pub params: BeamParams,
    pub coefficient: Complex64,
    pub log_scale: f64,
}

/// Value of [`AlternateGaussian`] plus its branch-cut proximity flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlternateValue {
    pub amplitude: ComplexAmplitude,
    pub near_branch_cut: bool,
}

impl AlternateGaussian {
    pub fn new(params: BeamParams, d00: Complex64) -> Self {
        Self {
            params,
            coefficient: d00,
            log_scale: 0.0,
        }
    }

    /// Constant chosen so that the paraxial limit reproduces the Gaussian
    /// mode with constant `c00`: `c00 = i exp(k L_R) D00`.
    pub fn matched_to(params: BeamParams, c00: f64) -> Self {
        Self {
            params,
            coefficient: -I * c00,
            log_scale: -params.k * params.rayleigh_range(),
        }
    }

    /// `R` on the branch with `Re R >= 0`, which tends to `x3 - i L_R` on
    /// the forward axis. Also returns `R - sigma (x3 - i L_R)` computed
    /// without cancellation, and `sigma = sign(x3)`.
    pub fn complex_distance(&self, x1: f64, x2: f64, x3: f64) -> (Complex64, Complex64, f64) {
        let lr = self.params.rayleigh_range();
        let rho2 = x1 * x1 + x2 * x2;
        if x3 == 0.0 {
            // The x3 -> 0+ limit of the branch below.
            let disc = rho2 - lr * lr;
            let r = if disc >= 0.0 {
                Complex64::new(disc.sqrt(), 0.0)
            } else {
                Complex64::new(0.0, -(-disc).sqrt())
            };
            return (r, r - Complex64::new(0.0, -lr), 1.0);
        }
        let sigma = x3.signum();
        let q = Complex64::new(x3, -lr);
        let u = rho2 / (q * q);
        let root = (1.0 + u).sqrt();
        let delta = sigma * q * (u / (root + 1.0));
        (sigma * q * root, delta, sigma)
    }

    pub fn near_branch_cut(&self, p: &SpaceTimePoint) -> bool {
        let lr = self.params.rayleigh_range();
        p.x3.abs() <= BRANCH_CUT_GUARD * lr && p.rho() < lr * (1.0 + BRANCH_CUT_GUARD)
    }

    pub fn try_eval_displaced(&self, b: &SpaceTimePoint, d: &Displacement) -> Result<Complex64> {
        let p = &self.params;
        let (k, lr) = (p.k, p.rayleigh_range());
        let (x1, x2, x3) = (b.x1 + d.x1, b.x2 + d.x2, b.x3 + d.x3);
        let (r, delta, sigma) = self.complex_distance(x1, x2, x3);
        // i k R = i sigma k x3 + sigma k L_R + i k delta; the linear phase is
        // split between base and offset to keep it exact across stencils.
        let exponent = self.log_scale + sigma * k * lr + I * k * delta;
        if exponent.re > MAX_EXPONENT {
            return Err(BeamError::Overflow(format!(
                "alternate solution exponent {} at ({x1}, {x2}, {x3})",
                exponent.re
            )));
        }
        let phase = carrier(sigma * k * b.x3 - p.omega() * b.t, sigma * k * d.x3 - p.omega() * d.t);
        Ok(self.coefficient * lr / r * exponent.exp() * phase)
    }

    pub fn psi(&self, p: &SpaceTimePoint) -> Result<AlternateValue> {
        let v = self.try_eval_displaced(p, &Displacement::ZERO)?;
        Ok(AlternateValue {
            amplitude: v.into(),
            near_branch_cut: self.near_branch_cut(p),
        })
    }
}

impl WaveField for AlternateGaussian {
    /// Overflow maps to `inf + i inf`.
    fn eval_displaced(&self, b: &SpaceTimePoint, d: &Displacement) -> Complex64 {
        self.try_eval_displaced(b, d)
            .unwrap_or(Complex64::new(f64::INFINITY, f64::INFINITY))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> BeamParams {
        BeamParams::new(50.0, 1.0, 1.0).unwrap()
    }

    /// Direct evaluation with an unscaled constant, for beams where
    /// `exp(k L_R)` stays representable.
    fn literal(p: &BeamParams, d00: Complex64, x: &SpaceTimePoint) -> Complex64 {
        let lr = p.rayleigh_range();
        let q = Complex64::new(x.x3, -lr);
        let r2 = x.rho_squared() + q * q;
        let mut r = r2.sqrt();
        if x.x3 > 0.0 && (r - q).norm() > (r + q).norm() {
            r = -r;
        }
        d00 * lr / r * (I * (p.k * r - p.omega() * x.t)).exp()
    }

    #[test]
    fn matches_literal_formula_for_small_beam() {
        let p = BeamParams::new(4.0, 1.5, 1.2).unwrap();
        let d00 = Complex64::new(0.3, -0.2);
        let alt = AlternateGaussian::new(p, d00);
        for x in [
            SpaceTimePoint::new(0.3, -0.4, 2.0, 0.7),
            SpaceTimePoint::new(1.5, 2.5, 0.4, -3.0),
            SpaceTimePoint::new(-4.0, 0.1, 7.0, 2.0),
        ] {
            let a = alt.psi(&x).unwrap().amplitude.value();
            let b = literal(&p, d00, &x);
            assert!((a - b).norm() < 1e-12 * b.norm(), "{a} vs {b}");
        }
    }

    #[test]
    fn on_axis_collapse() {
        let p = BeamParams::new(3.0, 1.0, 1.0).unwrap();
        let lr = p.rayleigh_range();
        let d00 = Complex64::new(1.0, 0.0);
        let alt = AlternateGaussian::new(p, d00);
        let (x3, t) = (2.5, 0.8);
        let (r, _, _) = alt.complex_distance(0.0, 0.0, x3);
        assert_eq!(r, Complex64::new(x3, -lr));
        let expected = d00 * lr * (I * (p.k * x3 - p.omega() * t)).exp() * (p.k * lr).exp()
            / Complex64::new(x3, -lr);
        let got = alt.psi(&SpaceTimePoint::new(0.0, 0.0, x3, t)).unwrap().amplitude.value();
        assert!((got - expected).norm() < 1e-13 * expected.norm());
    }

    #[test]
    fn principal_branch_has_non_negative_real_part() {
        let alt = AlternateGaussian::new(params(), Complex64::new(1.0, 0.0));
        let lr = params().rayleigh_range();
        for &(x1, x3) in &[(0.0, 5.0), (3000.0, 1.0), (10.0, -200.0), (2.0 * lr, 0.0), (0.5 * lr, 0.0)] {
            let (r, _, _) = alt.complex_distance(x1, 0.0, x3);
            assert!(r.re >= 0.0, "{r}");
            let r2 = Complex64::new(x1 * x1, 0.0) + Complex64::new(x3, -lr).powi(2);
            assert!((r * r - r2).norm() <= 1e-12 * r2.norm());
        }
    }

    #[test]
    fn branch_cut_flag() {
        let p = params();
        let lr = p.rayleigh_range();
        let alt = AlternateGaussian::matched_to(p, 1.0);
        assert!(alt.psi(&SpaceTimePoint::new(0.5 * lr, 0.0, 0.0, 0.0)).unwrap().near_branch_cut);
        assert!(!alt.psi(&SpaceTimePoint::new(0.5 * lr, 0.0, 1.0, 0.0)).unwrap().near_branch_cut);
        assert!(!alt.psi(&SpaceTimePoint::new(2.0 * lr, 0.0, 0.0, 0.0)).unwrap().near_branch_cut);
    }

    #[test]
    fn continuous_along_forward_paths() {
        let p = params();
        let lr = p.rayleigh_range();
        let alt = AlternateGaussian::matched_to(p, 1.0);
        // Sweep transversely at a fixed small x3 > 0 across rho = L_R, where
        // a wrong branch choice would flip the sign of R.
        let n = 20_000;
        let mut prev: Option<Complex64> = None;
        for i in 0..=n {
            let x1 = 2.0 * lr * i as f64 / n as f64;
            let (r, _, _) = alt.complex_distance(x1, 0.0, 1e-3 * lr);
            if let Some(q) = prev {
                assert!((r - q).norm() < 2e-2 * lr, "jump at x1 = {x1}");
            }
            prev = Some(r);
        }
    }

    #[test]
    fn overflow_guard() {
        let p = params();
        let alt = AlternateGaussian::new(p, Complex64::new(1.0, 0.0));
        let err = alt.psi(&SpaceTimePoint::new(0.0, 0.0, 10.0, 0.0)).unwrap_err();
        assert!(matches!(err, BeamError::Overflow(_)));
    }
}
