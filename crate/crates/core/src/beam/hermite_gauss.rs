use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::carrier;
use super::{
    BeamParams, ComplexAmplitude, Displacement, ModeIndex, ReducedEnvelope, SpaceTimePoint,
    WaveField,
};
use crate::error::{BeamError, Result};
use crate::kernel::hermite;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `w(s) = w0 sqrt(1 + (s / L_R)^2)`.
pub fn spot_radius(params: &BeamParams, s: f64) -> f64 {
    params.w0 * (s / params.rayleigh_range()).hypot(1.0)
}

/// `g_mn(s) = (1 + m + n) atan(s / L_R)`, principal branch.
pub fn gouy_phase(params: &BeamParams, mode: ModeIndex, s: f64) -> f64 {
    mode.gouy_factor() * (s / params.rayleigh_range()).atan()
}

/// Closed-form transverse normalization
/// `C_mn = sqrt(2 / (pi 2^(m+n) m! n!)) / w0`.
pub fn closed_form_normalization(params: &BeamParams, mode: ModeIndex) -> f64 {
    let fact = |k: usize| (1..=k).fold(1.0_f64, |acc, i| acc * i as f64);
    let denom = PI * 2f64.powi(mode.order() as i32) * fact(mode.m) * fact(mode.n);
    (2.0 / denom).sqrt() / params.w0
}

/// Per-mode normalization constants.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct NormalizationTable {
    entries: BTreeMap<ModeIndex, f64>,
}

impl NormalizationTable {
    pub fn closed_form(params: &BeamParams, modes: &[ModeIndex]) -> Self {
        let mut entries = BTreeMap::new();
        for &mode in modes {
            entries.insert(mode, closed_form_normalization(params, mode));
            entries.insert(mode.transposed(), closed_form_normalization(params, mode.transposed()));
        }
        Self { entries }
    }

    /// Table from explicitly supplied constants. Each must be positive and
    /// the table must stay symmetric under `m <-> n`.
    pub fn from_entries(entries: impl IntoIterator<Item = (ModeIndex, f64)>) -> Result<Self> {
        let entries: BTreeMap<_, _> = entries.into_iter().collect();
        for (mode, c) in &entries {
            if !(*c > 0.0 && c.is_finite()) {
                return Err(BeamError::InvalidParameter {
                    name: "C_mn",
                    reason: format!("constant for mode {mode} must be positive, got {c}"),
                });
            }
            if let Some(ct) = entries.get(&mode.transposed()) {
                if (ct - c).abs() > 1e-9 * c {
                    return Err(BeamError::InvalidParameter {
                        name: "C_mn",
                        reason: format!("asymmetric constants for {mode}: {c} vs {ct}"),
                    });
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, mode: ModeIndex) -> Option<f64> {
        self.entries.get(&mode).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ModeIndex, f64)> + '_ {
        self.entries.iter().map(|(m, c)| (*m, *c))
    }
}

/// One normalized member of the exact Hermite-Gaussian family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermiteGaussMode {
    pub params: BeamParams,
    pub mode: ModeIndex,
    /// Normalization constant `C_mn`.
    pub c_mn: f64,
}

impl HermiteGaussMode {
    /// Mode with the closed-form normalization constant.
    pub fn normalized(params: BeamParams, mode: ModeIndex) -> Self {
        Self {
            params,
            mode,
            c_mn: closed_form_normalization(&params, mode),
        }
    }

    pub fn with_constant(params: BeamParams, mode: ModeIndex, c_mn: f64) -> Self {
        Self { params, mode, c_mn }
    }

    pub fn from_table(params: BeamParams, mode: ModeIndex, table: &NormalizationTable) -> Result<Self> {
        let c_mn = table.get(mode).ok_or_else(|| BeamError::InvalidParameter {
            name: "C_mn",
            reason: format!("no normalization constant for mode {mode}"),
        })?;
        Ok(Self::with_constant(params, mode, c_mn))
    }

    /// Envelope `Phi_mn(x1, x2, s)`.
    pub(crate) fn phi(&self, x1: f64, x2: f64, s: f64) -> Complex64 {
        let p = &self.params;
        let lr = p.rayleigh_range();
        let w = spot_radius(p, s);
        let hm = hermite::hermite_unchecked(self.mode.m, std::f64::consts::SQRT_2 * x1 / w);
        let hn = hermite::hermite_unchecked(self.mode.n, std::f64::consts::SQRT_2 * x2 / w);
        let rho2 = x1 * x1 + x2 * x2;
        let q = Complex64::new(s, -lr);
        let exponent = I * p.k * rho2 / (2.0 * q) - I * gouy_phase(p, self.mode, s);
        (self.c_mn * p.w0 / w * hm * hn) * exponent.exp()
    }

    pub fn envelope_phi(&self, x1: f64, x2: f64, s: f64) -> ComplexAmplitude {
        self.phi(x1, x2, s).into()
    }

    /// Exact solution `Phi_mn(x1, x2, s) exp[i(k x3 - omega t)]` with
    /// `s = (x3 + v t) / 2`.
    pub fn exact_psi(&self, p: &SpaceTimePoint) -> ComplexAmplitude {
        ExactPsi(*self).eval(p).into()
    }

    /// Paraxial Hermite-Gaussian beam: the same envelope at `s = x3`.
    pub fn paraxial_psi(&self, p: &SpaceTimePoint) -> ComplexAmplitude {
        ParaxialPsi(*self).eval(p).into()
    }

    /// Paraxial-Schrodinger value, defined only on `x3 = v t`
    /// (within `tolerance * L_R`), where it coincides with the paraxial beam.
    pub fn paraxial_schrodinger_psi(&self, p: &SpaceTimePoint, tolerance: f64) -> Result<ComplexAmplitude> {
        let violation = (p.x3 - self.params.v * p.t).abs();
        let allowed = tolerance * self.params.rayleigh_range();
        if violation > allowed {
            return Err(BeamError::ConstraintViolation {
                violation,
                tolerance: allowed,
            });
        }
        Ok(self.paraxial_psi(p))
    }
}

/// Exact space-time field of one mode.
#[derive(Debug, Clone, Copy)]
pub struct ExactPsi(pub HermiteGaussMode);

impl WaveField for ExactPsi {
    fn eval_displaced(&self, b: &SpaceTimePoint, d: &Displacement) -> Complex64 {
        let p = &self.0.params;
        let s = b.s(p) + 0.5 * (d.x3 + p.v * d.t);
        let env = self.0.phi(b.x1 + d.x1, b.x2 + d.x2, s);
        env * carrier(p.k * b.x3 - p.omega() * b.t, p.k * d.x3 - p.omega() * d.t)
    }
}

/// Paraxial space-time field of one mode (envelope depends on `x3` only).
#[derive(Debug, Clone, Copy)]
pub struct ParaxialPsi(pub HermiteGaussMode);

impl WaveField for ParaxialPsi {
    fn eval_displaced(&self, b: &SpaceTimePoint, d: &Displacement) -> Complex64 {
        let p = &self.0.params;
        let env = self.0.phi(b.x1 + d.x1, b.x2 + d.x2, b.x3 + d.x3);
        env * carrier(p.k * b.x3 - p.omega() * b.t, p.k * d.x3 - p.omega() * d.t)
    }
}

/// The exact envelope viewed as a function of `(x1, x2, x3, t)`.
#[derive(Debug, Clone, Copy)]
pub struct ExactEnvelope(pub HermiteGaussMode);

impl WaveField for ExactEnvelope {
    fn eval_displaced(&self, b: &SpaceTimePoint, d: &Displacement) -> Complex64 {
        let p = &self.0.params;
        let s = b.s(p) + 0.5 * (d.x3 + p.v * d.t);
        self.0.phi(b.x1 + d.x1, b.x2 + d.x2, s)
    }
}

/// The paraxial envelope as a function of `(x1, x2, x3, t)`; it ignores `t`.
#[derive(Debug, Clone, Copy)]
pub struct ParaxialEnvelope(pub HermiteGaussMode);

impl WaveField for ParaxialEnvelope {
    fn eval_displaced(&self, b: &SpaceTimePoint, d: &Displacement) -> Complex64 {
        self.0.phi(b.x1 + d.x1, b.x2 + d.x2, b.x3 + d.x3)
    }
}

impl ReducedEnvelope for HermiteGaussMode {
    fn eval_reduced(&self, x1: f64, x2: f64, s: f64, d: [f64; 3]) -> Complex64 {
        self.phi(x1 + d[0], x2 + d[1], s + d[2])
    }
}

/// Envelope whose Gouy factor alone uses a perturbed waist. Exists to show
/// the reduced-equation residual detects a wrong Gouy term.
#[derive(Debug, Clone, Copy)]
pub struct GouyMutant {
    pub base: HermiteGaussMode,
    /// Multiplier applied to `w0` inside the Gouy phase only.
    pub waist_factor: f64,
}

impl ReducedEnvelope for GouyMutant {
    fn eval_reduced(&self, x1: f64, x2: f64, s: f64, d: [f64; 3]) -> Complex64 {
        let s = s + d[2];
        let true_gouy = gouy_phase(&self.base.params, self.base.mode, s);
        let mut perturbed = self.base.params;
        perturbed.w0 *= self.waist_factor;
        let wrong_gouy = gouy_phase(&perturbed, self.base.mode, s);
        self.base.phi(x1 + d[0], x2 + d[1], s) * Complex64::from_polar(1.0, true_gouy - wrong_gouy)
    }
}

/// The Gaussian exact solution written in its literal closed form,
/// `C00 L_R / (L_R + i s) exp(i k rho^2 / (x3 + v t - 2 i L_R)) exp[i(k x3 - omega t)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatemanGaussian {
    pub params: BeamParams,
    pub c00: f64,
}

impl BatemanGaussian {
    pub fn normalized(params: BeamParams) -> Self {
        Self {
            params,
            c00: closed_form_normalization(&params, ModeIndex::GAUSSIAN),
        }
    }

    pub fn psi(&self, p: &SpaceTimePoint) -> ComplexAmplitude {
        self.eval(p).into()
    }
}

impl WaveField for BatemanGaussian {
    fn eval_displaced(&self, b: &SpaceTimePoint, d: &Displacement) -> Complex64 {
        let p = &self.params;
        let lr = p.rayleigh_range();
        let two_s = (b.x3 + p.v * b.t) + (d.x3 + p.v * d.t);
        let (x1, x2) = (b.x1 + d.x1, b.x2 + d.x2);
        let rho2 = x1 * x1 + x2 * x2;
        let prefactor = self.c00 * lr / Complex64::new(lr, 0.5 * two_s);
        let gauss = (I * p.k * rho2 / Complex64::new(two_s, -2.0 * lr)).exp();
        prefactor * gauss * carrier(p.k * b.x3 - p.omega() * b.t, p.k * d.x3 - p.omega() * d.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn params() -> BeamParams {
        BeamParams::new(50.0, 1.0, 1.0).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn spot_radius_values() {
        let p = params();
        let lr = p.rayleigh_range();
        assert_eq!(spot_radius(&p, 0.0), 1.0);
        assert!((spot_radius(&p, lr) - 2f64.sqrt()).abs() < 1e-15);
        assert!((spot_radius(&p, 10.0 * lr) - 101f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn gouy_values() {
        let p = params();
        let lr = p.rayleigh_range();
        assert_eq!(gouy_phase(&p, ModeIndex::new(3, 1).unwrap(), 0.0), 0.0);
        assert!((gouy_phase(&p, ModeIndex::new(2, 1).unwrap(), lr) - PI).abs() < 1e-15);
        assert!((gouy_phase(&p, ModeIndex::GAUSSIAN, 1e12 * lr) - FRAC_PI_2).abs() < 1e-11);
    }

    #[test]
    fn envelope_at_origin_is_c00_w0() {
        let p = BeamParams::new(10.0, 1.0, 0.7).unwrap();
        let m = HermiteGaussMode::normalized(p, ModeIndex::GAUSSIAN);
        let v = m.envelope_phi(0.0, 0.0, 0.0);
        // w(0) = w0, so the prefactor C w0 / w(0) is just C
        assert!((v.re - m.c_mn).abs() < 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn odd_mode_vanishes_on_its_axis() {
        let m = HermiteGaussMode::normalized(params(), ModeIndex::new(1, 0).unwrap());
        for (x2, s) in [(0.3, 0.0), (-1.0, 400.0), (2.0, -3000.0)] {
            assert_eq!(m.envelope_phi(0.0, x2, s).modulus(), 0.0);
        }
    }

    #[test]
    fn envelope_term_by_term() {
        // Independent assembly of the Gaussian mode at x1 = w0/sqrt2, s = L_R:
        // w = sqrt2 w0, prefactor C w0 / w = C / sqrt2, r^2 = w0^2 / 2,
        // i k rho^2 / (2 (L - i L)) = i k w0^2 (1 + i) / (8 L) = (i - 1) / 4,
        // Gouy phase atan(1) = pi/4.
        let p = params();
        let m = HermiteGaussMode::normalized(p, ModeIndex::GAUSSIAN);
        let c = (2.0 / PI).sqrt();
        let expected = c * FRAC_1_SQRT_2
            * (-0.25f64).exp()
            * Complex64::from_polar(1.0, 0.25 - FRAC_PI_4);
        let got = m.envelope_phi(FRAC_1_SQRT_2, 0.0, p.rayleigh_range()).value();
        assert!(rel(got, expected) < 1e-14, "{got} vs {expected}");
    }

    #[test]
    fn exact_psi_basic_cases() {
        let p = params();
        let m = HermiteGaussMode::normalized(p, ModeIndex::GAUSSIAN);
        let origin = SpaceTimePoint::new(0.0, 0.0, 0.0, 0.0);
        assert!((m.exact_psi(&origin).re - m.c_mn).abs() < 1e-15);
        // On x3 = v t the modulus equals the paraxial envelope modulus.
        let q = SpaceTimePoint::new(0.4, -0.2, 900.0, 900.0);
        assert!((m.exact_psi(&q).modulus() - m.envelope_phi(0.4, -0.2, 900.0).modulus()).abs() < 1e-15);
    }

    #[test]
    fn modulus_depends_on_s_only() {
        let p = params();
        let m = HermiteGaussMode::normalized(p, ModeIndex::new(2, 1).unwrap());
        let a = SpaceTimePoint::new(0.5, 0.8, 300.0, -100.0);
        for delta in [-700.0, 1.5, 2000.0] {
            let b = SpaceTimePoint::new(0.5, 0.8, 300.0 + delta, -100.0 - delta / p.v);
            let (ma, mb) = (m.exact_psi(&a).modulus(), m.exact_psi(&b).modulus());
            assert!((ma - mb).abs() <= 1e-12 * ma);
        }
    }

    #[test]
    fn paraxial_on_axis_gouy_term() {
        let p = params();
        let lr = p.rayleigh_range();
        let m = HermiteGaussMode::normalized(p, ModeIndex::GAUSSIAN);
        assert!((m.envelope_phi(0.0, 0.0, lr).phase() + FRAC_PI_4).abs() < 1e-15);
        let on = SpaceTimePoint::new(0.0, 0.0, lr, lr / p.v);
        let sch = m.paraxial_schrodinger_psi(&on, 1e-12).unwrap();
        assert_eq!(sch, m.paraxial_psi(&on));
        assert!(m
            .paraxial_schrodinger_psi(&SpaceTimePoint::new(0.0, 0.0, lr, 0.0), 1e-12)
            .is_err());
    }

    #[test]
    fn paraxial_differs_off_constraint() {
        let p = params();
        let m = HermiteGaussMode::normalized(p, ModeIndex::GAUSSIAN);
        let pt = SpaceTimePoint::new(0.6, 0.3, 1000.0, -500.0);
        let exact = m.exact_psi(&pt).modulus();
        let parax = m.paraxial_psi(&pt).modulus();
        // s = 250 vs x3 = 1000 evaluated independently:
        let w_s = spot_radius(&p, 250.0);
        let w_x = spot_radius(&p, 1000.0);
        let expect = |w: f64| m.c_mn / w * (-(0.45) / (w * w)).exp();
        assert!((exact - expect(w_s)).abs() < 1e-14);
        assert!((parax - expect(w_x)).abs() < 1e-14);
        assert!((exact - parax).abs() > 1e-2);
    }

    #[test]
    fn bateman_gaussian_matches_exact_mode() {
        let p = params();
        let g = BatemanGaussian::normalized(p);
        let m = HermiteGaussMode::normalized(p, ModeIndex::GAUSSIAN);
        let origin = SpaceTimePoint::new(0.0, 0.0, 0.0, 0.0);
        assert!((g.psi(&origin).re - g.c00).abs() < 1e-15);
        let axis = SpaceTimePoint::new(0.0, 0.0, 700.0, 300.0);
        let s = axis.s(&p);
        let lr = p.rayleigh_range();
        assert!((g.psi(&axis).modulus() - g.c00 * lr / lr.hypot(s)).abs() < 1e-15);
        let pt = SpaceTimePoint::new(0.9, -1.1, -2000.0, 1500.0);
        assert!(rel(g.eval(&pt), m.exact_psi(&pt).value()) < 1e-12);
    }

    #[test]
    fn normalization_table() {
        let p = params();
        let t = NormalizationTable::closed_form(&p, &[ModeIndex::new(2, 1).unwrap()]);
        assert_eq!(t.get(ModeIndex::new(2, 1).unwrap()), t.get(ModeIndex::new(1, 2).unwrap()));
        assert!((closed_form_normalization(&p, ModeIndex::GAUSSIAN) - (2.0 / PI).sqrt()).abs() < 1e-15);
        let p2 = BeamParams::new(50.0, 1.0, 2.0).unwrap();
        let mode = ModeIndex::new(1, 3).unwrap();
        assert!((closed_form_normalization(&p2, mode) - closed_form_normalization(&p, mode) / 2.0).abs() < 1e-16);
        assert!(NormalizationTable::from_entries([(ModeIndex::GAUSSIAN, -1.0)]).is_err());
        let asym = [
            (ModeIndex::new(1, 0).unwrap(), 1.0),
            (ModeIndex::new(0, 1).unwrap(), 2.0),
        ];
        assert!(NormalizationTable::from_entries(asym).is_err());
    }

    #[test]
    fn waist_phase_front_is_flat() {
        let m = HermiteGaussMode::normalized(params(), ModeIndex::GAUSSIAN);
        let ref_phase = m.envelope_phi(0.0, 0.0, 0.0).phase();
        for (x1, x2) in [(0.5, 0.0), (1.3, -0.7), (-2.0, 2.0)] {
            assert!((m.envelope_phi(x1, x2, 0.0).phase() - ref_phase).abs() < 1e-12);
        }
    }
}
