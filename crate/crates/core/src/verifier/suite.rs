//! Named verification suites with their pass/fail tolerances, as run by the
//! `verify` command.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::*;
use crate::beam::{
    AlternateGaussian, BatemanGaussian, BeamParams, ExactEnvelope, ExactPsi, GouyMutant, HermiteGaussMode,
    ModeIndex, NormalizationTable, ParaxialEnvelope, ParaxialPsi, SpaceTimePoint, WaveField,
};
use crate::constraint::{self, ConstraintKind, DensityConvention};
use crate::error::{BeamError, Result};
use crate::kernel::StencilSpec;

pub const EXACT_RESIDUAL_TOLERANCE: f64 = 1e-6;
pub const MIN_CONVERGENCE_ORDER: f64 = 3.8;
pub const DISCRIMINATION_RATIO: f64 = 1e3;
pub const SYMMETRY_TOLERANCE: f64 = 1e-7;
pub const MUTANT_MIN_MISMATCH: f64 = 0.1;
pub const GRAM_TOLERANCE: f64 = 1e-9;
pub const C00_TOLERANCE: f64 = 1e-10;
pub const INVERSE_SQUARE_TOLERANCE: f64 = 0.01;
pub const CORRESPONDENCE_SLACK: f64 = 1e-12;
pub const GOUY_TOLERANCE: f64 = 1e-6;
pub const RECOVERY_TOLERANCE: f64 = 1e-12;
pub const ALTERNATE_MIN_ORDER: f64 = 1.8;
pub const DELTA_TOLERANCE: f64 = 1e-6;

/// Step sweep (in units of `1/k`) used to measure the residual's order.
pub const CONVERGENCE_STEPS: [f64; 3] = [0.2, 0.1, 0.05];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteKind {
    Exactness,
    AlternateExactness,
    Discrimination,
    Reduced,
    Symmetry,
    Orthonormality,
    InverseSquare,
    ConstraintCorrespondence,
    Gouy,
    ParaxialRecovery,
    AlternateCorrespondence,
    LiteralGaussian,
    DeltaReduction,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 13] = [
        SuiteKind::Exactness,
        SuiteKind::AlternateExactness,
        SuiteKind::Discrimination,
        SuiteKind::Reduced,
        SuiteKind::Symmetry,
        SuiteKind::Orthonormality,
        SuiteKind::InverseSquare,
        SuiteKind::ConstraintCorrespondence,
        SuiteKind::Gouy,
        SuiteKind::ParaxialRecovery,
        SuiteKind::AlternateCorrespondence,
        SuiteKind::LiteralGaussian,
        SuiteKind::DeltaReduction,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyOptions {
    /// Suites to run; all when absent.
    pub suites: Option<Vec<SuiteKind>>,
    pub seed: u64,
    pub points: usize,
    /// Test hook: replace envelopes with deliberately wrong ones.
    pub mutate_envelope: bool,
    /// Full-wave stencil step in units of `1/k`.
    pub step_wavelengths: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            suites: None,
            seed: 2024,
            points: 200,
            mutate_envelope: false,
            step_wavelengths: crate::kernel::DEFAULT_STEP_WAVELENGTHS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: SuiteKind,
    pub passed: bool,
    pub summary: String,
    pub report: Value,
}

impl SuiteOutcome {
    fn new(suite: SuiteKind, passed: bool, summary: String, report: Value) -> Self {
        Self {
            suite,
            passed,
            summary,
            report,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

pub fn run_all(params: &BeamParams, modes: &[ModeIndex], opts: &VerifyOptions) -> Result<Vec<SuiteOutcome>> {
    if modes.is_empty() {
        return Err(BeamError::InvalidParameter {
            name: "modes",
            reason: "at least one mode is required".into(),
        });
    }
    let kinds = opts.suites.clone().unwrap_or_else(|| SuiteKind::ALL.to_vec());
    kinds.iter().map(|k| run_suite(*k, params, modes, opts)).collect()
}

pub fn run_suite(kind: SuiteKind, params: &BeamParams, modes: &[ModeIndex], opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let stencil = StencilSpec::fourth(opts.step_wavelengths / params.k)?;
    let envelope_stencil = StencilSpec::fourth(crate::kernel::ENVELOPE_STEP_FRACTION)?;
    let seed = opts.seed;
    let n = opts.points.max(1);
    let lr = params.rayleigh_range();
    match kind {
        SuiteKind::Exactness => {
            let points = sampling::beam_region(params, n, 3.0, 2.0, seed);
            let mut worst = 0.0_f64;
            let mut min_order = f64::INFINITY;
            let mut reports = Vec::new();
            for &mode in modes {
                let field = ExactPsi(HermiteGaussMode::normalized(*params, mode));
                let r = residual_full_wave(&field, params, &points, &stencil)?;
                worst = worst.max(r.max_relative_residual);
                let order = convergence_order(&field, params, &points[..points.len().min(20)])?;
                min_order = min_order.min(order);
                reports.push(json!({"mode": mode, "residual": to_value(&r), "order": order}));
            }
            let passed = worst <= EXACT_RESIDUAL_TOLERANCE && min_order >= MIN_CONVERGENCE_ORDER;
            Ok(SuiteOutcome::new(
                kind,
                passed,
                format!("max residual {worst:.3e} (<= {EXACT_RESIDUAL_TOLERANCE:e}), min order {min_order:.2} (>= {MIN_CONVERGENCE_ORDER})"),
                Value::Array(reports),
            ))
        }
        SuiteKind::AlternateExactness => {
            let points = sampling::forward_region(params, n, 0.1, 3.0, 2.0, seed);
            let alt = AlternateGaussian::matched_to(*params, crate::beam::closed_form_normalization(params, ModeIndex::GAUSSIAN));
            let r = residual_full_wave(&alt, params, &points, &stencil)?;
            let passed = r.passes(EXACT_RESIDUAL_TOLERANCE);
            Ok(SuiteOutcome::new(
                kind,
                passed,
                format!("max residual {:.3e} (<= {EXACT_RESIDUAL_TOLERANCE:e})", r.max_relative_residual),
                to_value(&r),
            ))
        }
        SuiteKind::Discrimination => {
            let points = sampling::beam_region(params, n, 3.0, 2.0, seed);
            let mut exact_max = 0.0_f64;
            let mut parax_max = 0.0_f64;
            for &mode in modes {
                let beam = HermiteGaussMode::normalized(*params, mode);
                exact_max = exact_max.max(residual_full_wave(&ExactPsi(beam), params, &points, &stencil)?.max_relative_residual);
                parax_max = parax_max.max(residual_full_wave(&ParaxialPsi(beam), params, &points, &stencil)?.max_relative_residual);
            }
            let ratio = parax_max / exact_max;
            Ok(SuiteOutcome::new(
                kind,
                ratio >= DISCRIMINATION_RATIO,
                format!("paraxial/exact residual ratio {ratio:.3e} (>= {DISCRIMINATION_RATIO:e})"),
                json!({"exact_max": exact_max, "paraxial_max": parax_max, "ratio": ratio}),
            ))
        }
        SuiteKind::Reduced => {
            let points = sampling::reduced_region(params, n, 3.0, 2.0, seed);
            let mut worst = 0.0_f64;
            for &mode in modes {
                let beam = HermiteGaussMode::normalized(*params, mode);
                let r = if opts.mutate_envelope {
                    residual_reduced(&GouyMutant { base: beam, waist_factor: 1.01 }, params, &points, &envelope_stencil)?
                } else {
                    residual_reduced(&beam, params, &points, &envelope_stencil)?
                };
                worst = worst.max(r.max_relative_residual);
            }
            Ok(SuiteOutcome::new(
                kind,
                worst <= EXACT_RESIDUAL_TOLERANCE,
                format!("max reduced residual {worst:.3e} (<= {EXACT_RESIDUAL_TOLERANCE:e})"),
                json!({"max_relative_residual": worst, "mutated": opts.mutate_envelope}),
            ))
        }
        SuiteKind::Symmetry => {
            let points = sampling::beam_region(params, n, 3.0, 2.0, seed);
            let mut worst = 0.0_f64;
            let mut mutant_min = f64::INFINITY;
            for &mode in modes {
                let beam = HermiteGaussMode::normalized(*params, mode);
                let r = if opts.mutate_envelope {
                    check_symmetry(&ParaxialEnvelope(beam), params, &points, &envelope_stencil)?
                } else {
                    check_symmetry(&ExactEnvelope(beam), params, &points, &envelope_stencil)?
                };
                worst = worst.max(r.max_mismatch());
                let m = check_symmetry(&ParaxialEnvelope(beam), params, &points, &envelope_stencil)?;
                mutant_min = mutant_min.min(m.first_order.max_relative_residual);
            }
            Ok(SuiteOutcome::new(
                kind,
                worst <= SYMMETRY_TOLERANCE && mutant_min >= MUTANT_MIN_MISMATCH,
                format!("max mismatch {worst:.3e} (<= {SYMMETRY_TOLERANCE:e}); t-independent mutant {mutant_min:.3} (>= {MUTANT_MIN_MISMATCH})"),
                json!({"max_mismatch": worst, "mutant_first_order": mutant_min, "mutated": opts.mutate_envelope}),
            ))
        }
        SuiteKind::Orthonormality => {
            let table = numerical_normalization_table(params, modes, DEFAULT_TRANSVERSE_NODES)?;
            let mut reports = Vec::new();
            let mut passed = true;
            let mut worst = 0.0_f64;
            for s in [0.0, 5.0 * lr] {
                let quad = transverse_quadrature(params, s, DEFAULT_TRANSVERSE_NODES)?;
                let r = transverse_gram(params, modes, &table, s, &quad)?;
                passed &= r.is_identity(GRAM_TOLERANCE);
                worst = worst.max(r.max_off_diagonal).max(r.max_diagonal_deviation);
                reports.push(to_value(&r));
            }
            let c00 = compute_normalization(params, ModeIndex::GAUSSIAN, &transverse_quadrature(params, 0.0, DEFAULT_TRANSVERSE_NODES)?)?;
            let oracle = (2.0 / std::f64::consts::PI).sqrt() / params.w0;
            let c_rel = (c00 - oracle).abs() / oracle;
            passed &= c_rel <= C00_TOLERANCE;
            Ok(SuiteOutcome::new(
                kind,
                passed,
                format!("Gram deviation {worst:.3e} (< {GRAM_TOLERANCE:e}); C00 rel. error {c_rel:.2e} (<= {C00_TOLERANCE:e})"),
                json!({"planes": reports, "c00": c00, "c00_oracle": oracle}),
            ))
        }
        SuiteKind::InverseSquare => {
            let table = NormalizationTable::closed_form(params, modes);
            let mut rows = Vec::new();
            let mut passed = true;
            for &mode in modes {
                let beam = HermiteGaussMode::from_table(*params, mode, &table)?;
                let (variation, convergence) = inverse_square_check(&beam, default_direction(&beam));
                passed &= variation < INVERSE_SQUARE_TOLERANCE && convergence < INVERSE_SQUARE_TOLERANCE;
                rows.push(json!({"mode": mode, "variation": variation, "deviation_from_F": convergence}));
            }
            Ok(SuiteOutcome::new(kind, passed, format!("r^2 D variation and F deviation < {INVERSE_SQUARE_TOLERANCE}"), Value::Array(rows)))
        }
        SuiteKind::ConstraintCorrespondence => {
            let (worst, count) = correspondence_margin(params, n.max(1000), seed);
            Ok(SuiteOutcome::new(
                kind,
                worst <= 0.0,
                format!("max (|f_E - f_P| - rho^2/(2 x3) - {CORRESPONDENCE_SLACK:e}) = {worst:.3e} over {count} points"),
                json!({"worst_excess": worst, "points": count}),
            ))
        }
        SuiteKind::Gouy => {
            let mut rows = Vec::new();
            let mut passed = true;
            for &mode in modes {
                let beam = HermiteGaussMode::normalized(*params, mode);
                let r = fit_gouy_auto(&beam, &symmetric_samples(&beam, 10.0, 401))?;
                let expected = -mode.gouy_factor();
                let span_expected = expected * 2.0 * 10f64.atan();
                let ok = (r.fitted_amplitude - expected).abs() <= GOUY_TOLERANCE
                    && (r.accumulated_phase - span_expected).abs() <= GOUY_TOLERANCE
                    && (r.fitted_scale - lr).abs() <= GOUY_TOLERANCE * lr;
                passed &= ok;
                rows.push(json!({"mode": mode, "fit": {
                    "path": r.path, "fitted_amplitude": r.fitted_amplitude, "fitted_scale": r.fitted_scale,
                    "rms_fit_error": r.rms_fit_error, "accumulated_phase": r.accumulated_phase,
                    "expected_accumulated_phase": span_expected}}));
            }
            Ok(SuiteOutcome::new(kind, passed, format!("Gouy amplitude and span within {GOUY_TOLERANCE:e}"), Value::Array(rows)))
        }
        SuiteKind::ParaxialRecovery => {
            let points: Vec<SpaceTimePoint> = sampling::beam_region(params, n, 3.0, 2.0, seed)
                .into_iter()
                .map(|p| p.with_t(p.x3 / params.v))
                .collect();
            let mut worst = 0.0_f64;
            for &mode in modes {
                let beam = HermiteGaussMode::normalized(*params, mode);
                for p in &points {
                    let (a, b) = (beam.exact_psi(p).value(), beam.paraxial_psi(p).value());
                    if b.norm() > 0.0 {
                        worst = worst.max((a - b).norm() / b.norm());
                    }
                }
            }
            Ok(SuiteOutcome::new(
                kind,
                worst <= RECOVERY_TOLERANCE,
                format!("max relative difference on x3 = v t: {worst:.3e} (<= {RECOVERY_TOLERANCE:e})"),
                json!({"max_relative_difference": worst}),
            ))
        }
        SuiteKind::AlternateCorrespondence => {
            let r = compare_sweep(params, &[0.04, 0.02, 0.01, 0.005], n, seed)?;
            let monotone = r.levels.windows(2).all(|w| w[1].max_deviation < w[0].max_deviation);
            Ok(SuiteOutcome::new(
                kind,
                monotone && r.fitted_order >= ALTERNATE_MIN_ORDER,
                format!("deviation order {:.2} (>= {ALTERNATE_MIN_ORDER})", r.fitted_order),
                to_value(&r),
            ))
        }
        SuiteKind::LiteralGaussian => {
            let beam = HermiteGaussMode::normalized(*params, ModeIndex::GAUSSIAN);
            let g = BatemanGaussian::normalized(*params);
            let mut worst = 0.0_f64;
            for p in sampling::beam_region(params, n, 3.0, 2.0, seed) {
                let (a, b) = (g.eval(&p), beam.exact_psi(&p).value());
                worst = worst.max((a - b).norm() / b.norm());
            }
            Ok(SuiteOutcome::new(
                kind,
                worst <= RECOVERY_TOLERANCE,
                format!("max relative difference {worst:.3e} (<= {RECOVERY_TOLERANCE:e})"),
                json!({"max_relative_difference": worst}),
            ))
        }
        SuiteKind::DeltaReduction => {
            let worst = delta_reduction_check(params, modes[0], 20, seed)?;
            Ok(SuiteOutcome::new(
                kind,
                worst <= DELTA_TOLERANCE,
                format!("max relative mismatch vs mollifier {worst:.3e} (<= {DELTA_TOLERANCE:e})"),
                json!({"max_relative_mismatch": worst}),
            ))
        }
    }
}

/// Order of the full-wave residual under step halving, from the residual
/// sums over `points` at [`CONVERGENCE_STEPS`].
pub fn convergence_order<F: WaveField + ?Sized>(field: &F, params: &BeamParams, points: &[SpaceTimePoint]) -> Result<f64> {
    let mut sums = Vec::new();
    for h in CONVERGENCE_STEPS {
        let r = residual_full_wave(field, params, points, &StencilSpec::fourth(h / params.k)?)?;
        sums.push(r.mean_relative_residual);
    }
    Ok(sums
        .windows(2)
        .map(|w| (w[0] / w[1]).log2())
        .fold(f64::INFINITY, f64::min))
}

/// A direction inside the beam cone that avoids the mode's Hermite nodes:
/// `theta` places the Hermite arguments at 0.6 (or on the axis for even
/// indices), `phi` between the axes.
pub fn default_direction(beam: &HermiteGaussMode) -> (f64, f64) {
    let ratio = beam.params.w0 / beam.params.rayleigh_range();
    let phi = 0.3_f64;
    // sqrt2 sin(theta) cos(phi) / ratio = xi
    let xi = 0.6;
    let st = xi * ratio / (SQRT_2 * phi.cos());
    (st.asin(), phi)
}

/// Returns `(variation, deviation)` of `r^2 D_mn` over `[50, 500] L_R`:
/// relative spread, and the worst relative distance from `F_mn (2/v)`.
pub fn inverse_square_check(beam: &HermiteGaussMode, (theta, phi): (f64, f64)) -> (f64, f64) {
    let params = &beam.params;
    let lr = params.rayleigh_range();
    let target = constraint::asymptotic_f(beam, theta, phi) * ConstraintKind::exact().jacobian(params);
    let values: Vec<f64> = (0..=30)
        .map(|i| {
            let r = lr * 50.0 * 10f64.powf(i as f64 / 30.0);
            let p = SpaceTimePoint::from_spherical(r, theta, phi, 0.0);
            r * r * constraint::density_d(beam, p.x1, p.x2, p.x3, DensityConvention::WithJacobian)
        })
        .collect();
    let (lo, hi) = values.iter().fold((f64::INFINITY, 0.0_f64), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    let variation = (hi - lo) / hi;
    let deviation = values.iter().map(|v| (v - target).abs() / target).fold(0.0, f64::max);
    (variation, deviation)
}

/// Largest `|f_E - f_P| - rho^2 / (2 x3) - slack` over paraxial points on
/// `x3 = v t`; non-positive means the bound holds everywhere.
pub fn correspondence_margin(params: &BeamParams, count: usize, seed: u64) -> (f64, usize) {
    use rand::Rng;
    let mut rng = sampling::rng(seed);
    let lr = params.rayleigh_range();
    let (fp, fe) = (ConstraintKind::paraxial(), ConstraintKind::exact());
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..count {
        let x3 = lr * rng.gen_range(0.01..3.0);
        let rho = 1e-4 * x3 * rng.gen::<f64>();
        let ang = std::f64::consts::TAU * rng.gen::<f64>();
        let t = constraint::constraint_time(&fp, params, 0.0, 0.0, x3);
        let p = SpaceTimePoint::new(rho * ang.cos(), rho * ang.sin(), x3, t);
        let gap = (constraint::eval_constraint(&fe, params, &p) - constraint::eval_constraint(&fp, params, &p)).abs();
        worst = worst.max(gap - p.rho_squared() / (2.0 * x3) - CORRESPONDENCE_SLACK);
    }
    (worst, count)
}

/// Worst relative mismatch between the Jacobian reduction of
/// `integral |Psi|^2 delta[f_E] dt` and the extrapolated mollifier integral.
pub fn delta_reduction_check(params: &BeamParams, mode: ModeIndex, count: usize, seed: u64) -> Result<f64> {
    let beam = HermiteGaussMode::normalized(*params, mode);
    let lr = params.rayleigh_range();
    let kind = ConstraintKind::exact();
    let integrand = |p: &SpaceTimePoint| beam.exact_psi(p).modulus_squared();
    let widths = [1e-2 * lr, 1e-3 * lr, 1e-4 * lr];
    let mut worst = 0.0_f64;
    for p in sampling::beam_region(params, count, 3.0, 1.5, seed) {
        let closed = constraint::delta_reduced_time_integral(params, integrand, &kind, p.x1, p.x2, p.x3);
        let oracle = mollifier_limit(params, &integrand, &kind, [p.x1, p.x2, p.x3], &widths, 64)?;
        if closed > 0.0 {
            worst = worst.max((closed - oracle.extrapolated).abs() / closed);
        }
    }
    Ok(worst)
}
