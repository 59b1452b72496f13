use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beam::{spot_radius, Axis, BeamParams, Displacement, ReducedEnvelope, SpaceTimePoint, WaveField};
use crate::error::{BeamError, Result};
use crate::kernel::{first_derivative, second_derivative, StencilSpec};

/// Points whose amplitude falls below this fraction of the sampled peak
/// are skipped: the relative residual is undefined at field nodes.
pub const NODE_SKIP_FRACTION: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquationKind {
    FullWave,
    Paraxial,
    ReducedEnvelope,
    SymmetryFirstOrder,
    SymmetrySecondOrder,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub equation: EquationKind,
    pub point_count: usize,
    pub skipped_points: usize,
    pub max_relative_residual: f64,
    pub mean_relative_residual: f64,
    pub worst_point: Option<[f64; 4]>,
    pub normalization: String,
}

impl ResidualReport {
    fn from_samples(
        equation: EquationKind,
        normalization: &str,
        samples: Vec<Option<(f64, [f64; 4])>>,
    ) -> Result<Self> {
        let skipped = samples.iter().filter(|s| s.is_none()).count();
        let kept: Vec<_> = samples.into_iter().flatten().collect();
        if kept.is_empty() {
            return Err(BeamError::InsufficientSamples(format!(
                "{equation:?}: no evaluable points ({skipped} skipped)"
            )));
        }
        let mut max = 0.0;
        let mut worst = None;
        let mut sum = 0.0;
        for (r, at) in &kept {
            if !r.is_finite() {
                return Err(BeamError::Overflow(format!("non-finite residual at {at:?}")));
            }
            sum += r;
            if *r >= max {
                max = *r;
                worst = Some(*at);
            }
        }
        Ok(Self {
            equation,
            point_count: kept.len(),
            skipped_points: skipped,
            max_relative_residual: max,
            mean_relative_residual: sum / kept.len() as f64,
            worst_point: worst,
            normalization: normalization.to_string(),
        })
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_relative_residual <= tolerance
    }
}

fn axis_second_derivative<F: WaveField + ?Sized>(field: &F, p: &SpaceTimePoint, axis: Axis, spec: &StencilSpec) -> Complex64 {
    second_derivative(|h| field.eval_displaced(p, &Displacement::along(axis, h)), 0.0, spec)
}

fn axis_first_derivative<F: WaveField + ?Sized>(field: &F, p: &SpaceTimePoint, axis: Axis, spec: &StencilSpec) -> Complex64 {
    first_derivative(|h| field.eval_displaced(p, &Displacement::along(axis, h)), 0.0, spec)
}

fn peak_modulus<F: WaveField + ?Sized>(field: &F, points: &[SpaceTimePoint]) -> Result<(Vec<f64>, f64)> {
    let moduli: Vec<f64> = points.par_iter().map(|p| field.eval(p).norm()).collect();
    if let Some(i) = moduli.iter().position(|m| !m.is_finite()) {
        let p = points[i];
        return Err(BeamError::Overflow(format!(
            "non-finite field value at ({}, {}, {}, {})",
            p.x1, p.x2, p.x3, p.t
        )));
    }
    let peak = moduli.iter().cloned().fold(0.0, f64::max);
    Ok((moduli, peak))
}

/// Finite-difference residual of the full wave equation
/// `d11 + d22 + d33 - v^-2 dtt`, relative to `k^2 |Psi|` per point.
/// Spatial steps are `stencil.step`; the time step is `stencil.step / v`.
pub fn residual_full_wave<F: WaveField + ?Sized>(
    field: &F,
    params: &BeamParams,
    points: &[SpaceTimePoint],
    stencil: &StencilSpec,
) -> Result<ResidualReport> {
    let (moduli, peak) = peak_modulus(field, points)?;
    let time_stencil = stencil.with_step(stencil.step / params.v);
    let k2 = params.k * params.k;
    let v2 = params.v * params.v;
    let samples = points
        .par_iter()
        .zip(moduli.par_iter())
        .map(|(p, &modulus)| {
            if modulus < NODE_SKIP_FRACTION * peak || modulus == 0.0 {
                return None;
            }
            let lap = axis_second_derivative(field, p, Axis::X1, stencil)
                + axis_second_derivative(field, p, Axis::X2, stencil)
                + axis_second_derivative(field, p, Axis::X3, stencil)
                - axis_second_derivative(field, p, Axis::T, &time_stencil) / v2;
            Some((lap.norm() / (k2 * modulus), [p.x1, p.x2, p.x3, p.t]))
        })
        .collect();
    ResidualReport::from_samples(EquationKind::FullWave, "k^2 |Psi|", samples)
}

/// A point `(x1, x2, s)` of the reduced equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedPoint {
    pub x1: f64,
    pub x2: f64,
    pub s: f64,
}

/// Residual of `d11 Phi + d22 Phi + 2 i k ds Phi = 0`. Steps are
/// `stencil.step` times the local spot radius (transverse) and times `L_R`
/// (along `s`). Normalized per point by the sum of the three term
/// magnitudes.
pub fn residual_reduced<E: ReducedEnvelope + ?Sized>(
    envelope: &E,
    params: &BeamParams,
    points: &[ReducedPoint],
    stencil: &StencilSpec,
) -> Result<ResidualReport> {
    let lr = params.rayleigh_range();
    let k = params.k;
    let values: Vec<f64> = points
        .par_iter()
        .map(|p| envelope.eval_reduced(p.x1, p.x2, p.s, [0.0; 3]).norm())
        .collect();
    let peak = values.iter().cloned().fold(0.0, f64::max);
    let samples = points
        .par_iter()
        .zip(values.par_iter())
        .map(|(p, &modulus)| {
            if modulus < NODE_SKIP_FRACTION * peak || modulus == 0.0 {
                return None;
            }
            let transverse = stencil.with_step(stencil.step * spot_radius(params, p.s));
            let longitudinal = stencil.with_step(stencil.step * lr);
            let d11 = second_derivative(|h| envelope.eval_reduced(p.x1, p.x2, p.s, [h, 0.0, 0.0]), 0.0, &transverse);
            let d22 = second_derivative(|h| envelope.eval_reduced(p.x1, p.x2, p.s, [0.0, h, 0.0]), 0.0, &transverse);
            let ds = first_derivative(|h| envelope.eval_reduced(p.x1, p.x2, p.s, [0.0, 0.0, h]), 0.0, &longitudinal);
            let drift = Complex64::new(0.0, 2.0 * k) * ds;
            let scale = d11.norm() + d22.norm() + drift.norm();
            Some(((d11 + d22 + drift).norm() / scale, [p.x1, p.x2, p.s, 0.0]))
        })
        .collect();
    ResidualReport::from_samples(EquationKind::ReducedEnvelope, "|d11 Phi| + |d22 Phi| + |2k ds Phi|", samples)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub first_order: ResidualReport,
    pub second_order: ResidualReport,
}

impl SymmetryReport {
    pub fn max_mismatch(&self) -> f64 {
        self.first_order
            .max_relative_residual
            .max(self.second_order.max_relative_residual)
    }
}

/// Checks `d3 Phi = v^-1 dt Phi` and `d33 Phi = v^-2 dtt Phi` on an
/// envelope viewed over space-time. Steps are `stencil.step * L_R` in `x3`
/// and `stencil.step * L_R / v` in `t`; mismatches are relative to the
/// larger of the two sides.
pub fn check_symmetry<F: WaveField + ?Sized>(
    envelope: &F,
    params: &BeamParams,
    points: &[SpaceTimePoint],
    stencil: &StencilSpec,
) -> Result<SymmetryReport> {
    let lr = params.rayleigh_range();
    let space = stencil.with_step(stencil.step * lr);
    let time = stencil.with_step(stencil.step * lr / params.v);
    let (moduli, peak) = peak_modulus(envelope, points)?;
    let per_point: Vec<_> = points
        .par_iter()
        .zip(moduli.par_iter())
        .map(|(p, &modulus)| {
            if modulus < NODE_SKIP_FRACTION * peak || modulus == 0.0 {
                return (None, None);
            }
            let at = [p.x1, p.x2, p.x3, p.t];
            let floor = NODE_SKIP_FRACTION * modulus / lr;
            let d3 = axis_first_derivative(envelope, p, Axis::X3, &space);
            let dt = axis_first_derivative(envelope, p, Axis::T, &time) / params.v;
            let first = relative_mismatch(d3, dt, floor).map(|r| (r, at));
            let d33 = axis_second_derivative(envelope, p, Axis::X3, &space);
            let dtt = axis_second_derivative(envelope, p, Axis::T, &time) / (params.v * params.v);
            let second = relative_mismatch(d33, dtt, floor / lr).map(|r| (r, at));
            (first, second)
        })
        .collect();
    let (first, second): (Vec<_>, Vec<_>) = per_point.into_iter().unzip();
    Ok(SymmetryReport {
        first_order: ResidualReport::from_samples(EquationKind::SymmetryFirstOrder, "max(|d3 Phi|, |v^-1 dt Phi|)", first)?,
        second_order: ResidualReport::from_samples(EquationKind::SymmetrySecondOrder, "max(|d33 Phi|, |v^-2 dtt Phi|)", second)?,
    })
}

fn relative_mismatch(a: Complex64, b: Complex64, floor: f64) -> Option<f64> {
    let scale = a.norm().max(b.norm());
    if scale <= floor {
        None
    } else {
        Some((a - b).norm() / scale)
    }
}

/// Residual of the paraxial equation `d11 + d22 + 2 i k d3 = 0` for an
/// envelope of `(x1, x2, x3)`; the same operator as the reduced equation
/// with `x3` in place of `s`.
pub fn residual_paraxial<E: ReducedEnvelope + ?Sized>(
    envelope: &E,
    params: &BeamParams,
    points: &[ReducedPoint],
    stencil: &StencilSpec,
) -> Result<ResidualReport> {
    let mut report = residual_reduced(envelope, params, points, stencil)?;
    report.equation = EquationKind::Paraxial;
    Ok(report)
}
