use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beam::{spot_radius, BeamParams, ComplexAmplitude, HermiteGaussMode, ModeIndex, NormalizationTable};
use crate::error::{BeamError, Result};
use crate::kernel::{integrate_2d, Interval, QuadratureRule, QuadratureScheme, QuadratureSpec};

/// Transverse truncation in units of `w(s) / sqrt 2`.
pub const TRUNCATION_RADII: f64 = 8.0;

/// Default Gauss-Legendre nodes per axis for transverse integrals.
pub const DEFAULT_TRANSVERSE_NODES: usize = 96;

/// Maximum change allowed when the node count is raised by half.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-10;

/// Gauss-Legendre spec on `|x_i| <= 8 w(s) / sqrt 2`.
pub fn transverse_quadrature(params: &BeamParams, s: f64, node_count: usize) -> Result<QuadratureSpec> {
    let half = TRUNCATION_RADII * spot_radius(params, s) / SQRT_2;
    let iv = Interval::symmetric(half)?;
    QuadratureSpec::new(QuadratureScheme::GaussLegendreOnInterval, node_count, vec![iv, iv])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthoReport {
    pub s: f64,
    pub modes: Vec<ModeIndex>,
    /// `gram[i][j] = integral conj(Phi_j) Phi_i dx1 dx2`.
    pub gram_entries: Vec<Vec<ComplexAmplitude>>,
    pub max_off_diagonal: f64,
    pub max_diagonal_deviation: f64,
    pub max_hermitian_defect: f64,
    pub node_count: usize,
}

impl OrthoReport {
    pub fn mode_pairs(&self) -> Vec<(ModeIndex, ModeIndex)> {
        self.modes
            .iter()
            .flat_map(|a| self.modes.iter().map(move |b| (*a, *b)))
            .collect()
    }

    pub fn is_identity(&self, tolerance: f64) -> bool {
        self.max_off_diagonal < tolerance && self.max_diagonal_deviation < tolerance
    }
}

fn gram_matrix(beams: &[HermiteGaussMode], s: f64, spec: &QuadratureSpec) -> Result<Vec<Vec<Complex64>>> {
    let rule = QuadratureRule::new(spec.scheme, spec.node_count);
    let (x1s, w1s) = rule.mapped(spec.domain[0]);
    let (x2s, w2s) = rule.mapped(*spec.domain.get(1).unwrap_or(&spec.domain[0]));
    // Tabulate every envelope once on the tensor grid.
    let tables: Vec<Vec<Complex64>> = beams
        .par_iter()
        .map(|b| {
            x1s.iter()
                .flat_map(|&x1| x2s.iter().map(move |&x2| b.phi(x1, x2, s)))
                .collect()
        })
        .collect();
    let n2 = x2s.len();
    for (x1i, x1) in x1s.iter().enumerate() {
        for (x2i, x2) in x2s.iter().enumerate() {
            for t in &tables {
                let v = t[x1i * n2 + x2i];
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(BeamError::NonFiniteIntegrand { x1: *x1, x2: *x2 });
                }
            }
        }
    }
    let weights: Vec<f64> = w1s
        .iter()
        .flat_map(|w1| w2s.iter().map(move |w2| w1 * w2))
        .collect();
    let n = beams.len();
    let mut gram = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = tables[i]
                .iter()
                .zip(&tables[j])
                .zip(&weights)
                .map(|((a, b), w)| b.conj() * a * w)
                .sum();
        }
    }
    Ok(gram)
}

/// Per-plane transverse Gram matrix of the listed modes at fixed `s`,
/// with the node-count convergence check applied.
pub fn transverse_gram(
    params: &BeamParams,
    modes: &[ModeIndex],
    table: &NormalizationTable,
    s: f64,
    quad: &QuadratureSpec,
) -> Result<OrthoReport> {
    for (i, a) in modes.iter().enumerate() {
        if modes[..i].contains(a) {
            return Err(BeamError::InvalidParameter {
                name: "modes",
                reason: format!("mode {a} listed twice"),
            });
        }
    }
    let beams = modes
        .iter()
        .map(|&m| HermiteGaussMode::from_table(*params, m, table))
        .collect::<Result<Vec<_>>>()?;
    let gram = gram_matrix(&beams, s, quad)?;
    let refined_nodes = quad.node_count + quad.node_count / 2;
    let refined = gram_matrix(&beams, s, &quad.with_node_count(refined_nodes)?)?;
    let mut difference: f64 = 0.0;
    for (row, rrow) in gram.iter().zip(&refined) {
        for (a, b) in row.iter().zip(rrow) {
            difference = difference.max((a - b).norm());
        }
    }
    if difference > CONVERGENCE_TOLERANCE {
        return Err(BeamError::QuadratureNonConvergence {
            nodes: quad.node_count,
            refined: refined_nodes,
            difference,
        });
    }
    let n = modes.len();
    let (mut off, mut diag, mut herm): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let g = gram[i][j];
            if i == j {
                diag = diag.max((g - 1.0).norm());
            } else {
                off = off.max(g.norm());
            }
            herm = herm.max((g - gram[j][i].conj()).norm());
        }
    }
    Ok(OrthoReport {
        s,
        modes: modes.to_vec(),
        gram_entries: gram
            .into_iter()
            .map(|row| row.into_iter().map(ComplexAmplitude::from).collect())
            .collect(),
        max_off_diagonal: off,
        max_diagonal_deviation: diag,
        max_hermitian_defect: herm,
        node_count: quad.node_count,
    })
}

/// `C_mn` making the transverse norm unity at the waist, by quadrature.
pub fn compute_normalization(params: &BeamParams, mode: ModeIndex, quad: &QuadratureSpec) -> Result<f64> {
    let unit = HermiteGaussMode::with_constant(*params, mode, 1.0);
    let norm = integrate_2d(|x1, x2| unit.phi(x1, x2, 0.0).norm_sqr(), quad)?;
    Ok(1.0 / norm.re.sqrt())
}

/// Numerically normalized table for the listed modes.
pub fn numerical_normalization_table(params: &BeamParams, modes: &[ModeIndex], node_count: usize) -> Result<NormalizationTable> {
    let quad = transverse_quadrature(params, 0.0, node_count)?;
    let mut entries = Vec::new();
    for &mode in modes {
        let c = compute_normalization(params, mode, &quad)?;
        entries.push((mode, c));
        if mode.transposed() != mode && !modes.contains(&mode.transposed()) {
            entries.push((mode.transposed(), compute_normalization(params, mode.transposed(), &quad)?));
        }
    }
    NormalizationTable::from_entries(entries)
}
