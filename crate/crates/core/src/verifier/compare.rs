use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::sampling;
use crate::beam::{AlternateGaussian, BeamParams, ComplexAmplitude, HermiteGaussMode, ModeIndex, SpaceTimePoint};
use crate::error::{BeamError, Result};

/// Largest paraxiality parameter accepted by [`compare_alternate`].
pub const MAX_PARAXIALITY: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub paraxiality: f64,
    pub point_count: usize,
    /// Least-squares constant `c` in `Psi00 / Psi'00 ~ c`.
    pub fitted_constant: ComplexAmplitude,
    /// `max |Psi00 / Psi'00 - c| / |c|`.
    pub max_deviation: f64,
    pub rms_deviation: f64,
}

/// Scale-invariant comparison of the exact Gaussian mode with the
/// complex-source solution over paraxial points on `x3 = v t`.
pub fn compare_alternate(params: &BeamParams, points: &[SpaceTimePoint], paraxiality: f64) -> Result<CompareReport> {
    if !(paraxiality > 0.0 && paraxiality <= MAX_PARAXIALITY) {
        return Err(BeamError::InvalidParameter {
            name: "paraxiality",
            reason: format!("must lie in (0, {MAX_PARAXIALITY}], got {paraxiality}"),
        });
    }
    if points.is_empty() {
        return Err(BeamError::InsufficientSamples("no comparison points".into()));
    }
    let lr = params.rayleigh_range();
    let slack = 1e-12;
    for p in points {
        let ok = p.x3 > 0.0
            && p.rho() <= paraxiality * p.x3 * (1.0 + slack)
            && p.x3 >= lr / paraxiality * (1.0 - slack)
            && (p.x3 - params.v * p.t).abs() <= 1e-9 * p.x3;
        if !ok {
            return Err(BeamError::InvalidParameter {
                name: "points",
                reason: format!(
                    "({}, {}, {}, {}) is not a paraxial point on x3 = v t for paraxiality {paraxiality}",
                    p.x1, p.x2, p.x3, p.t
                ),
            });
        }
    }
    let gaussian = HermiteGaussMode::normalized(*params, ModeIndex::GAUSSIAN);
    let alternate = AlternateGaussian::matched_to(*params, gaussian.c_mn);
    let ratios = points
        .iter()
        .map(|p| {
            let alt = alternate.psi(p)?.amplitude.value();
            Ok(gaussian.exact_psi(p).value() / alt)
        })
        .collect::<Result<Vec<Complex64>>>()?;
    let c: Complex64 = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let devs: Vec<f64> = ratios.iter().map(|z| (z - c).norm() / c.norm()).collect();
    if devs.iter().any(|d| !d.is_finite()) {
        return Err(BeamError::Overflow("non-finite field ratio".into()));
    }
    Ok(CompareReport {
        paraxiality,
        point_count: points.len(),
        fitted_constant: c.into(),
        max_deviation: devs.iter().cloned().fold(0.0, f64::max),
        rms_deviation: (devs.iter().map(|d| d * d).sum::<f64>() / devs.len() as f64).sqrt(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub levels: Vec<CompareReport>,
    /// Least-squares slope of `log deviation` against `log paraxiality`.
    pub fitted_order: f64,
    /// Smallest order measured between consecutive levels.
    pub min_pairwise_order: f64,
}

/// Runs [`compare_alternate`] over a list of paraxiality values with a shared
/// relative point geometry.
pub fn compare_sweep(params: &BeamParams, paraxialities: &[f64], count: usize, seed: u64) -> Result<ConvergenceReport> {
    if paraxialities.len() < 2 {
        return Err(BeamError::InsufficientSamples("need at least two paraxiality levels".into()));
    }
    let draws = sampling::unit_draws(count, seed);
    let levels = paraxialities
        .iter()
        .map(|&p| compare_alternate(params, &sampling::paraxial_points(params, p, &draws), p))
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = levels.iter().map(|l| l.paraxiality.ln()).collect();
    let ys: Vec<f64> = levels.iter().map(|l| l.max_deviation.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let min_pairwise_order = levels
        .windows(2)
        .map(|w| (w[0].max_deviation / w[1].max_deviation).ln() / (w[0].paraxiality / w[1].paraxiality).ln())
        .fold(f64::INFINITY, f64::min);
    Ok(ConvergenceReport {
        levels,
        fitted_order: sxy / sxx,
        min_pairwise_order,
    })
}
