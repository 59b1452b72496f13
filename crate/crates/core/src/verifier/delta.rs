use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::beam::{BeamParams, SpaceTimePoint};
use crate::constraint::{eval_constraint, ConstraintKind};
use crate::error::{BeamError, Result};
use crate::kernel::{integrate_1d, Interval, QuadratureScheme, QuadratureSpec};

/// Half-width of the integration window, in mollifier widths.
const WINDOW_WIDTHS: f64 = 12.0;

/// `integral g(t) eta_eps(f(t)) dt` with the Gaussian nascent delta
/// `eta_eps(u) = exp(-u^2 / 2 eps^2) / (sqrt(2 pi) eps)`; `eps` is in the
/// length units of `f`. The root and slope of `f(t)` are found numerically.
pub fn mollified_time_integral<F>(
    params: &BeamParams,
    integrand: &F,
    kind: &ConstraintKind,
    x: [f64; 3],
    eps: f64,
    nodes: usize,
) -> Result<f64>
where
    F: Fn(&SpaceTimePoint) -> f64,
{
    let f = |t: f64| eval_constraint(kind, params, &SpaceTimePoint::new(x[0], x[1], x[2], t));
    let (root, slope) = secant_root(&f, params)?;
    let half = WINDOW_WIDTHS * eps / slope.abs();
    let spec = QuadratureSpec::new(
        QuadratureScheme::GaussLegendreOnInterval,
        nodes,
        vec![Interval::new(root - half, root + half)?],
    )?;
    let norm = 1.0 / ((2.0 * PI).sqrt() * eps);
    let v = integrate_1d(
        |t| {
            let u = f(t) / eps;
            integrand(&SpaceTimePoint::new(x[0], x[1], x[2], t)) * norm * (-0.5 * u * u).exp()
        },
        &spec,
    )?;
    Ok(v.re)
}

fn secant_root<F: Fn(f64) -> f64>(f: &F, params: &BeamParams) -> Result<(f64, f64)> {
    let scale = params.rayleigh_range() / params.v;
    let (mut a, mut b) = (0.0, scale);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..100 {
        if fb == fa {
            break;
        }
        let c = b - fb * (b - a) / (fb - fa);
        a = b;
        fa = fb;
        b = c;
        fb = f(b);
        if fb.abs() <= 1e-15 * scale * params.v || (b - a).abs() <= 1e-15 * b.abs().max(scale) {
            break;
        }
    }
    let h = 1e-3 * scale;
    let slope = (f(b + h) - f(b - h)) / (2.0 * h);
    if !(slope.is_finite() && slope != 0.0 && b.is_finite()) {
        return Err(BeamError::InvalidParameter {
            name: "constraint",
            reason: "constraint has no simple root in t".into(),
        });
    }
    Ok((b, slope))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MollifierEstimate {
    pub widths: Vec<f64>,
    pub raw: Vec<f64>,
    /// Richardson-extrapolated limit `eps -> 0`.
    pub extrapolated: f64,
}

/// Mollified integrals at decreasing widths combined by Richardson
/// extrapolation in `eps^2`.
pub fn mollifier_limit<F>(
    params: &BeamParams,
    integrand: &F,
    kind: &ConstraintKind,
    x: [f64; 3],
    widths: &[f64],
    nodes: usize,
) -> Result<MollifierEstimate>
where
    F: Fn(&SpaceTimePoint) -> f64,
{
    if widths.is_empty() {
        return Err(BeamError::InsufficientSamples("no mollifier widths".into()));
    }
    let raw = widths
        .iter()
        .map(|&e| mollified_time_integral(params, integrand, kind, x, e, nodes))
        .collect::<Result<Vec<_>>>()?;
    // Neville table in h = eps^2.
    let h: Vec<f64> = widths.iter().map(|e| e * e).collect();
    let mut table = raw.clone();
    for level in 1..table.len() {
        for i in (level..table.len()).rev() {
            let ratio = h[i - level] / h[i];
            table[i] = (ratio * table[i] - table[i - 1]) / (ratio - 1.0);
        }
    }
    Ok(MollifierEstimate {
        widths: widths.to_vec(),
        raw,
        extrapolated: *table.last().unwrap(),
    })
}
