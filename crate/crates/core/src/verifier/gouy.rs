use std::f64::consts::{PI, SQRT_2, TAU};

use serde::{Deserialize, Serialize};

use crate::beam::{spot_radius, HermiteGaussMode, ModeIndex};
use crate::error::{BeamError, Result};
use crate::kernel::{hermite, hermite_roots};

/// Minimum sample density, per pi of expected phase change.
pub const SAMPLES_PER_PI: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GouyPath {
    OnAxis,
    Ridge,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GouySample {
    pub s: f64,
    /// Unwrapped phase, curvature term removed on the ridge path.
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GouyFitReport {
    pub mode: ModeIndex,
    pub path: GouyPath,
    /// Fitted `A` in `A atan(s / B) + c`; expected `-(1 + m + n)`.
    pub fitted_amplitude: f64,
    /// Fitted `B`; expected `L_R`.
    pub fitted_scale: f64,
    pub fitted_offset: f64,
    pub rms_fit_error: f64,
    /// Unwrapped phase at the last sample minus the first.
    pub accumulated_phase: f64,
    pub samples: Vec<GouySample>,
}

/// `count` evenly spaced samples over `[-span L_R, span L_R]`.
pub fn symmetric_samples(beam: &HermiteGaussMode, span: f64, count: usize) -> Vec<f64> {
    let lr = beam.params.rayleigh_range();
    (0..count)
        .map(|i| lr * span * (2.0 * i as f64 / (count - 1) as f64 - 1.0))
        .collect()
}

/// Fit the on-axis envelope phase `arg Phi_mn(0, 0, s)`. Only even `m`, `n`
/// have a nonzero axis value.
pub fn fit_gouy(beam: &HermiteGaussMode, s_samples: &[f64]) -> Result<GouyFitReport> {
    let mode = beam.mode;
    if mode.m % 2 == 1 || mode.n % 2 == 1 {
        return Err(BeamError::OddModeOnAxis { m: mode.m, n: mode.n });
    }
    let sorted = checked_samples(beam, s_samples)?;
    let raw: Vec<f64> = sorted.iter().map(|&s| beam.phi(0.0, 0.0, s).arg()).collect();
    fit_samples(beam, GouyPath::OnAxis, &sorted, &raw)
}

/// Fit the phase along the first Hermite ridge, `sqrt2 x_i / w(s) = xi_i`
/// with `xi_i` fixed, after removing the wavefront-curvature phase
/// `k rho^2 s / (2 (s^2 + L_R^2))`. Works for every mode.
pub fn fit_gouy_ridge(beam: &HermiteGaussMode, s_samples: &[f64]) -> Result<GouyFitReport> {
    let sorted = checked_samples(beam, s_samples)?;
    let (xi1, xi2) = (ridge_argument(beam.mode.m), ridge_argument(beam.mode.n));
    let p = &beam.params;
    let lr = p.rayleigh_range();
    let raw: Vec<f64> = sorted
        .iter()
        .map(|&s| {
            let w = spot_radius(p, s);
            let (x1, x2) = (xi1 * w / SQRT_2, xi2 * w / SQRT_2);
            let curvature = p.k * (x1 * x1 + x2 * x2) * s / (2.0 * (s * s + lr * lr));
            beam.phi(x1, x2, s).arg() - curvature
        })
        .collect();
    fit_samples(beam, GouyPath::Ridge, &sorted, &raw)
}

/// On-axis for even modes, ridge otherwise.
pub fn fit_gouy_auto(beam: &HermiteGaussMode, s_samples: &[f64]) -> Result<GouyFitReport> {
    if beam.mode.m.is_multiple_of(2) && beam.mode.n.is_multiple_of(2) {
        fit_gouy(beam, s_samples)
    } else {
        fit_gouy_ridge(beam, s_samples)
    }
}

/// Argument of the transverse maximum of `|H_order(xi)| exp(-xi^2 / 2)`
/// nearest the origin; zero for even orders.
pub fn ridge_argument(order: usize) -> f64 {
    if order.is_multiple_of(2) {
        return 0.0;
    }
    let roots = hermite_roots(order).unwrap_or_default();
    let upper = roots
        .iter()
        .copied()
        .find(|r| *r > 0.0)
        .unwrap_or((2.0 * order as f64 + 1.0).sqrt() + 1.0);
    let profile = |x: f64| -hermite(order, x).unwrap_or(0.0).abs() * (-0.5 * x * x).exp();
    golden_section(profile, 0.0, upper)
}

fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (a.abs() + b.abs()).max(1e-300) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

fn checked_samples(beam: &HermiteGaussMode, s_samples: &[f64]) -> Result<Vec<f64>> {
    if s_samples.len() < 10 {
        return Err(BeamError::InsufficientSamples(format!(
            "Gouy fit needs at least 10 samples, got {}",
            s_samples.len()
        )));
    }
    if s_samples.iter().any(|s| !s.is_finite()) {
        return Err(BeamError::InvalidParameter {
            name: "s_samples",
            reason: "samples must be finite".into(),
        });
    }
    let mut sorted = s_samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sorted.dedup();
    let lr = beam.params.rayleigh_range();
    let (lo, hi) = (sorted[0], sorted[sorted.len() - 1]);
    let span_tol = 1e-9 * lr;
    if lo > -10.0 * lr + span_tol || hi < 10.0 * lr - span_tol {
        return Err(BeamError::InsufficientSamples(format!(
            "samples must span [-10 L_R, 10 L_R], got [{lo}, {hi}] with L_R = {lr}"
        )));
    }
    let expected_change = beam.mode.gouy_factor() * ((hi / lr).atan() - (lo / lr).atan());
    let needed = (SAMPLES_PER_PI * expected_change / PI).ceil() as usize;
    if sorted.len() < needed {
        return Err(BeamError::InsufficientSamples(format!(
            "{} samples cover {expected_change:.3} rad of phase; need at least {needed}",
            sorted.len()
        )));
    }
    Ok(sorted)
}

/// Nearest-multiple-of-2pi continuation.
pub fn unwrap_phase(raw: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(raw.len());
    let mut offset = 0.0;
    for (i, &p) in raw.iter().enumerate() {
        if i > 0 {
            let prev = raw[i - 1];
            offset -= ((p - prev) / TAU).round() * TAU;
        }
        out.push(p + offset);
    }
    out
}

fn fit_samples(beam: &HermiteGaussMode, path: GouyPath, s: &[f64], raw: &[f64]) -> Result<GouyFitReport> {
    let phase = unwrap_phase(raw);
    let span = s.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let (a, b, c) = fit_arctan(s, &phase, span)?;
    let rms = (s
        .iter()
        .zip(&phase)
        .map(|(s, p)| (a * (s / b).atan() + c - p).powi(2))
        .sum::<f64>()
        / s.len() as f64)
        .sqrt();
    Ok(GouyFitReport {
        mode: beam.mode,
        path,
        fitted_amplitude: a,
        fitted_scale: b,
        fitted_offset: c,
        rms_fit_error: rms,
        accumulated_phase: phase[phase.len() - 1] - phase[0],
        samples: s
            .iter()
            .zip(&phase)
            .map(|(&s, &phase)| GouySample { s, phase })
            .collect(),
    })
}

/// Linear least squares for `(A, c)` at fixed `B`; returns `(A, c, sse)`.
fn linear_part(s: &[f64], y: &[f64], b: f64) -> (f64, f64, f64) {
    let n = s.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (s, y) in s.iter().zip(y) {
        let x = (s / b).atan();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let det = n * sxx - sx * sx;
    let a = (n * sxy - sx * sy) / det;
    let c = (sy - a * sx) / n;
    let sse = s
        .iter()
        .zip(y)
        .map(|(s, y)| (a * (s / b).atan() + c - y).powi(2))
        .sum();
    (a, c, sse)
}

/// Fit `y = A atan(s / B) + c`: coarse log-grid over `B`, golden-section
/// refinement of the projected residual, then Gauss-Newton on all three.
fn fit_arctan(s: &[f64], y: &[f64], span: f64) -> Result<(f64, f64, f64)> {
    let (lo, hi) = ((span * 1e-4).ln(), (span * 1e2).ln());
    let grid = 400;
    let sse_at = |lb: f64| linear_part(s, y, lb.exp()).2;
    let mut best = (f64::INFINITY, lo);
    for i in 0..=grid {
        let lb = lo + (hi - lo) * i as f64 / grid as f64;
        let e = sse_at(lb);
        if e < best.0 {
            best = (e, lb);
        }
    }
    let step = (hi - lo) / grid as f64;
    let lb = golden_section(sse_at, best.1 - step, best.1 + step);
    let mut b = lb.exp();
    let (mut a, mut c, _) = linear_part(s, y, b);
    for _ in 0..50 {
        // Normal equations J^T J delta = J^T r for (A, B, c).
        let mut jtj = [[0.0; 3]; 3];
        let mut jtr = [0.0; 3];
        for (s, y) in s.iter().zip(y) {
            let at = (s / b).atan();
            let row = [at, -a * s / (b * b + s * s), 1.0];
            let r = y - (a * at + c);
            for i in 0..3 {
                jtr[i] += row[i] * r;
                for j in 0..3 {
                    jtj[i][j] += row[i] * row[j];
                }
            }
        }
        let Some(delta) = solve3(jtj, jtr) else { break };
        a += delta[0];
        b += delta[1];
        c += delta[2];
        if delta[1].abs() <= 1e-15 * b.abs() && delta[0].abs() <= 1e-15 * a.abs().max(1.0) {
            break;
        }
    }
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(BeamError::InsufficientSamples("Gouy fit did not converge".into()));
    }
    Ok((a, b, c))
}

fn solve3(mut m: [[f64; 3]; 3], mut r: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())?;
        if m[piv][col] == 0.0 {
            return None;
        }
        m.swap(col, piv);
        r.swap(col, piv);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            r[row] -= f * r[col];
        }
    }
    let mut x = [0.0; 3];
    for i in (0..3).rev() {
        let tail: f64 = (i + 1..3).map(|k| m[i][k] * x[k]).sum();
        x[i] = (r[i] - tail) / m[i][i];
    }
    Some(x)
}
