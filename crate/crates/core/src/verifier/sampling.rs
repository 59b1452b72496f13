//! Seeded random point sets for the verification sweeps.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::residual::ReducedPoint;
use crate::beam::{spot_radius, BeamParams, SpaceTimePoint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Points with `x3, v t` uniform in `[-extent L_R, extent L_R]` and each
/// transverse coordinate uniform within `transverse` spot radii `w(s)`.
pub fn beam_region(params: &BeamParams, count: usize, extent: f64, transverse: f64, seed: u64) -> Vec<SpaceTimePoint> {
    let mut r = rng(seed);
    let lr = params.rayleigh_range();
    (0..count)
        .map(|_| {
            let x3 = lr * extent * r.gen_range(-1.0..1.0);
            let vt = lr * extent * r.gen_range(-1.0..1.0);
            let w = spot_radius(params, 0.5 * (x3 + vt));
            let x1 = transverse * w * r.gen_range(-1.0..1.0);
            let x2 = transverse * w * r.gen_range(-1.0..1.0);
            SpaceTimePoint::new(x1, x2, x3, vt / params.v)
        })
        .collect()
}

/// As [`beam_region`] but with `x3` restricted to `[min_x3 L_R, extent L_R]`
/// and the transverse box scaled by `w(x3)`.
pub fn forward_region(
    params: &BeamParams,
    count: usize,
    min_x3: f64,
    extent: f64,
    transverse: f64,
    seed: u64,
) -> Vec<SpaceTimePoint> {
    let mut r = rng(seed);
    let lr = params.rayleigh_range();
    (0..count)
        .map(|_| {
            let x3 = lr * r.gen_range(min_x3..extent);
            let t = lr * extent * r.gen_range(-1.0..1.0) / params.v;
            let w = spot_radius(params, x3);
            let x1 = transverse * w * r.gen_range(-1.0..1.0);
            let x2 = transverse * w * r.gen_range(-1.0..1.0);
            SpaceTimePoint::new(x1, x2, x3, t)
        })
        .collect()
}

/// Random `(x1, x2, s)` with `s` in `[-extent L_R, extent L_R]`.
pub fn reduced_region(params: &BeamParams, count: usize, extent: f64, transverse: f64, seed: u64) -> Vec<ReducedPoint> {
    let mut r = rng(seed);
    let lr = params.rayleigh_range();
    (0..count)
        .map(|_| {
            let s = lr * extent * r.gen_range(-1.0..1.0);
            let w = spot_radius(params, s);
            ReducedPoint {
                x1: transverse * w * r.gen_range(-1.0..1.0),
                x2: transverse * w * r.gen_range(-1.0..1.0),
                s,
            }
        })
        .collect()
}

/// Unit-square draws `(a, b, c)` that [`paraxial_points`] scales, so sweeps
/// over the paraxiality parameter reuse the same relative geometry.
pub fn unit_draws(count: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| [r.gen::<f64>(), r.gen::<f64>(), r.gen::<f64>()])
        .collect()
}

/// Points on `x3 = v t` with `x3` in `[L_R / p, 2 L_R / p]` and
/// `rho <= p x3`, for paraxiality `p`.
pub fn paraxial_points(params: &BeamParams, paraxiality: f64, draws: &[[f64; 3]]) -> Vec<SpaceTimePoint> {
    let lr = params.rayleigh_range();
    draws
        .iter()
        .map(|&[a, b, c]| {
            let x3 = lr / paraxiality * (1.0 + a);
            let rho = paraxiality * x3 * b.sqrt();
            let ang = TAU * c;
            SpaceTimePoint::new(rho * ang.cos(), rho * ang.sin(), x3, x3 / params.v)
        })
        .collect()
}
