//! Space-time constraint conditions, delta-function reduction of the time
//! integral, and the constrained densities `D_mn` and `F_mn`.
//!
//! The delta function is composed with the standard rule
//! `delta(f(t)) = delta(t - t*) / |df/dt|`, so `D_mn` carries a factor
//! `2 / v` for the exact constraint. [`DensityConvention::WithoutJacobian`] drops it.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::beam::{spot_radius, BeamParams, HermiteGaussMode, ModeIndex, SpaceTimePoint};
use crate::error::{BeamError, Result};
use crate::kernel::hermite;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Constraint {
    /// `f_P = x3 - v t`.
    #[serde(rename = "paraxial_fP")]
    ParaxialFp,
    /// `f_E = r - (x3 + v t) / 2`.
    #[serde(rename = "exact_fE")]
    ExactFe,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstraintKind {
    pub variant: Constraint,
    /// Membership tolerance, in length units.
    #[serde(default)]
    pub tolerance: f64,
}

impl ConstraintKind {
    pub fn new(variant: Constraint, tolerance: f64) -> Result<Self> {
        if !(tolerance >= 0.0) {
            return Err(BeamError::InvalidParameter {
                name: "tolerance",
                reason: format!("must be non-negative, got {tolerance}"),
            });
        }
        Ok(Self { variant, tolerance })
    }

    pub fn paraxial() -> Self {
        Self {
            variant: Constraint::ParaxialFp,
            tolerance: 0.0,
        }
    }

    pub fn exact() -> Self {
        Self {
            variant: Constraint::ExactFe,
            tolerance: 0.0,
        }
    }

    /// `1 / |df/dt|`: `1/v` for `f_P`, `2/v` for `f_E`.
    pub fn jacobian(&self, params: &BeamParams) -> f64 {
        match self.variant {
            Constraint::ParaxialFp => 1.0 / params.v,
            Constraint::ExactFe => 2.0 / params.v,
        }
    }

    pub fn contains(&self, params: &BeamParams, p: &SpaceTimePoint) -> bool {
        eval_constraint(self, params, p).abs() <= self.tolerance
    }
}

/// Signed constraint value; zero on the constraint space.
pub fn eval_constraint(kind: &ConstraintKind, params: &BeamParams, p: &SpaceTimePoint) -> f64 {
    let fp = p.x3 - params.v * p.t;
    match kind.variant {
        Constraint::ParaxialFp => fp,
        Constraint::ExactFe => {
            if p.x3 > 0.0 {
                // r - x3 without cancellation
                p.rho_squared() / (p.r() + p.x3) + 0.5 * fp
            } else {
                p.r() - 0.5 * (p.x3 + params.v * p.t)
            }
        }
    }
}

/// The time placing `(x1, x2, x3, t)` on the constraint.
pub fn constraint_time(kind: &ConstraintKind, params: &BeamParams, x1: f64, x2: f64, x3: f64) -> f64 {
    match kind.variant {
        Constraint::ParaxialFp => x3 / params.v,
        Constraint::ExactFe => {
            let r = SpaceTimePoint::new(x1, x2, x3, 0.0).r();
            (2.0 * r - x3) / params.v
        }
    }
}

/// `integral integrand(t) delta[f(t)] dt = integrand(t*) / |df/dt|`.
pub fn delta_reduced_time_integral<F>(
    params: &BeamParams,
    integrand: F,
    kind: &ConstraintKind,
    x1: f64,
    x2: f64,
    x3: f64,
) -> f64
where
    F: Fn(&SpaceTimePoint) -> f64,
{
    let t = constraint_time(kind, params, x1, x2, x3);
    integrand(&SpaceTimePoint::new(x1, x2, x3, t)) * kind.jacobian(params)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityConvention {
    /// Include the `2 / v` Jacobian of the exact constraint.
    #[default]
    WithJacobian,
    /// The closed form without the Jacobian.
    WithoutJacobian,
}

impl DensityConvention {
    fn factor(self, params: &BeamParams) -> f64 {
        match self {
            Self::WithJacobian => ConstraintKind::exact().jacobian(params),
            Self::WithoutJacobian => 1.0,
        }
    }
}

/// Constrained density `D_mn` at a spatial point: the density on the
/// exact constraint, where `s = r`.
pub fn density_d(beam: &HermiteGaussMode, x1: f64, x2: f64, x3: f64, convention: DensityConvention) -> f64 {
    let p = SpaceTimePoint::new(x1, x2, x3, 0.0);
    let (r, theta, phi) = (p.r(), p.theta(), p.phi());
    let params = &beam.params;
    let w = spot_radius(params, r);
    let st = theta.sin();
    let (sp, cp) = phi.sin_cos();
    let hm = hermite::hermite_unchecked(beam.mode.m, SQRT_2 * r * st * cp / w);
    let hn = hermite::hermite_unchecked(beam.mode.n, SQRT_2 * r * st * sp / w);
    let prefactor = beam.c_mn * beam.c_mn * params.w0 * params.w0 / (w * w);
    let gauss = (-2.0 * r * r * st * st / (w * w)).exp();
    prefactor * hm * hm * hn * hn * gauss * convention.factor(params)
}

/// Far-field angular shape `F_mn(theta, phi)`, the large-`r` limit of
/// `r^2 D_mn` (without the Jacobian).
pub fn asymptotic_f(beam: &HermiteGaussMode, theta: f64, phi: f64) -> f64 {
    let params = &beam.params;
    let lr = params.rayleigh_range();
    let ratio = params.w0 / lr;
    let st = theta.sin();
    let (sp, cp) = phi.sin_cos();
    let hm = hermite::hermite_unchecked(beam.mode.m, SQRT_2 * st * cp / ratio);
    let hn = hermite::hermite_unchecked(beam.mode.n, SQRT_2 * st * sp / ratio);
    beam.c_mn * beam.c_mn * lr * lr * hm * hm * hn * hn * (-2.0 * st * st / (ratio * ratio)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularDensity {
    pub mode: ModeIndex,
    pub theta: f64,
    pub phi: f64,
    pub value: f64,
}

impl AngularDensity {
    pub fn evaluate(beam: &HermiteGaussMode, theta: f64, phi: f64) -> Self {
        Self {
            mode: beam.mode,
            theta,
            phi,
            value: asymptotic_f(beam, theta, phi),
        }
    }
}
