use serde::{Deserialize, Serialize};

use crate::error::{BeamError, Result};

/// Monochromatic beam description. `omega`, the Rayleigh range and the
/// Bateman constant are derived on demand so they can never drift from
/// `k`, `v` and `w0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamParams {
    /// Wavenumber along the propagation axis.
    pub k: f64,
    /// Propagation speed.
    pub v: f64,
    /// Waist radius.
    pub w0: f64,
}

impl BeamParams {
    pub fn new(k: f64, v: f64, w0: f64) -> Result<Self> {
        for (name, value) in [("k", k), ("v", v), ("w0", w0)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(BeamError::InvalidParameter {
                    name,
                    reason: format!("must be strictly positive and finite, got {value}"),
                });
            }
        }
        Ok(Self { k, v, w0 })
    }

    /// Beam with `w0 = v = 1` and the given dimensionless `k w0`.
    pub fn natural(k_w0: f64) -> Result<Self> {
        Self::new(k_w0, 1.0, 1.0)
    }

    /// Same beam expressed with lengths in units of `w0` and times in
    /// units of `w0 / v`.
    pub fn to_natural_units(&self) -> Self {
        Self {
            k: self.k * self.w0,
            v: 1.0,
            w0: 1.0,
        }
    }

    pub fn omega(&self) -> f64 {
        self.k * self.v
    }

    pub fn rayleigh_range(&self) -> f64 {
        0.5 * self.k * self.w0 * self.w0
    }

    /// Imaginary shift of the Bateman-Hillion argument; identical to the
    /// Rayleigh range for the Hermite-Gaussian family.
    pub fn bateman_a(&self) -> f64 {
        self.rayleigh_range()
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.k, self.v, self.w0).map(|_| ())
    }
}
