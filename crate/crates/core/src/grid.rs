//! Run configuration and gridded field output.
//!
//! A [`RunConfig`] is one JSON document describing the beam, the modes, the
//! solution family and a rectangular lattice of sample points. Evaluating it
//! produces a [`FieldGrid`], written as CSV (axis columns then `re`, `im`,
//! `modulus`, `phase`, 17 significant digits, row-major) or as JSON that
//! round-trips bit-exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beam::{
    AlternateGaussian, BatemanGaussian, BeamParams, ComplexAmplitude, HermiteGaussMode, ModeIndex, SpaceTimePoint,
};
use crate::constraint::{self, ConstraintKind, DensityConvention};
use crate::error::{BeamError, Result};
use crate::verifier::suite::VerifyOptions;
use crate::verifier::GouyPath;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Columns written after the axis columns.
pub const VALUE_COLUMNS: [&str; 4] = ["re", "im", "modulus", "phase"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Exact Hermite-Gaussian field `Psi_mn`.
    Exact,
    /// The paraxial mode with the same constant.
    Paraxial,
    /// Exact envelope `Phi_mn(x1, x2, s)` without the carrier.
    Envelope,
    /// Complex-source Gaussian, matched to `C00`.
    Alternate,
    /// Literal closed form of the Gaussian exact solution.
    BatemanGaussian,
    /// `r^2 D_mn`, real, in the `re` column.
    ScaledDensity,
    /// `F_mn(theta, phi)` (times the Jacobian unless raw), in `re`.
    AsymptoticDensity,
}

impl Family {
    fn needs_single_mode(self) -> bool {
        !matches!(self, Family::Alternate | Family::BatemanGaussian)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxisUnit {
    #[default]
    Absolute,
    /// Multiples of the waist `w0`.
    Waist,
    /// Multiples of the Rayleigh range.
    Rayleigh,
}

/// One swept coordinate of the lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default, skip_serializing_if = "is_absolute")]
    pub unit: AxisUnit,
}

fn is_absolute(u: &AxisUnit) -> bool {
    *u == AxisUnit::Absolute
}

impl AxisSpec {
    pub fn new(name: &str, min: f64, max: f64, count: usize) -> Self {
        Self {
            name: name.to_string(),
            min,
            max,
            count,
            unit: AxisUnit::Absolute,
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            return self.max;
        }
        self.min + (self.max - self.min) * i as f64 / (self.count - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }

    fn resolved(&self, params: &BeamParams) -> Self {
        let scale = match self.unit {
            AxisUnit::Absolute => 1.0,
            AxisUnit::Waist => params.w0,
            AxisUnit::Rayleigh => params.rayleigh_range(),
        };
        Self {
            name: self.name.clone(),
            min: self.min * scale,
            max: self.max * scale,
            count: self.count,
            unit: AxisUnit::Absolute,
        }
    }
}

const AXIS_NAMES: [&str; 8] = ["x1", "x2", "x3", "t", "s", "r", "theta", "phi"];

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub axes: Vec<AxisSpec>,
    /// Coordinates held constant over the lattice.
    #[serde(default)]
    pub fixed: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GouyOptions {
    /// Half-width of the sample range in Rayleigh ranges.
    pub span: f64,
    pub samples: usize,
    /// Force a path; chosen from the mode parity when absent.
    pub path: Option<GouyPath>,
}

impl Default for GouyOptions {
    fn default() -> Self {
        Self {
            span: 10.0,
            samples: 401,
            path: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CompareOptions {
    pub paraxialities: Vec<f64>,
    pub points: usize,
    pub seed: u64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            paraxialities: vec![0.04, 0.02, 0.01, 0.005],
            points: 200,
            seed: 2024,
        }
    }
}

fn default_modes() -> Vec<[usize; 2]> {
    vec![[0, 0]]
}

fn default_family() -> Family {
    Family::Exact
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub beam: BeamParams,
    #[serde(default = "default_modes")]
    pub modes: Vec<[usize; 2]>,
    #[serde(default = "default_family")]
    pub family: Family,
    #[serde(default)]
    pub grid: GridSpec,
    /// Slice on a constraint surface (t solved per point) instead of fixed t.
    #[serde(default)]
    pub constraint: Option<ConstraintKind>,
    #[serde(default)]
    pub verify: VerifyOptions,
    #[serde(default)]
    pub gouy: GouyOptions,
    #[serde(default)]
    pub compare: CompareOptions,
}

/// Switches supplied on the command line rather than in the document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RunFlags {
    pub natural_units: bool,
    pub density: DensityConvention,
}

fn invalid(name: &'static str, reason: impl Into<String>) -> BeamError {
    BeamError::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Beam parameters in the units the run works in.
    pub fn params(&self, flags: &RunFlags) -> Result<BeamParams> {
        self.beam.validate()?;
        Ok(if flags.natural_units {
            self.beam.to_natural_units()
        } else {
            self.beam
        })
    }

    pub fn mode_indices(&self) -> Result<Vec<ModeIndex>> {
        if self.modes.is_empty() {
            return Err(invalid("modes", "mode list is empty"));
        }
        let modes = self
            .modes
            .iter()
            .map(|[m, n]| ModeIndex::new(*m, *n))
            .collect::<Result<Vec<_>>>()?;
        for (i, a) in modes.iter().enumerate() {
            if modes[..i].contains(a) {
                return Err(invalid("modes", format!("mode {a} listed twice")));
            }
        }
        Ok(modes)
    }

    /// Checks the lattice and family choices that [`evaluate`] relies on.
    pub fn validate_grid(&self) -> Result<()> {
        let grid = &self.grid;
        if grid.axes.is_empty() {
            return Err(invalid("grid.axes", "at least one swept axis is required"));
        }
        let mut seen: Vec<&str> = Vec::new();
        for axis in &grid.axes {
            if !AXIS_NAMES.contains(&axis.name.as_str()) {
                return Err(invalid("grid.axes", format!("unknown axis `{}`; expected one of {AXIS_NAMES:?}", axis.name)));
            }
            if seen.contains(&axis.name.as_str()) || grid.fixed.contains_key(&axis.name) {
                return Err(invalid("grid.axes", format!("axis `{}` given twice", axis.name)));
            }
            seen.push(&axis.name);
            if axis.count < 2 {
                return Err(invalid("grid.axes", format!("axis `{}` needs count >= 2, got {}", axis.name, axis.count)));
            }
            if !(axis.min.is_finite() && axis.max.is_finite()) || axis.min >= axis.max {
                return Err(invalid("grid.axes", format!("axis `{}` needs finite min < max", axis.name)));
            }
        }
        for (name, value) in &grid.fixed {
            if !AXIS_NAMES.contains(&name.as_str()) {
                return Err(invalid("grid.fixed", format!("unknown coordinate `{name}`")));
            }
            if !value.is_finite() {
                return Err(invalid("grid.fixed", format!("`{name}` must be finite")));
            }
        }
        let names: Vec<&str> = seen.iter().copied().chain(grid.fixed.keys().map(String::as_str)).collect();
        let has = |n: &str| names.contains(&n);
        let spherical = has("r") || has("theta") || has("phi");
        if spherical && (has("x1") || has("x2") || has("x3")) {
            return Err(invalid("grid", "mix of Cartesian and spherical coordinates"));
        }
        if has("s") && has("t") {
            return Err(invalid("grid", "give at most one of `s` and `t`"));
        }
        if self.constraint.is_some() && (has("s") || has("t")) {
            return Err(invalid("constraint", "a constraint slice solves t itself; drop `s` and `t`"));
        }
        if self.family == Family::AsymptoticDensity && !(has("theta") || has("phi")) {
            return Err(invalid("family", "asymptotic-density is a function of `theta` and `phi`"));
        }
        if matches!(self.family, Family::ScaledDensity | Family::AsymptoticDensity) && (has("s") || has("t")) {
            return Err(invalid("family", "densities are spatial; drop `s` and `t`"));
        }
        if self.family.needs_single_mode() && self.modes.len() != 1 {
            return Err(invalid("modes", "field evaluation takes exactly one mode"));
        }
        if matches!(self.family, Family::Alternate | Family::BatemanGaussian) && self.modes != [[0, 0]] {
            return Err(invalid("modes", "this family exists only for mode (0, 0)"));
        }
        Ok(())
    }
}

/// Coordinates of one lattice point before they become a space-time point.
fn resolve_point(coords: &BTreeMap<&str, f64>, params: &BeamParams, constraint: Option<&ConstraintKind>) -> SpaceTimePoint {
    let get = |n: &str| coords.get(n).copied();
    let (x1, x2, x3_given) = if get("r").is_some() || get("theta").is_some() || get("phi").is_some() {
        let p = SpaceTimePoint::from_spherical(
            get("r").unwrap_or(0.0),
            get("theta").unwrap_or(0.0),
            get("phi").unwrap_or(0.0),
            0.0,
        );
        (p.x1, p.x2, Some(p.x3))
    } else {
        (get("x1").unwrap_or(0.0), get("x2").unwrap_or(0.0), get("x3"))
    };
    match (x3_given, get("s"), get("t")) {
        (x3, Some(s), _) => {
            // With x3 unspecified the slice sits on x3 = v t, so x3 = s.
            let x3 = x3.unwrap_or(s);
            SpaceTimePoint::new(x1, x2, x3, (2.0 * s - x3) / params.v)
        }
        (x3, None, t) => {
            let x3 = x3.unwrap_or(0.0);
            let t = match (t, constraint) {
                (Some(t), _) => t,
                (None, Some(kind)) => constraint::constraint_time(kind, params, x1, x2, x3),
                (None, None) => 0.0,
            };
            SpaceTimePoint::new(x1, x2, x3, t)
        }
    }
}

enum Evaluator {
    Mode(HermiteGaussMode),
    Alternate(AlternateGaussian),
    Literal(BatemanGaussian),
}

impl Evaluator {
    fn eval(&self, family: Family, p: &SpaceTimePoint, coords: &BTreeMap<&str, f64>, flags: &RunFlags) -> Result<ComplexAmplitude> {
        Ok(match (self, family) {
            (Evaluator::Mode(b), Family::Exact) => b.exact_psi(p),
            (Evaluator::Mode(b), Family::Paraxial) => b.paraxial_psi(p),
            (Evaluator::Mode(b), Family::Envelope) => b.envelope_phi(p.x1, p.x2, p.s(&b.params)),
            (Evaluator::Mode(b), Family::ScaledDensity) => {
                let d = constraint::density_d(b, p.x1, p.x2, p.x3, flags.density);
                ComplexAmplitude::new(p.r() * p.r() * d, 0.0)
            }
            (Evaluator::Mode(b), Family::AsymptoticDensity) => {
                let theta = coords.get("theta").copied().unwrap_or(0.0);
                let phi = coords.get("phi").copied().unwrap_or(0.0);
                let factor = match flags.density {
                    DensityConvention::WithJacobian => ConstraintKind::exact().jacobian(&b.params),
                    DensityConvention::WithoutJacobian => 1.0,
                };
                ComplexAmplitude::new(constraint::asymptotic_f(b, theta, phi) * factor, 0.0)
            }
            (Evaluator::Alternate(a), _) => a.psi(p)?.amplitude,
            (Evaluator::Literal(g), _) => g.psi(p),
            _ => unreachable!("evaluator built for its family"),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMetadata {
    pub version: String,
    pub flags: RunFlags,
    /// Beam parameters actually used (after any unit conversion).
    pub params: BeamParams,
    pub config: RunConfig,
}

/// Rectangular lattice of evaluated amplitudes; the first axis varies
/// slowest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldGrid {
    pub axes: Vec<AxisSpec>,
    pub values: Vec<ComplexAmplitude>,
    pub metadata: Option<GridMetadata>,
}

impl FieldGrid {
    pub fn new(axes: Vec<AxisSpec>, values: Vec<ComplexAmplitude>) -> Result<Self> {
        let expected: usize = axes.iter().map(|a| a.count).product();
        if values.len() != expected {
            return Err(invalid("values", format!("expected {expected} values for the axes, got {}", values.len())));
        }
        Ok(Self {
            axes,
            values,
            metadata: None,
        })
    }

    pub fn point_count(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    /// Axis coordinates of flat index `i`.
    pub fn coordinates(&self, mut i: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.axes.len()];
        for (slot, axis) in out.iter_mut().zip(&self.axes).rev() {
            *slot = axis.value(i % axis.count);
            i /= axis.count;
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.axes.iter().map(|a| a.name.as_str()).chain(VALUE_COLUMNS).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for (i, v) in self.values.iter().enumerate() {
            for c in self.coordinates(i) {
                let _ = write!(out, "{c:.16e},");
            }
            let _ = writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", v.re, v.im, v.modulus(), v.phase());
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("grid serializes")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// A parsed CSV table: header names and numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header: Vec<String> = lines
            .next()
            .ok_or_else(|| invalid("csv", "empty document"))?
            .split(',')
            .map(str::to_string)
            .collect();
        let rows = lines
            .enumerate()
            .filter(|(_, l)| !l.is_empty())
            .map(|(i, l)| {
                let row = l
                    .split(',')
                    .map(|f| f.trim().parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| invalid("csv", format!("line {}: {e}", i + 2)))?;
                if row.len() != header.len() {
                    return Err(invalid("csv", format!("line {}: {} fields, header has {}", i + 2, row.len(), header.len())));
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { header, rows })
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    /// Rebuilds the amplitudes from the `re` and `im` columns.
    pub fn amplitudes(&self) -> Result<Vec<ComplexAmplitude>> {
        let re = self.column("re").ok_or_else(|| invalid("csv", "missing `re` column"))?;
        let im = self.column("im").ok_or_else(|| invalid("csv", "missing `im` column"))?;
        Ok(re.into_iter().zip(im).map(|(a, b)| ComplexAmplitude::new(a, b)).collect())
    }
}

/// Evaluates the configured family over the lattice in parallel; the
/// result keeps row-major order.
pub fn evaluate(config: &RunConfig, flags: &RunFlags) -> Result<FieldGrid> {
    let params = config.params(flags)?;
    let modes = config.mode_indices()?;
    config.validate_grid()?;
    if let Some(kind) = &config.constraint {
        ConstraintKind::new(kind.variant, kind.tolerance)?;
    }
    let family = config.family;
    let evaluator = match family {
        Family::Alternate => Evaluator::Alternate(AlternateGaussian::matched_to(
            params,
            crate::beam::closed_form_normalization(&params, ModeIndex::GAUSSIAN),
        )),
        Family::BatemanGaussian => Evaluator::Literal(BatemanGaussian::normalized(params)),
        _ => Evaluator::Mode(HermiteGaussMode::normalized(params, modes[0])),
    };
    let axes: Vec<AxisSpec> = config.grid.axes.iter().map(|a| a.resolved(&params)).collect();
    let mut shell = FieldGrid {
        axes,
        values: Vec::new(),
        metadata: None,
    };
    let fixed: Vec<(&str, f64)> = config.grid.fixed.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let values = (0..shell.point_count())
        .into_par_iter()
        .map(|i| {
            let mut coords: BTreeMap<&str, f64> = fixed.iter().copied().collect();
            for (axis, c) in shell.axes.iter().zip(shell.coordinates(i)) {
                coords.insert(axis.name.as_str(), c);
            }
            let p = resolve_point(&coords, &params, config.constraint.as_ref());
            let v = evaluator.eval(family, &p, &coords, flags)?;
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(BeamError::Overflow(format!(
                    "non-finite value at ({}, {}, {}, {})",
                    p.x1, p.x2, p.x3, p.t
                )));
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    shell.values = values;
    shell.metadata = Some(GridMetadata {
        version: ARTIFACT_VERSION.to_string(),
        flags: *flags,
        params,
        config: config.clone(),
    });
    Ok(shell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beam::{closed_form_normalization, spot_radius};

    fn config(family: Family, axes: Vec<AxisSpec>) -> RunConfig {
        RunConfig {
            beam: BeamParams::new(50.0, 1.0, 1.0).unwrap(),
            modes: vec![[0, 0]],
            family,
            grid: GridSpec {
                axes,
                fixed: BTreeMap::new(),
            },
            constraint: None,
            verify: VerifyOptions::default(),
            gouy: GouyOptions::default(),
            compare: CompareOptions::default(),
        }
    }

    #[test]
    fn axis_endpoints_are_exact() {
        let a = AxisSpec::new("x1", -0.3, 0.7, 11);
        assert_eq!(a.value(0), -0.3);
        assert_eq!(a.value(10), 0.7);
    }

    #[test]
    fn row_major_coordinates() {
        let g = FieldGrid::new(
            vec![AxisSpec::new("x1", 0.0, 1.0, 2), AxisSpec::new("x2", 0.0, 2.0, 3)],
            vec![ComplexAmplitude::default(); 6],
        )
        .unwrap();
        assert_eq!(g.coordinates(0), vec![0.0, 0.0]);
        assert_eq!(g.coordinates(2), vec![0.0, 2.0]);
        assert_eq!(g.coordinates(3), vec![1.0, 0.0]);
    }

    #[test]
    fn wrong_value_count_is_rejected() {
        assert!(FieldGrid::new(vec![AxisSpec::new("x1", 0.0, 1.0, 3)], vec![]).is_err());
    }

    #[test]
    fn on_axis_modulus_follows_the_spot_radius() {
        let mut c = config(Family::Exact, vec![AxisSpec {
            unit: AxisUnit::Rayleigh,
            ..AxisSpec::new("s", -3.0, 3.0, 13)
        }]);
        c.grid.fixed.insert("x1".into(), 0.0);
        let g = evaluate(&c, &RunFlags::default()).unwrap();
        let params = c.beam;
        let c00 = closed_form_normalization(&params, ModeIndex::GAUSSIAN);
        for (i, v) in g.values.iter().enumerate() {
            let s = g.coordinates(i)[0];
            let want = c00 * params.w0 / spot_radius(&params, s);
            assert!((v.modulus() - want).abs() <= 1e-13 * want);
        }
    }

    #[test]
    fn csv_round_trip_to_full_precision() {
        let c = config(Family::Exact, vec![AxisSpec::new("x1", -2.0, 2.0, 9), AxisSpec::new("x3", 0.0, 30.0, 4)]);
        let g = evaluate(&c, &RunFlags::default()).unwrap();
        let back = CsvTable::parse(&g.to_csv()).unwrap().amplitudes().unwrap();
        for (a, b) in g.values.iter().zip(&back) {
            assert!((a.re - b.re).abs() <= 1e-15 * a.modulus());
            assert!((a.im - b.im).abs() <= 1e-15 * a.modulus());
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let c = config(Family::Paraxial, vec![AxisSpec::new("x2", -1.0, 1.0, 7)]);
        let g = evaluate(&c, &RunFlags::default()).unwrap();
        let back = FieldGrid::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        for (a, b) in g.values.iter().zip(&back.values) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn constraint_slice_solves_time() {
        let mut c = config(Family::Exact, vec![AxisSpec::new("x3", 1.0, 5.0, 3)]);
        c.constraint = Some(ConstraintKind::paraxial());
        let g = evaluate(&c, &RunFlags::default()).unwrap();
        let beam = HermiteGaussMode::normalized(c.beam, ModeIndex::GAUSSIAN);
        for (i, v) in g.values.iter().enumerate() {
            let x3 = g.coordinates(i)[0];
            let want = beam.paraxial_psi(&SpaceTimePoint::new(0.0, 0.0, x3, x3 / c.beam.v));
            assert!((v.value() - want.value()).norm() <= 1e-12 * want.modulus());
        }
    }

    #[test]
    fn config_errors() {
        let mut c = config(Family::Exact, vec![AxisSpec::new("x1", 0.0, 1.0, 1)]);
        assert!(evaluate(&c, &RunFlags::default()).is_err());
        c.grid.axes = vec![AxisSpec::new("y", 0.0, 1.0, 3)];
        assert!(evaluate(&c, &RunFlags::default()).is_err());
        c.grid.axes = vec![AxisSpec::new("x1", 0.0, 1.0, 3)];
        c.modes.clear();
        assert!(evaluate(&c, &RunFlags::default()).is_err());
        assert!(RunConfig::from_json(r#"{"beam":{"k":1,"v":1,"w0":1},"bogus":1}"#).is_err());
    }

    #[test]
    fn non_finite_values_trip_the_guard() {
        let mut c = config(Family::Exact, vec![AxisSpec::new("x1", 1e20, 2e20, 2)]);
        c.modes = vec![[20, 0]];
        assert!(matches!(evaluate(&c, &RunFlags::default()), Err(BeamError::Overflow(_))));
    }

    #[test]
    fn config_json_round_trip() {
        let c = config(Family::ScaledDensity, vec![AxisSpec::new("theta", 0.0, 0.1, 5)]);
        assert_eq!(RunConfig::from_json(&c.to_json()).unwrap(), c);
    }
}
