use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bateman_core::grid::{self, CsvTable, FieldGrid, RunFlags};
use bateman_core::RunConfig;
use tempfile::TempDir;

fn beam() -> Command {
    Command::new(env!("CARGO_BIN_EXE_beam"))
}

fn write_config(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(sub: &str, config: &Path, extra: &[&str]) -> Output {
    beam().arg(sub).arg("--config").arg(config).args(extra).output().unwrap()
}

fn csv_of(out: &Output) -> CsvTable {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    CsvTable::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

const SLICE: &str = r#"{
  "beam": {"k": 50, "w0": 1, "v": 1},
  "modes": [[0, 0]],
  "grid": {"axes": [
    {"name": "x1", "min": -3, "max": 3, "count": 7, "unit": "waist"},
    {"name": "s", "min": -3, "max": 3, "count": 25, "unit": "rayleigh"}
  ]}
}"#;

#[test]
fn on_axis_modulus_follows_the_spot_radius() {
    let dir = TempDir::new().unwrap();
    let table = csv_of(&run("field", &write_config(&dir, "c.json", SLICE), &[]));
    assert_eq!(table.header, ["x1", "s", "re", "im", "modulus", "phase"]);
    assert_eq!(table.rows.len(), 7 * 25);
    let (w0, lr) = (1.0, 25.0);
    let c00 = (2.0 / PI).sqrt() / w0;
    let mut checked = 0;
    for row in table.rows.iter().filter(|r| r[0] == 0.0) {
        let w = w0 * (1.0 + (row[1] / lr).powi(2)).sqrt();
        assert!((row[4] - c00 * w0 / w).abs() <= 1e-14 * c00, "s = {}", row[1]);
        checked += 1;
    }
    assert_eq!(checked, 25);
}

#[test]
fn odd_mode_crosses_zero_on_its_axis() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"beam": {"k": 50, "w0": 1, "v": 1}, "modes": [[1, 0]],
      "grid": {"axes": [{"name": "x1", "min": -2, "max": 2, "count": 41}], "fixed": {"s": 0}}}"#;
    let table = csv_of(&run("field", &write_config(&dir, "c.json", cfg), &[]));
    let x1 = table.column("x1").unwrap();
    let re = table.column("re").unwrap();
    let mid = x1.iter().position(|x| *x == 0.0).unwrap();
    assert_eq!(table.column("modulus").unwrap()[mid], 0.0);
    assert!(re[mid - 1] < 0.0 && re[mid + 1] > 0.0);
}

#[test]
fn far_field_density_matches_the_angular_shape() {
    let dir = TempDir::new().unwrap();
    // r = 200 L_R with L_R = 25; the beam cone is theta ~ w0 / L_R = 0.04
    let body = |family: &str| {
        format!(
            r#"{{"beam": {{"k": 50, "w0": 1, "v": 1}}, "modes": [[2, 1]], "family": "{family}",
              "grid": {{"axes": [{{"name": "theta", "min": 0.002, "max": 0.06, "count": 30}}],
                        "fixed": {{"r": 5000, "phi": 0.4}}}}}}"#
        )
    };
    let scaled = csv_of(&run("field", &write_config(&dir, "d.json", &body("scaled-density")), &[]));
    let asym = csv_of(&run("field", &write_config(&dir, "f.json", &body("asymptotic-density")), &[]));
    let (d, f) = (scaled.column("re").unwrap(), asym.column("re").unwrap());
    let peak = f.iter().cloned().fold(0.0, f64::max);
    let mut compared = 0;
    for (a, b) in d.iter().zip(&f) {
        if *b > 1e-3 * peak {
            assert!((a - b).abs() <= 0.01 * b, "{a} vs {b}");
            compared += 1;
        }
    }
    assert!(compared >= 10);
}

#[test]
fn raw_switch_removes_the_jacobian() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.json", r#"{"beam": {"k": 50, "w0": 1, "v": 2}, "family": "scaled-density",
      "grid": {"axes": [{"name": "theta", "min": 0.0, "max": 0.05, "count": 5}], "fixed": {"r": 3000}}}"#);
    let with = csv_of(&run("field", &cfg, &[])).column("re").unwrap();
    let raw = csv_of(&run("field", &cfg, &["--raw-eq19"])).column("re").unwrap();
    for (a, b) in with.iter().zip(&raw) {
        // 2 / v with v = 2
        assert_eq!(*a, *b);
    }
}

#[test]
fn natural_units_rescale_lengths() {
    let dir = TempDir::new().unwrap();
    // with the flag, coordinates in the document are read in units of w0
    let physical = r#"{"beam": {"k": 25, "w0": 2, "v": 3},
      "grid": {"axes": [{"name": "x1", "min": -2, "max": 2, "count": 5, "unit": "waist"}], "fixed": {"s": 10}}}"#;
    let natural = r#"{"beam": {"k": 50, "w0": 1, "v": 1},
      "grid": {"axes": [{"name": "x1", "min": -2, "max": 2, "count": 5, "unit": "waist"}], "fixed": {"s": 10}}}"#;
    let a = csv_of(&run("field", &write_config(&dir, "p.json", physical), &["--natural-units"]));
    let b = csv_of(&run("field", &write_config(&dir, "n.json", natural), &[]));
    assert_eq!(a.rows, b.rows);
}

#[test]
fn json_output_round_trips_bit_exactly() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.json", SLICE);
    let out = dir.path().join("grid.json");
    let status = run("field", &cfg, &["--format", "json", "--out", out.to_str().unwrap()]);
    assert!(status.status.success());
    let read = FieldGrid::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let direct = grid::evaluate(&RunConfig::from_json(SLICE).unwrap(), &RunFlags::default()).unwrap();
    assert_eq!(read.values.len(), direct.values.len());
    for (a, b) in read.values.iter().zip(&direct.values) {
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
    }
    assert_eq!(read.axes, direct.axes);
    assert_eq!(read.metadata.unwrap().config, RunConfig::from_json(SLICE).unwrap());
}

#[test]
fn csv_output_round_trips_to_fifteen_digits() {
    let dir = TempDir::new().unwrap();
    let table = csv_of(&run("field", &write_config(&dir, "c.json", SLICE), &[]));
    let direct = grid::evaluate(&RunConfig::from_json(SLICE).unwrap(), &RunFlags::default()).unwrap();
    for (a, b) in table.amplitudes().unwrap().iter().zip(&direct.values) {
        let scale = b.modulus();
        assert!((a.re - b.re).abs() <= 1e-15 * scale && (a.im - b.im).abs() <= 1e-15 * scale);
    }
}

#[test]
fn identical_configs_give_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.json", SLICE);
    let (a, b) = (run("field", &cfg, &[]), run("field", &cfg, &[]));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn default_verification_passes() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.json", r#"{"beam": {"k": 50, "w0": 1, "v": 1}, "modes": [[0, 0], [1, 0], [0, 1], [1, 1]]}"#);
    let report = dir.path().join("report.json");
    let out = run("verify", &cfg, &["--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["suites"].as_array().unwrap().len(), 13);
}

#[test]
fn mutated_envelope_fails_verification() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.json", r#"{"beam": {"k": 50, "w0": 1, "v": 1},
      "verify": {"mutate_envelope": true, "suites": ["reduced", "symmetry", "gouy"]}}"#);
    let out = run("verify", &cfg, &[]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("Reduced") && stderr.contains("Symmetry"), "{stderr}");
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["passed"], false);
}

#[test]
fn empty_mode_list_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let out = run("verify", &write_config(&dir, "c.json", r#"{"beam": {"k": 50, "w0": 1, "v": 1}, "modes": []}"#), &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_config_names_the_line() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.json", "{\"beam\": {\"k\": 50, \"w0\": 1, \"v\": 1},\n  \"grid\": {\"axes\": [{\"name\": \"x1\", \"min\": 0, \"max\": 1, \"cnt\": 3}]}}");
    let out = run("field", &cfg, &[]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("cnt") && stderr.contains("line 2"), "{stderr}");
}

#[test]
fn bad_parameters_are_config_errors() {
    let dir = TempDir::new().unwrap();
    for body in [
        r#"{"beam": {"k": -1, "w0": 1, "v": 1}, "grid": {"axes": [{"name": "x1", "min": 0, "max": 1, "count": 3}]}}"#,
        r#"{"beam": {"k": 1, "w0": 1, "v": 1}, "grid": {"axes": [{"name": "x1", "min": 0, "max": 1, "count": 1}]}}"#,
        r#"{"beam": {"k": 1, "w0": 1, "v": 1}, "modes": [[15, 15]], "grid": {"axes": [{"name": "x1", "min": 0, "max": 1, "count": 3}]}}"#,
    ] {
        assert_eq!(run("field", &write_config(&dir, "c.json", body), &[]).status.code(), Some(2), "{body}");
    }
    assert_eq!(run("field", &dir.path().join("missing.json"), &[]).status.code(), Some(2));
}

#[test]
fn overflowing_values_trip_the_numeric_guard() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.json", r#"{"beam": {"k": 50, "w0": 1, "v": 1}, "modes": [[20, 0]],
      "grid": {"axes": [{"name": "x1", "min": 1e20, "max": 2e20, "count": 2}]}}"#);
    assert_eq!(run("field", &cfg, &[]).status.code(), Some(3));
}

#[test]
fn gouy_writes_phase_table_and_fit() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.json", r#"{"beam": {"k": 50, "w0": 1, "v": 1}, "modes": [[0, 0], [1, 1]]}"#);
    let csv = dir.path().join("gouy.csv");
    let out = run("gouy", &cfg, &["--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let table = CsvTable::parse(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(table.header, ["m", "n", "s", "phase"]);
    assert_eq!(table.rows.len(), 2 * 401);
    let fit: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("gouy.fit.json")).unwrap()).unwrap();
    let fits = fit["fits"].as_array().unwrap();
    assert!((fits[0]["fitted_amplitude"].as_f64().unwrap() + 1.0).abs() < 1e-6);
    assert_eq!(fits[1]["path"], "ridge");
    assert!((fits[1]["fitted_amplitude"].as_f64().unwrap() + 3.0).abs() < 1e-6);
    let span = fits[1]["accumulated_phase"].as_f64().unwrap();
    assert!((span + 3.0 * 2.0 * 10f64.atan()).abs() < 1e-6);
}

#[test]
fn odd_mode_on_axis_gouy_is_rejected() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.json", r#"{"beam": {"k": 50, "w0": 1, "v": 1}, "modes": [[1, 0]], "gouy": {"path": "on-axis"}}"#);
    assert_eq!(run("gouy", &cfg, &[]).status.code(), Some(2));
}

#[test]
fn compare_reports_the_deviation_order() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "c.json", r#"{"beam": {"k": 100, "w0": 1, "v": 1}}"#);
    let out = run("compare", &cfg, &["--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["report"]["min_pairwise_order"].as_f64().unwrap() >= 1.8);
    assert_eq!(doc["report"]["levels"].as_array().unwrap().len(), 4);
}
