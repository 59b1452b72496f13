use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use bateman_core::grid::{self, ARTIFACT_VERSION};
use bateman_core::verifier::suite::{self, GOUY_TOLERANCE};
use bateman_core::verifier::{compare_sweep, fit_gouy, fit_gouy_auto, fit_gouy_ridge, symmetric_samples, GouyPath};
use bateman_core::{BeamParams, HermiteGaussMode};
use serde::Serialize;
use serde_json::json;

use crate::error::CliError;
use crate::{Common, Format};

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Write {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn header(params: &BeamParams) -> serde_json::Value {
    json!({"version": ARTIFACT_VERSION, "params": params})
}

pub fn field(args: &Common) -> Result<(), CliError> {
    let (config, flags) = args.load()?;
    let grid = grid::evaluate(&config, &flags)?;
    let text = match args.format {
        Format::Csv => grid.to_csv(),
        Format::Json => {
            let mut s = grid.to_json();
            s.push('\n');
            s
        }
    };
    emit(args.out.as_deref(), &text)
}

pub fn verify(args: &Common) -> Result<(), CliError> {
    let (config, flags) = args.load()?;
    let params = config.params(&flags)?;
    let modes = config.mode_indices()?;
    let outcomes = suite::run_all(&params, &modes, &config.verify)?;
    for o in &outcomes {
        eprintln!("{} {:?}: {}", if o.passed { "PASS" } else { "FAIL" }, o.suite, o.summary);
    }
    let mut bundle = header(&params);
    bundle["modes"] = json!(modes);
    bundle["options"] = json!(config.verify);
    bundle["suites"] = json!(outcomes);
    bundle["passed"] = json!(outcomes.iter().all(|o| o.passed));
    emit(args.out.as_deref(), &pretty(&bundle))?;
    let failed: Vec<String> = outcomes.iter().filter(|o| !o.passed).map(|o| format!("{:?}", o.suite)).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("failing suites: {}", failed.join(", "))))
    }
}

pub fn gouy(args: &Common) -> Result<(), CliError> {
    let (config, flags) = args.load()?;
    let params = config.params(&flags)?;
    let modes = config.mode_indices()?;
    let opts = &config.gouy;
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for &mode in &modes {
        let beam = HermiteGaussMode::normalized(params, mode);
        let samples = symmetric_samples(&beam, opts.span, opts.samples);
        let report = match opts.path {
            Some(GouyPath::OnAxis) => fit_gouy(&beam, &samples)?,
            Some(GouyPath::Ridge) => fit_gouy_ridge(&beam, &samples)?,
            None => fit_gouy_auto(&beam, &samples)?,
        };
        let expected = -mode.gouy_factor();
        let expected_span = expected * 2.0 * opts.span.atan();
        if (report.fitted_amplitude - expected).abs() > GOUY_TOLERANCE
            || (report.accumulated_phase - expected_span).abs() > GOUY_TOLERANCE
        {
            failures.push(mode.to_string());
        }
        reports.push((report, expected, expected_span));
    }
    let fits: Vec<serde_json::Value> = reports
        .iter()
        .map(|(r, expected, span)| {
            json!({
                "mode": r.mode, "path": r.path,
                "fitted_amplitude": r.fitted_amplitude, "expected_amplitude": expected,
                "fitted_scale": r.fitted_scale, "fitted_offset": r.fitted_offset,
                "rms_fit_error": r.rms_fit_error,
                "accumulated_phase": r.accumulated_phase, "expected_accumulated_phase": span,
            })
        })
        .collect();
    let mut fit_doc = header(&params);
    fit_doc["fits"] = json!(fits);
    match args.format {
        Format::Json => {
            fit_doc["samples"] = json!(reports.iter().map(|(r, _, _)| &r.samples).collect::<Vec<_>>());
            emit(args.out.as_deref(), &pretty(&fit_doc))?;
        }
        Format::Csv => {
            let mut csv = String::from("m,n,s,phase\n");
            for (r, _, _) in &reports {
                for smp in &r.samples {
                    let _ = writeln!(csv, "{},{},{:.16e},{:.16e}", r.mode.m, r.mode.n, smp.s, smp.phase);
                }
            }
            emit(args.out.as_deref(), &csv)?;
            match &args.out {
                Some(path) => emit(Some(&path.with_extension("fit.json")), &pretty(&fit_doc))?,
                None => eprint!("{}", pretty(&fit_doc)),
            }
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("Gouy fit off for modes {}", failures.join(", "))))
    }
}

pub fn compare(args: &Common) -> Result<(), CliError> {
    let (config, flags) = args.load()?;
    let params = config.params(&flags)?;
    let opts = &config.compare;
    let report = compare_sweep(&params, &opts.paraxialities, opts.points, opts.seed)?;
    let text = match args.format {
        Format::Json => {
            let mut doc = header(&params);
            doc["report"] = json!(report);
            pretty(&doc)
        }
        Format::Csv => {
            let mut csv = String::from("paraxiality,max_deviation,rms_deviation\n");
            for l in &report.levels {
                let _ = writeln!(csv, "{:.16e},{:.16e},{:.16e}", l.paraxiality, l.max_deviation, l.rms_deviation);
            }
            csv
        }
    };
    emit(args.out.as_deref(), &text)?;
    eprintln!("fitted order {:.3}, minimum pairwise order {:.3}", report.fitted_order, report.min_pairwise_order);
    if report.min_pairwise_order >= suite::ALTERNATE_MIN_ORDER {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "deviation order {:.3} below {}",
            report.min_pairwise_order,
            suite::ALTERNATE_MIN_ORDER
        )))
    }
}
