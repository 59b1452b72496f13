//! `beam`: evaluate exact Hermite-Gaussian beams on grids and run the
//! numerical verification suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;

use error::CliError;

#[derive(Parser)]
#[command(name = "beam", version, about = "Exact Bateman-Hillion Hermite-Gaussian beams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a field or density over the configured grid.
    Field(Common),
    /// Run verification suites; exits 1 if any fails.
    Verify(Common),
    /// Extract and fit the Gouy phase of each configured mode.
    Gouy(Common),
    /// Compare the Gaussian mode with the complex-source solution.
    Compare(Common),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
pub struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Work in units of w0 (lengths) and w0 / v (times).
    #[arg(long)]
    natural_units: bool,
    /// Omit the 2 / v Jacobian from constrained densities.
    #[arg(long)]
    raw_eq19: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Field(c) => commands::field(c),
        Command::Verify(c) => commands::verify(c),
        Command::Gouy(c) => commands::gouy(c),
        Command::Compare(c) => commands::compare(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("beam: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

impl Common {
    fn load(&self) -> Result<(bateman_core::RunConfig, bateman_core::grid::RunFlags), CliError> {
        let text = std::fs::read_to_string(&self.config).map_err(|source| CliError::Read {
            path: self.config.clone(),
            source,
        })?;
        let config = bateman_core::RunConfig::from_json(&text).map_err(|e| CliError::Parse {
            path: self.config.clone(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let flags = bateman_core::grid::RunFlags {
            natural_units: self.natural_units,
            density: if self.raw_eq19 {
                bateman_core::DensityConvention::WithoutJacobian
            } else {
                bateman_core::DensityConvention::WithJacobian
            },
        };
        Ok((config, flags))
    }
}
