use std::path::PathBuf;

use bateman_core::BeamError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },

    #[error("{}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Beam(#[from] BeamError),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 1 verification failure, 2 bad configuration or I/O, 3 numeric guard.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Beam(
                BeamError::Overflow(_) | BeamError::NonFiniteIntegrand { .. } | BeamError::QuadratureNonConvergence { .. },
            ) => 3,
            _ => 2,
        }
    }
}
