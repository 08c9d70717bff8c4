//! CLI error type and its process exit codes.

use kumachart::{CalibError, ChartError, FitError, McError};
use std::path::PathBuf;
use thiserror::Error;

/// Exit codes: 0 success, 1 other runtime failures, 2 usage (from the
/// argument parser), 3 data-file parse, 4 fit, 5 calibration infeasible,
/// 6 file I/O.
#[derive(Debug, Error)]
pub enum CliError {
    /// A data file held something other than a value in (0, 1).
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        /// One-based line number in the file.
        line: usize,
        message: String,
    },
    /// Estimation failed.
    #[error("fit failed: {0}")]
    Fit(#[from] FitError),
    /// Estimation finished without satisfying the convergence checks.
    #[error("fit did not converge; estimates are unreliable")]
    NotConverged,
    /// No rate satisfies the requested adjustment criterion.
    #[error("{0}")]
    Infeasible(CalibError),
    /// Reading or writing a file failed.
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    /// Anything else: invalid configuration, failed simulation, ...
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 3,
            CliError::Fit(_) | CliError::NotConverged => 4,
            CliError::Infeasible(_) => 5,
            CliError::Io { .. } => 6,
            CliError::Other(_) => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

impl From<CalibError> for CliError {
    fn from(err: CalibError) -> Self {
        match err {
            CalibError::Infeasible { .. } => CliError::Infeasible(err),
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<McError> for CliError {
    fn from(err: McError) -> Self {
        CliError::Other(err.to_string())
    }
}

impl From<ChartError> for CliError {
    fn from(err: ChartError) -> Self {
        CliError::Other(err.to_string())
    }
}
