use std::path::PathBuf;

use adaptive_weno::cases::CaseError;
use adaptive_weno::SolverError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("the run diverged")]
    BlowUp {
        #[source]
        source: SolverError,
        /// Where the diagnostics were written, if anywhere.
        diagnostics: Option<PathBuf>,
    },
    #[error("malformed {what} in {}: {detail}", path.display())]
    Parse {
        what: &'static str,
        path: PathBuf,
        detail: String,
    },
    #[error(transparent)]
    Solver(SolverError),
}

impl BenchError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        BenchError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status: 1 for I/O, 2 for configuration, 3 for blow-up.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Io { .. } | BenchError::Parse { .. } | BenchError::Solver(_) => 1,
            BenchError::Config(_) => 2,
            BenchError::BlowUp { .. } => 3,
        }
    }
}

impl From<SolverError> for BenchError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::BlowUp { .. } => BenchError::BlowUp {
                source: e,
                diagnostics: None,
            },
            SolverError::Config(msg) => BenchError::Config(msg),
            SolverError::Recon(r) => BenchError::Config(r.to_string()),
            other => BenchError::Solver(other),
        }
    }
}

impl From<CaseError> for BenchError {
    fn from(e: CaseError) -> Self {
        match e {
            CaseError::Solver(s) => s.into(),
            other => BenchError::Config(other.to_string()),
        }
    }
}
