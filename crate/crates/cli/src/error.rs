use std::io;
use std::path::PathBuf;

use kunz_core::lattice::{CheckpointError, LatticeError};
use kunz_core::verifier::VerifyError;

/// Failures, each mapped to a sysexits-style status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Data(_) => 65,
            CliError::Io { .. } => 74,
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }

    pub fn from_checkpoint(path: impl Into<PathBuf>, err: CheckpointError) -> CliError {
        match err {
            CheckpointError::Io(source) => CliError::Io {
                path: path.into(),
                source,
            },
            other => CliError::Data(format!("{}: {other}", path.into().display())),
        }
    }

    pub fn from_lattice(path: Option<&PathBuf>, err: LatticeError) -> CliError {
        match (err, path) {
            (LatticeError::Checkpoint(e), Some(p)) => CliError::from_checkpoint(p, e),
            (e, _) => CliError::Data(e.to_string()),
        }
    }

    pub fn from_verify(path: Option<&PathBuf>, err: VerifyError) -> CliError {
        match err {
            VerifyError::Lattice(e) => CliError::from_lattice(path, e),
            VerifyError::Kunz(e) => CliError::Usage(e.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}
