use std::path::PathBuf;

use fourierfit_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: line {line}: {message}")]
    Parse { path: PathBuf, line: u64, message: String },

    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// 2 usage/config, 3 input, 4 numerical, 1 anything else (output I/O).
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse { .. } | CliError::Read { .. } => 3,
            CliError::Write { .. } => 1,
            CliError::Core(e) => match e {
                CoreError::Config { .. }
                | CoreError::NotPowerOfTwo(_)
                | CoreError::GridCollision { .. }
                | CoreError::NoTrainingSamples(_) => 2,
                CoreError::Dataset(_) | CoreError::DuplicateX(_) | CoreError::DegenerateRange(_) => 3,
                _ => 4,
            },
        }
    }
}
