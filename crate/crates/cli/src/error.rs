use std::path::PathBuf;

use robust_bandits::BanditError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("{failed} of {total} episodes violated an invariant")]
    Invariant { failed: usize, total: usize },
}

impl CliError {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    /// 1 for I/O, 2 for configuration, 3 for invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Config { .. } => 2,
            CliError::Invariant { .. } => 3,
        }
    }
}

impl From<BanditError> for CliError {
    fn from(err: BanditError) -> Self {
        match err {
            BanditError::Config { field, message } => CliError::Config { field, message },
            other => CliError::config("config", other.to_string()),
        }
    }
}
