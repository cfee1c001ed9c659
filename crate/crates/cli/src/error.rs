//! CLI error channel with the exit-code discipline: domain/data problems
//! exit 1, usage problems exit 2.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, malformed key=value input, unknown config keys.
    Usage(String),
    /// Invalid data or a failed computation.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Domain(msg) => write!(f, "error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<fiscalis_core::Error> for CliError {
    fn from(e: fiscalis_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
