//! Command implementations behind the `divbound` binary.

pub mod commands;
pub mod figure;
pub mod io;
pub mod verify;

use thiserror::Error;

/// Failures surfaced by the command layer, each tied to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input or an unwritable output path.
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Mismatch(String),
    /// A proven inequality failed on valid input.
    #[error("{0}")]
    TheoremViolation(String),
    #[error("{0}")]
    PropertyViolation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::PropertyViolation(_) => exit::PROPERTY_VIOLATION,
            CliError::Input(_) => exit::INPUT,
            CliError::Mismatch(_) => exit::MISMATCH,
            CliError::TheoremViolation(_) => exit::THEOREM_VIOLATION,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::AlphabetMismatch { .. } => CliError::Mismatch(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PROPERTY_VIOLATION: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const MISMATCH: i32 = 3;
    pub const THEOREM_VIOLATION: i32 = 4;
}
