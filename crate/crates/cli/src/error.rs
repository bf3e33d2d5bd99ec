//! Command errors and their exit codes.

use std::path::PathBuf;

use ternary_invariants::{InvariantError, RewriteError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("{0}")]
    Verification(String),
    /// A failure already reported per entry, carrying its exit code.
    #[error("{0}")]
    Reported(String, u8),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Input { .. } => 1,
            CliError::Invariant(e) => invariant_code(e),
            CliError::Rewrite(RewriteError::NotInvariant { .. }) => 3,
            CliError::Rewrite(_) => 1,
            CliError::Verification(_) => 5,
            CliError::Reported(_, code) => *code,
        }
    }
}

pub fn invariant_code(e: &InvariantError) -> u8 {
    match e {
        InvariantError::Degenerate { .. } => 2,
        InvariantError::NoUnambiguousReconstruction(_) | InvariantError::RepeatedLambda => 4,
        _ => 1,
    }
}
