use std::path::PathBuf;

use orbiklt::{ExactError, GermError, GraphError, OrbifoldError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
    #[error("{0}")]
    NotNegativeDefinite(GraphError),
    #[error("{0}")]
    NotSpecial(OrbifoldError),
    #[error("{0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Parse { .. } => 3,
            CliError::NotNegativeDefinite(_) => 4,
            CliError::NotSpecial(_) => 5,
            CliError::Unsupported(_) => 6,
            CliError::Validation(_) => 7,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::NotNegativeDefinite => CliError::NotNegativeDefinite(e),
            GraphError::Unsupported(msg) => CliError::Unsupported(msg.to_string()),
            GraphError::WrongClass { .. } => CliError::Unsupported(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<GermError> for CliError {
    fn from(e: GermError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<OrbifoldError> for CliError {
    fn from(e: OrbifoldError) -> Self {
        match e {
            OrbifoldError::NotSpecial(_) => CliError::NotSpecial(e),
            other => CliError::Validation(other.to_string()),
        }
    }
}
