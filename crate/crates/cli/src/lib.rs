//! Command implementations behind the `patchwork` binary.

pub mod census;
pub mod commands;
pub mod plot;

use std::path::PathBuf;

use thiserror::Error;

use patchwork::generators::GeneratorError;
use patchwork::{InstanceError, PipelineError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}", path = .path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(#[from] InstanceError),
    #[error("rejected: {0}")]
    Rejected(PipelineError),
    #[error(transparent)]
    Pipeline(PipelineError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("bound violated at triangulation {tri_index}, signs {sign_index}: {detail}")]
    BoundViolation {
        tri_index: u64,
        sign_index: u64,
        detail: String,
    },
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::NotTriangulation | PipelineError::NotFull { .. } => {
                CliError::Rejected(e)
            }
            PipelineError::Subdivision(patchwork::SubdivisionError::Instance(inner)) => {
                CliError::Parse(inner)
            }
            other => CliError::Pipeline(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Rejected(_) => 3,
            CliError::BoundViolation { .. } => 4,
            _ => 1,
        }
    }
}

pub(crate) fn read_file(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
