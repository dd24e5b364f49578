use std::path::PathBuf;

use qls_costkit::CostError;
use qls_generators::GenError;
use qls_instances::InstanceError;
use qls_polyapprox::ApproxError;
use qls_qaasim::QaaError;
use qls_simplexer::SimplexError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("report does not match the schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Cost(#[from] CostError),
    #[error(transparent)]
    Generator(#[from] GenError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error(transparent)]
    Qaa(#[from] QaaError),
    #[error(transparent)]
    Approx(#[from] ApproxError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl BenchError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        BenchError::Io { path: path.into(), source }
    }

    /// Process exit code: 3 for configuration errors, 1 for any other fatal error.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Config(_) => EXIT_CONFIG,
            _ => EXIT_FATAL,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FATAL: i32 = 1;
/// Some instances or checks failed; the rest was written.
pub const EXIT_PARTIAL: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

pub type Result<T> = std::result::Result<T, BenchError>;
