use qls_instances::InstanceError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("unsupported Poisson dimension {0} (expected 1, 2 or 3)")]
    DimensionUnsupported(usize),
    #[error("instance dimension {n} exceeds the configured maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

pub type Result<T> = std::result::Result<T, GenError>;
