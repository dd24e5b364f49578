use qls_instances::InstanceError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimplexError {
    #[error("MPS parse error in {section} at line {line}: {message}")]
    Parse { section: String, line: usize, message: String },
    #[error("unsupported MPS feature: {0}")]
    UnsupportedFeature(String),
    #[error("LP is infeasible (phase-1 objective {0:e})")]
    Infeasible(f64),
    #[error("LP is unbounded (detected after {iteration} pivots)")]
    Unbounded { iteration: usize },
    #[error("iteration limit {0} reached")]
    IterationLimit(usize),
    #[error("{rows} constraint rows exceed the dense limit {max}")]
    TooLarge { rows: usize, max: usize },
    #[error("basis matrix is singular (smallest pivot {pivot:e})")]
    SingularBasis { pivot: f64 },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, SimplexError>;
