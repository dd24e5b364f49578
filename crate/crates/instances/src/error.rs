use thiserror::Error;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("matrix is not Hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },
    #[error("entry ({row}, {col}) outside dimension {n}")]
    IndexOutOfRange { row: usize, col: usize, n: usize },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("rhs has length {rhs}, matrix has dimension {n}")]
    DimensionMismatch { n: usize, rhs: usize },
    #[error("matrix is singular to working precision (|lambda_min| = {lambda_min:e}, |lambda_max| = {lambda_max:e})")]
    SingularMatrix { lambda_min: f64, lambda_max: f64 },
    #[error("dimension {n} above the dense threshold {threshold}")]
    DimensionTooLarge { n: usize, threshold: usize },
    #[error("instance carries no ground-truth condition number")]
    MissingGroundTruth,
    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },
    #[error("reference solve residual {residual:e} exceeds {bound:e}")]
    ResidualTooLarge { residual: f64, bound: f64 },
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("rhs is zero")]
    ZeroRhs,
    #[error("invalid id {0:?}: ids must be non-empty and free of whitespace")]
    InvalidId(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("checksum mismatch: file says {expected:08x}, payload gives {found:08x}")]
    ChecksumMismatch { expected: u32, found: u32 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, InstanceError>;
