use qls_costkit::CostError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ApproxError {
    #[error("epsilon {0} outside the admissible range")]
    EpsilonOutOfRange(f64),
    #[error("{0}")]
    Domain(String),
    #[error("truncation index j0 = {j0} exceeds the configured maximum {max}; only bounds are available")]
    DegreeOverflow { j0: u64, max: u64 },
    #[error("eigenvalue {lambda} outside D_kappa for kappa = {kappa}")]
    EigenvalueOutOfDomain { lambda: f64, kappa: f64 },
    #[error("clock size {t} exceeds the maximum {max}")]
    ClockTooLarge { t: u64, max: u64 },
    #[error(transparent)]
    Cost(#[from] CostError),
}

pub type Result<T> = std::result::Result<T, ApproxError>;
