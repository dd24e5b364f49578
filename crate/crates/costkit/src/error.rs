use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CostError {
    #[error("epsilon must lie in (0, 1), got {0}")]
    InvalidEpsilon(f64),
    #[error("scaled time must be finite and non-negative, got {0}")]
    NegativeTime(f64),
    #[error("invalid probabilities p = {p}, p0 = {p0}: need 0 < p0 <= p <= 1")]
    InvalidProbability { p: f64, p0: f64 },
    #[error("growth constant must lie in (1, 2), got {0}")]
    InvalidGrowth(f64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("count overflows 64 bits: {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, CostError>;
