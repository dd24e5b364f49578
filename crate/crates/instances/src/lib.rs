//! Linear-system instances `A x = b` with Hermitian sparse `A`: construction, classical
//! metrics, spectral normalization, reference solves and a checksummed text format.

pub mod error;
pub mod instance;
pub mod io;
pub mod linalg;
pub mod metrics;
pub mod sparse;

pub use error::{InstanceError, Result};
pub use instance::{vec_norm, Instance, ScaleRecord, Source};
pub use io::{from_text, load_instance, save_instance, to_text};
pub use metrics::{compute_metrics, normalize, rescaled, solve_reference, InstanceMetrics, KappaSource, MetricsConfig, MetricsMode};
pub use sparse::SparseHermitian;

pub use num_complex::Complex64;
