//! Benchmark instance generators: block-diagonal semi-random Hermitian systems with a
//! prescribed condition number and sparsity, and finite-difference Poisson problems on
//! `[-1, 1]^D` with closed-form spectra.

pub mod error;
pub mod poisson;
pub mod random;

pub use error::{GenError, Result};
pub use poisson::{gen_poisson, gen_poisson_points, poisson_kappa_closed_form, PoissonSpec, DEFAULT_MAX_DIM};
pub use random::{gen_random, gen_random_parts, haar_unitary, EigenvalueLaw, RandomParts, RandomSpec};
