//! Scalar approximations used by the linear-solver cost model, with their numerical checks:
//! Bessel sequences, the truncated Jacobi–Anger expansion, the Chebyshev approximation of
//! `1/x`, the Fourier kernel, erf/sign/rect polynomials, the matrix-inversion polynomial and
//! the exact HHL success probability at toy scale.

pub mod bessel;
pub mod cheb;
pub mod error;
pub mod fourier;
pub mod hamsim;
pub mod hhl;
pub mod inverse;
pub mod mi;
pub mod poly;
pub mod sign;
pub mod validate;

pub use bessel::{bessel_i_scaled_seq, bessel_j_seq};
pub use error::{ApproxError, Result};
pub use fourier::{fourier_kernel, fourier_kernel_check, fourier_kernel_check_on, fourier_kernel_on, FourierGrid};
pub use hamsim::{eval_truncated_hamsim, hamsim_truncation_degree, TruncatedHamsim};
pub use hhl::{hhl_exact_success_prob, HhlToyModel};
pub use inverse::{cheb_inverse_coeffs, cheb_inverse_coeffs_capped, inverse_params};
pub use mi::{mi_poly_eval, MiPoly};
pub use poly::{ApproxPolynomial, Basis, Domain, LogCoeff, Parity};
pub use sign::{erf_poly_eval, rect_poly_eval, sign_poly_eval, ErfPoly, RectPoly, SignPoly};
pub use validate::{validate_all, ValidationRow};

pub type TruncatedHamsimF64 = TruncatedHamsim<f64>;
pub type TruncatedHamsimF32 = TruncatedHamsim<f32>;
pub type ErfPolyF64 = ErfPoly<f64>;
pub type SignPolyF64 = SignPoly<f64>;
pub type RectPolyF64 = RectPoly<f64>;
pub type RectPolyF32 = RectPoly<f32>;
