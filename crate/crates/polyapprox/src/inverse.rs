//! Odd Chebyshev approximation `g` of `1/x` on `D_c`.

use qls_costkit::{chebyshev_params_effective, ln_halftail_seq};

use crate::error::{ApproxError, Result};
use crate::poly::{ApproxPolynomial, Basis, Domain, LogCoeff, Parity};

/// Default cap on `j0` beyond which coefficients are not materialized.
pub const DEFAULT_MAX_J0: u64 = 1_000_000;

/// `g(x) = 4 sum_{j=0}^{j0} (-1)^j P(X > b + j) T_{2j+1}(x)`, `X ~ Bin(2b, 1/2)`, with
/// `b = ceil(c^2 log2(c/eps))` and `j0 = ceil(sqrt(b log2(4b/eps)))`.
pub fn cheb_inverse_coeffs(c: f64, epsilon: f64) -> Result<ApproxPolynomial> {
    cheb_inverse_coeffs_capped(c, epsilon, DEFAULT_MAX_J0)
}

pub fn cheb_inverse_coeffs_capped(c: f64, epsilon: f64, max_j0: u64) -> Result<ApproxPolynomial> {
    if !(c > 1.0) {
        return Err(ApproxError::Domain(format!("effective condition number must exceed 1, got {c}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(ApproxError::EpsilonOutOfRange(epsilon));
    }
    let cp = chebyshev_params_effective(c, epsilon)?;
    if cp.j0 > max_j0 {
        return Err(ApproxError::DegreeOverflow { j0: cp.j0, max: max_j0 });
    }
    let ln4 = 4f64.ln();
    let coeffs = ln_halftail_seq(cp.s, cp.j0)
        .into_iter()
        .enumerate()
        .map(|(j, lt)| if lt == f64::NEG_INFINITY { LogCoeff::zero() } else { LogCoeff { ln_abs: ln4 + lt, negative: j % 2 == 1 } })
        .collect();
    Ok(ApproxPolynomial::new(Basis::ChebyshevT, Parity::Odd, coeffs, 2 * cp.j0 + 1, Domain::dkappa(c), 2.0 * epsilon))
}

/// `(b, j0)` of [`cheb_inverse_coeffs`].
pub fn inverse_params(c: f64, epsilon: f64) -> Result<(u64, u64)> {
    let cp = chebyshev_params_effective(c, epsilon)?;
    Ok((cp.s, cp.j0))
}
