//! Truncated Jacobi–Anger expansion of `e^{-i lambda t}` on `[-1, 1]`.

use num_complex::Complex;
use qls_costkit::Real;

use crate::bessel::bessel_j_seq;
use crate::cheb::{clenshaw_even, clenshaw_odd};
use crate::error::{ApproxError, Result};

/// `ln` of the tail bound `(4 / (3 sqrt(pi))) (e t / (4 (R+1)))^{2(R+1)}`.
pub fn ln_truncation_bound(t: f64, r: u64) -> f64 {
    let q = 2.0 * (r + 1) as f64;
    (4.0 / (3.0 * std::f64::consts::PI.sqrt())).ln() + q * (std::f64::consts::E * t / (2.0 * q)).ln()
}

/// Smallest `R >= 0` whose tail bound is at most `epsilon`.
///
/// The bound exceeds one while `R + 1 <= t/4`, and decreases afterwards, so the admissible
/// set is upward closed and a doubling-then-bisection search is exact.
pub fn hamsim_truncation_degree(t: f64, epsilon: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(ApproxError::EpsilonOutOfRange(epsilon));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(ApproxError::Domain(format!("time must be finite and >= 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(0);
    }
    let le = epsilon.ln();
    let ok = |r: u64| ln_truncation_bound(t, r) <= le;
    if ok(0) {
        return Ok(0);
    }
    let mut hi = 1u64;
    while !ok(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    // invariant: !ok(lo), ok(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Chebyshev coefficients of the truncated cos and sin series.
#[derive(Debug, Clone)]
pub struct TruncatedHamsim<T> {
    pub t: T,
    pub r: u64,
    /// `c_k` of `T_{2k}`, `k = 0..=R`: `J_0` then `2 (-1)^k J_{2k}`.
    pub cos_coeffs: Vec<T>,
    /// `s_k` of `T_{2k+1}`, `k = 0..=R`: `2 (-1)^k J_{2k+1}`.
    pub sin_coeffs: Vec<T>,
}

impl<T: Real> TruncatedHamsim<T> {
    pub fn new(t: T, r: u64) -> Self {
        let r_us = r as usize;
        let j = bessel_j_seq(t, 2 * r_us + 1);
        let two = T::lit(2.0);
        let sgn = |k: usize| if k % 2 == 0 { T::one() } else { -T::one() };
        let cos_coeffs = (0..=r_us).map(|k| if k == 0 { j[0] } else { two * sgn(k) * j[2 * k] }).collect();
        let sin_coeffs = (0..=r_us).map(|k| two * sgn(k) * j[2 * k + 1]).collect();
        TruncatedHamsim { t, r, cos_coeffs, sin_coeffs }
    }

    pub fn cos_part(&self, lambda: T) -> T {
        clenshaw_even(&self.cos_coeffs, lambda)
    }

    pub fn sin_part(&self, lambda: T) -> T {
        clenshaw_odd(&self.sin_coeffs, lambda)
    }

    /// `cos(t lambda) - i sin(t lambda)` approximated by the truncated series.
    pub fn eval(&self, lambda: T) -> Complex<T> {
        Complex::new(self.cos_part(lambda), -self.sin_part(lambda))
    }
}

pub fn eval_truncated_hamsim<T: Real>(lambda: T, t: T, r: u64) -> Complex<T> {
    TruncatedHamsim::new(t, r).eval(lambda)
}
