//! Erf, sign and rectangle polynomials built from scaled modified Bessel functions.

use qls_costkit::{rect_degree, Real};

use crate::bessel::bessel_i_scaled_seq;
use crate::cheb::clenshaw_odd;
use crate::error::{ApproxError, Result};

/// Odd degree-`n` Chebyshev approximation of `erf(k x)` on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct ErfPoly<T> {
    pub k: T,
    pub n: u64,
    /// Coefficients of `T_1, T_3, ..., T_n`.
    pub coeffs: Vec<T>,
}

impl<T: Real> ErfPoly<T> {
    pub fn new(k: T, n: u64) -> Result<Self> {
        if n % 2 == 0 {
            return Err(ApproxError::Domain(format!("erf polynomial degree must be odd, got {n}")));
        }
        if !(k > T::zero()) || !k.is_finite() {
            return Err(ApproxError::Domain(format!("erf sharpness must be positive, got {k}")));
        }
        let m = ((n - 1) / 2) as usize;
        let q = k * k / T::lit(2.0);
        // e^{-k^2/2} I_j(k^2/2) is the scaled Bessel value
        let iv = bessel_i_scaled_seq(q, m + 1);
        let pref = T::lit(2.0) * k / T::PI().sqrt();
        let sgn = |j: usize| if j % 2 == 0 { T::one() } else { -T::one() };
        let mut coeffs = Vec::with_capacity(m + 1);
        for j in 0..m {
            let d = T::from_usize(2 * j + 1).expect("j");
            coeffs.push(pref * sgn(j) * (iv[j] + iv[j + 1]) / d);
        }
        coeffs.push(pref * sgn(m) * iv[m] / T::from_u64(n).expect("n"));
        Ok(ErfPoly { k, n, coeffs })
    }

    pub fn eval(&self, x: T) -> T {
        clenshaw_odd(&self.coeffs, x)
    }
}

/// Largest admissible sign-approximation accuracy `2 sqrt(2/(e pi))`.
pub fn sign_epsilon_limit() -> f64 {
    2.0 * (2.0 / (std::f64::consts::E * std::f64::consts::PI)).sqrt()
}

/// `p_sign(x) = p_erf((x - a)/2, 2k, n)`, `epsilon`-close to `sign(x - a)` for `|x - a| >= K/2`.
#[derive(Debug, Clone)]
pub struct SignPoly<T> {
    pub a: T,
    pub width: T,
    pub epsilon: T,
    pub k: T,
    pub n_exp: u64,
    pub erf: ErfPoly<T>,
}

impl<T: Real> SignPoly<T> {
    pub fn new(a: T, width: T, epsilon: T) -> Result<Self> {
        let e = epsilon.to64();
        if !(e > 0.0 && e < sign_epsilon_limit()) {
            return Err(ApproxError::EpsilonOutOfRange(e));
        }
        if !(width > T::zero()) || !(a.abs() <= T::one()) {
            return Err(ApproxError::Domain(format!("need K > 0 and |a| <= 1, got K = {width}, a = {a}")));
        }
        let (n, n_exp, k) = rect_degree(width, epsilon)?;
        let erf = ErfPoly::new(T::lit(2.0) * k, n)?;
        Ok(SignPoly { a, width, epsilon, k, n_exp, erf })
    }

    pub fn degree(&self) -> u64 {
        self.erf.n
    }

    /// Value at `x`; the shift keeps the Chebyshev argument in `[-1, 1]` for `x, a` there.
    pub fn eval(&self, x: T) -> T {
        self.erf.eval((x - self.a) / T::lit(2.0))
    }

    /// Whether `x` lies where the accuracy guarantee applies.
    pub fn in_valid_region(&self, x: T) -> bool {
        x.abs() <= T::one() && (x - self.a).abs() >= self.width / T::lit(2.0)
    }
}

/// `p_rect(x) = (p_sign(x + a) - p_sign(x - a)) / 2` with `a = t + delta/4`, `K = delta/2`:
/// approximates the indicator of `|x| < t`, invalid on `t < |x| < t + delta/2`.
#[derive(Debug, Clone)]
pub struct RectPoly<T> {
    pub t: T,
    pub delta: T,
    pub epsilon: T,
    pub sign: SignPoly<T>,
}

impl<T: Real> RectPoly<T> {
    pub fn new(t: T, delta: T, epsilon: T) -> Result<Self> {
        if !(t > T::zero()) || !(delta > T::zero()) || !(t + delta / T::lit(2.0) <= T::one()) {
            return Err(ApproxError::Domain(format!("need t, delta > 0 and t + delta/2 <= 1, got {t}, {delta}")));
        }
        let centre = t + delta / T::lit(4.0);
        let sign = SignPoly::new(centre, delta / T::lit(2.0), epsilon)?;
        Ok(RectPoly { t, delta, epsilon, sign })
    }

    pub fn degree(&self) -> u64 {
        self.sign.degree()
    }

    pub fn eval(&self, x: T) -> T {
        // p_sign centred at zero, evaluated at x + a and x - a
        let a = self.sign.a;
        let h = T::lit(0.5);
        let two = T::lit(2.0);
        h * (self.sign.erf.eval((x + a) / two) - self.sign.erf.eval((x - a) / two))
    }

    pub fn in_valid_region(&self, x: T) -> bool {
        let ax = x.abs();
        ax <= T::one() && (ax <= self.t || ax >= self.t + self.delta / T::lit(2.0))
    }

    /// Indicator of `|x| < t`, the target on the valid region.
    pub fn target(&self, x: T) -> T {
        if x.abs() <= self.t {
            T::one()
        } else {
            T::zero()
        }
    }
}

/// `p_erf(x, k, n)`.
pub fn erf_poly_eval<T: Real>(x: T, k: T, n: u64) -> Result<T> {
    Ok(ErfPoly::new(k, n)?.eval(x))
}

/// `p_sign(x)` for a transition at `a` of half-width `K`.
pub fn sign_poly_eval<T: Real>(x: T, a: T, width: T, epsilon: T) -> Result<T> {
    Ok(SignPoly::new(a, width, epsilon)?.eval(x))
}

/// `p_rect,t,delta,eps(x)`.
pub fn rect_poly_eval<T: Real>(x: T, t: T, delta: T, epsilon: T) -> Result<T> {
    Ok(RectPoly::new(t, delta, epsilon)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_vanishes_at_its_centre() {
        let s = SignPoly::new(0.3f64, 0.5, 0.05).unwrap();
        assert_eq!(s.eval(0.3), 0.0);
        let z = SignPoly::new(0.0f64, 0.5, 0.05).unwrap();
        assert_eq!(z.eval(0.0), 0.0);
    }

    #[test]
    fn rect_is_even() {
        let r = RectPoly::new(0.25f64, 0.25, 0.05).unwrap();
        for &x in &[0.0, 0.1, 0.33, 0.8, 1.0] {
            assert_eq!(r.eval(x), r.eval(-x));
        }
    }

    #[test]
    fn epsilon_range_is_enforced() {
        assert!(matches!(SignPoly::new(0.0f64, 0.5, 0.97), Err(ApproxError::EpsilonOutOfRange(_))));
        assert!(SignPoly::new(0.0f64, 0.5, 0.96).is_ok());
        assert!(RectPoly::new(0.9f64, 0.5, 0.1).is_err());
    }
}
