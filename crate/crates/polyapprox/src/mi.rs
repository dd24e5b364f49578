//! Matrix-inversion polynomial `P_MI`, bounded by one on `[-1, 1]`.

use crate::error::{ApproxError, Result};
use crate::inverse::{cheb_inverse_coeffs_capped, DEFAULT_MAX_J0};
use crate::poly::ApproxPolynomial;
use crate::sign::RectPoly;

/// `P_MI(x) = (1 - P_rect(x)) / (1 + eps_inv) * g(x) / (2 kappa')` with `kappa' = d kappa`,
/// `eps_inv = eps/2`, `eps_rect = min(eps/2, kappa'/(2 j0))` and the rectangle of half-width
/// `1/(2 kappa')`, transition width `1/kappa'`.
#[derive(Debug, Clone)]
pub struct MiPoly {
    pub kappa_eff: f64,
    pub epsilon: f64,
    pub eps_inv: f64,
    pub eps_rect: f64,
    pub inverse: ApproxPolynomial,
    pub j0: u64,
    pub rect: RectPoly<f64>,
}

impl MiPoly {
    pub fn new(d: u64, kappa: f64, epsilon: f64) -> Result<Self> {
        Self::with_cap(d, kappa, epsilon, DEFAULT_MAX_J0)
    }

    pub fn with_cap(d: u64, kappa: f64, epsilon: f64, max_j0: u64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(ApproxError::EpsilonOutOfRange(epsilon));
        }
        let ke = d as f64 * kappa;
        if !(ke > 1.0) {
            return Err(ApproxError::Domain(format!("need d kappa > 1, got {ke}")));
        }
        let eps_inv = epsilon / 2.0;
        let inverse = cheb_inverse_coeffs_capped(ke, eps_inv, max_j0)?;
        let j0 = (inverse.degree - 1) / 2;
        let eps_rect = (epsilon / 2.0).min(ke / (2.0 * j0 as f64));
        let rect = RectPoly::new(1.0 / (2.0 * ke), 1.0 / ke, eps_rect)?;
        Ok(MiPoly { kappa_eff: ke, epsilon, eps_inv, eps_rect, inverse, j0, rect })
    }

    pub fn degree(&self) -> u64 {
        self.inverse.degree + self.rect.degree()
    }

    pub fn eval(&self, x: f64) -> f64 {
        (1.0 - self.rect.eval(x)) / (1.0 + self.eps_inv) * self.inverse.eval(x) / (2.0 * self.kappa_eff)
    }

    /// `1 / (2 kappa' x)`, the target on `D_kappa'`.
    pub fn target(&self, x: f64) -> f64 {
        1.0 / (2.0 * self.kappa_eff * x)
    }
}

pub fn mi_poly_eval(x: f64, d: u64, kappa: f64, epsilon: f64) -> Result<f64> {
    Ok(MiPoly::new(d, kappa, epsilon)?.eval(x))
}
