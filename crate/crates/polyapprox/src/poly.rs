//! Coefficient sequences with a named basis, validity domain and error budget.

use qls_costkit::Real;

use crate::cheb::{clenshaw, clenshaw_even, clenshaw_odd};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    ChebyshevT,
    /// `sum_m c_m sin(m omega lambda)`.
    FourierSine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
    Mixed,
}

/// `[-1, -1/kappa] U [1/kappa, 1]`, or all of `[-1, 1]` when `kappa` is `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub kappa: Option<f64>,
}

impl Domain {
    pub fn full() -> Self {
        Domain { kappa: None }
    }

    pub fn dkappa(kappa: f64) -> Self {
        Domain { kappa: Some(kappa) }
    }

    pub fn contains(&self, x: f64) -> bool {
        match self.kappa {
            None => x.abs() <= 1.0,
            Some(k) => x.abs() <= 1.0 && x.abs() >= 1.0 / k,
        }
    }
}

/// Signed coefficient kept as `(ln |c|, sign)` so that magnitudes far below the float range
/// survive construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogCoeff {
    pub ln_abs: f64,
    pub negative: bool,
}

impl LogCoeff {
    pub fn zero() -> Self {
        LogCoeff { ln_abs: f64::NEG_INFINITY, negative: false }
    }

    pub fn from_value(v: f64) -> Self {
        LogCoeff { ln_abs: v.abs().ln(), negative: v < 0.0 }
    }

    pub fn value(&self) -> f64 {
        let m = self.ln_abs.exp();
        if self.negative {
            -m
        } else {
            m
        }
    }
}

/// Series whose coefficients run over the basis functions of its parity only: for odd
/// parity `coeffs[j]` multiplies `T_{2j+1}`, for even `T_{2j}`, for mixed `T_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxPolynomial {
    pub basis: Basis,
    pub parity: Parity,
    pub coeffs: Vec<LogCoeff>,
    pub degree: u64,
    pub domain: Domain,
    pub error_budget: f64,
    /// Angular step of the `FourierSine` basis; unused for Chebyshev.
    pub omega: f64,
    scale_ln: f64,
    normalized: Vec<f64>,
}

impl ApproxPolynomial {
    pub fn new(basis: Basis, parity: Parity, coeffs: Vec<LogCoeff>, degree: u64, domain: Domain, error_budget: f64) -> Self {
        let scale_ln = coeffs.iter().map(|c| c.ln_abs).fold(f64::NEG_INFINITY, f64::max);
        let scale_ln = if scale_ln.is_finite() { scale_ln } else { 0.0 };
        let normalized = coeffs
            .iter()
            .map(|c| {
                let m = (c.ln_abs - scale_ln).exp();
                if c.negative {
                    -m
                } else {
                    m
                }
            })
            .collect();
        ApproxPolynomial { basis, parity, coeffs, degree, domain, error_budget, omega: 0.0, scale_ln, normalized }
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = omega;
        self
    }

    /// Number of stored coefficients implied by the degree, basis and parity.
    pub fn expected_count(&self) -> usize {
        let d = self.degree as usize;
        match (self.basis, self.parity) {
            (Basis::ChebyshevT, Parity::Odd) => d.div_ceil(2),
            (Basis::ChebyshevT, Parity::Even) => d / 2 + 1,
            _ => d + 1,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let s = self.scale_ln.exp();
        let v = match (self.basis, self.parity) {
            (Basis::ChebyshevT, Parity::Odd) => clenshaw_odd(&self.normalized, x),
            (Basis::ChebyshevT, Parity::Even) => clenshaw_even(&self.normalized, x),
            (Basis::ChebyshevT, Parity::Mixed) => clenshaw(&self.normalized, x),
            (Basis::FourierSine, _) => {
                let mut acc = qls_costkit::Neumaier::new();
                for (m, c) in self.normalized.iter().enumerate() {
                    if *c != 0.0 {
                        acc.add(c * (m as f64 * self.omega * x).sin());
                    }
                }
                acc.value()
            }
        };
        s * v
    }

    /// Generic-scalar evaluation of a Chebyshev series.
    pub fn eval_real<T: Real>(&self, x: T) -> T {
        let c: Vec<T> = self.normalized.iter().map(|&v| T::lit(v)).collect();
        let s = T::lit(self.scale_ln.exp());
        s * match self.parity {
            Parity::Odd => clenshaw_odd(&c, x),
            Parity::Even => clenshaw_even(&c, x),
            Parity::Mixed => clenshaw(&c, x),
        }
    }
}
