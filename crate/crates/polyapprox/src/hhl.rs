//! Exact flag-success probability of HHL with the sine-weighted clock, at toy scale.

use num_complex::Complex64;
use qls_costkit::hhl_time_constant;

use crate::error::{ApproxError, Result};

/// Largest clock dimension accepted.
pub const MAX_CLOCK: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
pub struct HhlToyModel {
    /// Eigenvalues in `[1/kappa, 1]`.
    pub eigenvalues: Vec<f64>,
    /// Amplitudes of `b` in the eigenbasis, unit norm.
    pub amplitudes: Vec<f64>,
    pub kappa: f64,
    pub t0: f64,
}

impl HhlToyModel {
    /// Model with `t0 = sqrt(c_F) kappa / eps`; amplitudes are normalized here.
    pub fn new(eigenvalues: Vec<f64>, amplitudes: Vec<f64>, kappa: f64, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(ApproxError::EpsilonOutOfRange(epsilon));
        }
        let t0 = hhl_time_constant::<f64>().sqrt() * kappa / epsilon;
        Self::with_time(eigenvalues, amplitudes, kappa, t0)
    }

    pub fn with_time(eigenvalues: Vec<f64>, amplitudes: Vec<f64>, kappa: f64, t0: f64) -> Result<Self> {
        if eigenvalues.len() != amplitudes.len() || eigenvalues.is_empty() {
            return Err(ApproxError::Domain("eigenvalues and amplitudes must be non-empty and of equal length".into()));
        }
        if !(kappa >= 1.0) || !(t0 > 0.0) {
            return Err(ApproxError::Domain(format!("need kappa >= 1 and t0 > 0, got {kappa}, {t0}")));
        }
        for &l in &eigenvalues {
            if !(l >= 1.0 / kappa * (1.0 - 1e-12) && l <= 1.0 + 1e-12) {
                return Err(ApproxError::EigenvalueOutOfDomain { lambda: l, kappa });
            }
        }
        let nrm = amplitudes.iter().map(|b| b * b).sum::<f64>().sqrt();
        if !(nrm > 0.0) {
            return Err(ApproxError::Domain("amplitudes are zero".into()));
        }
        let amplitudes = amplitudes.into_iter().map(|b| b / nrm).collect();
        let m = HhlToyModel { eigenvalues, amplitudes, kappa, t0 };
        let t = m.clock_size();
        if t > MAX_CLOCK {
            return Err(ApproxError::ClockTooLarge { t, max: MAX_CLOCK });
        }
        Ok(m)
    }

    /// `T = 1 + floor(t0 / (2 pi))`.
    pub fn clock_size(&self) -> u64 {
        1 + (self.t0 / (2.0 * std::f64::consts::PI)).floor() as u64
    }

    /// Rotation cutoff and constant `C = t0 / (4 pi kappa)`.
    pub fn cutoff(&self) -> f64 {
        self.t0 / (4.0 * std::f64::consts::PI * self.kappa)
    }

    /// `f_tau = C / tau` for `tau >= C`, else zero.
    pub fn f_tilde(&self, tau: u64) -> f64 {
        let c = self.cutoff();
        if tau as f64 >= c && tau > 0 {
            c / tau as f64
        } else {
            0.0
        }
    }
}

/// `sum_{tau'=0}^{T-1} e^{i tau' phi} = e^{i (T-1) phi / 2} sin(T phi/2) / sin(phi/2)`.
fn dirichlet(t: u64, phi: f64) -> Complex64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    // the sum is 2 pi periodic in phi; reducing first keeps the ratio accurate near resonance
    let r = phi - two_pi * (phi / two_pi).round();
    let tf = t as f64;
    if r == 0.0 {
        return Complex64::new(tf, 0.0);
    }
    let mag = (0.5 * tf * r).sin() / (0.5 * r).sin();
    Complex64::from_polar(mag, 0.5 * (tf - 1.0) * r)
}

/// `alpha_{tau|j}` in closed form from two geometric sums.
pub fn clock_amplitude(t: u64, lambda_t0: f64, tau: u64) -> Complex64 {
    let tf = t as f64;
    let pi = std::f64::consts::PI;
    let base = (lambda_t0 - 2.0 * pi * tau as f64) / tf;
    // sin(pi (tau' + 1/2)/T) = (e^{i pi (tau'+1/2)/T} - e^{-i pi (tau'+1/2)/T}) / (2i)
    let w = pi / tf;
    let plus = Complex64::from_polar(1.0, 0.5 * w) * dirichlet(t, base + w);
    let minus = Complex64::from_polar(1.0, -0.5 * w) * dirichlet(t, base - w);
    (plus - minus) / Complex64::new(0.0, 2.0) * (2f64.sqrt() / tf)
}

/// `alpha_{tau|j}` by direct summation over `tau'`.
pub fn clock_amplitude_direct(t: u64, lambda_t0: f64, tau: u64) -> Complex64 {
    let tf = t as f64;
    let pi = std::f64::consts::PI;
    let mut acc = Complex64::new(0.0, 0.0);
    for tp in 0..t {
        let w = (pi * (tp as f64 + 0.5) / tf).sin();
        acc += Complex64::from_polar(w, tp as f64 / tf * (lambda_t0 - 2.0 * pi * tau as f64));
    }
    acc * (2f64.sqrt() / tf)
}

/// Exact `p~ = sum_j sum_tau |beta_j|^2 |alpha_{tau|j}|^2 f_tau^2` and the estimate
/// `||x||^2 / (4 kappa^2)` from the same spectrum.
pub fn hhl_exact_success_prob(model: &HhlToyModel) -> (f64, f64) {
    let t = model.clock_size();
    let f2: Vec<f64> = (0..t).map(|tau| model.f_tilde(tau).powi(2)).collect();
    let mut p = 0.0;
    let mut x2 = 0.0;
    for (&lam, &b) in model.eigenvalues.iter().zip(&model.amplitudes) {
        let lt = lam * model.t0;
        let mut pj = 0.0;
        for tau in 0..t {
            if f2[tau as usize] > 0.0 {
                pj += clock_amplitude(t, lt, tau).norm_sqr() * f2[tau as usize];
            }
        }
        p += b * b * pj;
        x2 += b * b / (lam * lam);
    }
    (p, x2 / (4.0 * model.kappa * model.kappa))
}

/// Clock distribution `|alpha_{tau|j}|^2` of one eigenvalue; sums to one.
pub fn clock_distribution(model: &HhlToyModel, lambda: f64) -> Vec<f64> {
    let t = model.clock_size();
    (0..t).map(|tau| clock_amplitude(t, lambda * model.t0, tau).norm_sqr()).collect()
}
