//! Query counts of the four functional solvers.

use std::fmt;

use crate::error::{CostError, Result};
use crate::halftail::alpha_sum;
use crate::hamsim::{check_epsilon, qubitization_queries_log10};
use crate::qaa::{check_growth, qaa_expected_with_cutoff, DEFAULT_GROWTH, DEFAULT_TAIL_CUTOFF};
use crate::scalar::{to_count, Neumaier, Real};

/// HHL evolution-time constant `2^7 + 22 pi^2 + (64 + 14 pi^2)^2 / pi^2`.
pub fn hhl_time_constant<T: Real>() -> T {
    let pi2 = T::PI() * T::PI();
    let b = T::lit(64.0) + T::lit(14.0) * pi2;
    T::lit(128.0) + T::lit(22.0) * pi2 + b * b / pi2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Solver {
    Hhl,
    Fourier,
    Chebyshev,
    Qsvt,
}

impl Solver {
    pub const ALL: [Solver; 4] = [Solver::Hhl, Solver::Fourier, Solver::Chebyshev, Solver::Qsvt];

    pub fn name(self) -> &'static str {
        match self {
            Solver::Hhl => "HHL",
            Solver::Fourier => "Fourier",
            Solver::Chebyshev => "Chebyshev",
            Solver::Qsvt => "QSVT",
        }
    }

    pub fn parse(s: &str) -> Option<Solver> {
        Solver::ALL.into_iter().find(|v| v.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Solver configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverParams<T> {
    pub epsilon: T,
    pub qaa_growth_c: T,
    /// Multiply the QSVT count by `n_QAA`; the alternative is always kept in the report.
    pub include_qaa_in_qsvt: bool,
    pub tail_cutoff: T,
}

impl<T: Real> Default for SolverParams<T> {
    fn default() -> Self {
        Self {
            epsilon: T::lit(1e-8),
            qaa_growth_c: T::lit(DEFAULT_GROWTH),
            include_qaa_in_qsvt: false,
            tail_cutoff: T::lit(DEFAULT_TAIL_CUTOFF),
        }
    }
}

impl<T: Real> SolverParams<T> {
    pub fn with_epsilon(epsilon: T) -> Self {
        Self { epsilon, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        check_epsilon(self.epsilon)?;
        check_growth(self.qaa_growth_c)
    }
}

/// Instance parameters entering the cost formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostInputs<T> {
    pub d: u64,
    pub kappa: T,
    pub a_max: T,
    pub x_norm: T,
}

impl<T: Real> CostInputs<T> {
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(CostError::Domain("sparsity must be at least 1".into()));
        }
        if !(self.kappa >= T::one()) || !self.kappa.is_finite() {
            return Err(CostError::Domain(format!("kappa must be finite and >= 1, got {}", self.kappa)));
        }
        if !(self.a_max > T::zero() && self.a_max <= T::one()) {
            return Err(CostError::Domain(format!("a_max must lie in (0, 1], got {}", self.a_max)));
        }
        if !(self.x_norm > T::zero()) || !self.x_norm.is_finite() {
            return Err(CostError::Domain(format!("x_norm must be positive, got {}", self.x_norm)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// `eps >= 1/kappa`, outside the regime where the HHL estimate holds.
    ValidityRegime,
    /// Success probability above one, clamped.
    ProbabilityClamped(f64),
    /// Success probability below its lower bound, raised to it.
    ProbabilityRaised(f64),
    /// Lower bound above one, clamped.
    LowerBoundClamped(f64),
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::ValidityRegime => f.write_str("validity_regime"),
            Warning::ProbabilityClamped(v) => write!(f, "p_clamped({v:e})"),
            Warning::ProbabilityRaised(v) => write!(f, "p_raised({v:e})"),
            Warning::LowerBoundClamped(v) => write!(f, "p0_clamped({v:e})"),
        }
    }
}

/// Named integer parameters of a report; absent entries do not apply to the solver.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Degrees {
    pub r_tilde: Option<u64>,
    pub j0: Option<u64>,
    pub s: Option<u64>,
    pub n_rect: Option<u64>,
    pub n_exp: Option<u64>,
    pub n_inv: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostReport<T> {
    pub solver: Solver,
    /// Headline count, `log10`.
    pub queries_log10: T,
    /// Count without the `n_QAA` multiplier, `log10`.
    pub base_queries_log10: T,
    pub n_qaa: T,
    pub hamsim_time_t: Option<T>,
    pub alpha: Option<T>,
    pub degrees: Degrees,
    pub p: T,
    pub p0: T,
    pub warnings: Vec<Warning>,
}

impl<T: Real> CostReport<T> {
    /// Count including the `n_QAA` multiplier, `log10`.
    pub fn with_qaa_log10(&self) -> T {
        self.base_queries_log10 + self.n_qaa.log10()
    }
}

/// Clamps `(p, p0)` into `0 < p0 <= p <= 1`, recording every adjustment.
fn settle_probabilities<T: Real>(solver: Solver, p: T, p0: T, warnings: &mut Vec<Warning>) -> (T, T) {
    let mut p0 = p0;
    let mut p = p;
    if p0 > T::one() {
        log::warn!("{solver}: lower bound p0 = {p0} clamped to 1");
        warnings.push(Warning::LowerBoundClamped(p0.to64()));
        p0 = T::one();
    }
    if p > T::one() {
        log::warn!("{solver}: success probability p = {p} clamped to 1");
        warnings.push(Warning::ProbabilityClamped(p.to64()));
        p = T::one();
    }
    if p < p0 {
        log::warn!("{solver}: success probability p = {p} below p0 = {p0}, raised");
        warnings.push(Warning::ProbabilityRaised(p.to64()));
        p = p0;
    }
    (p, p0)
}

fn to_u64_checked<T: Real>(x: T, what: &'static str) -> Result<u64> {
    to_count(x).ok_or(CostError::Overflow(what))
}

fn log10_u64<T: Real>(n: u64) -> T {
    T::from_u64(n).expect("count").log10()
}

pub fn hhl_cost<T: Real>(inp: &CostInputs<T>, params: &SolverParams<T>) -> Result<CostReport<T>> {
    inp.validate()?;
    params.validate()?;
    let eps = params.epsilon;
    let mut warnings = Vec::new();
    if eps >= T::one() / inp.kappa {
        log::warn!("HHL: eps = {eps} not small against 1/kappa = {}", T::one() / inp.kappa);
        warnings.push(Warning::ValidityRegime);
    }
    let t = hhl_time_constant::<T>().sqrt() * inp.kappa / eps;
    let four_k2 = T::lit(4.0) * inp.kappa * inp.kappa;
    let (p, p0) = settle_probabilities(Solver::Hhl, inp.x_norm * inp.x_norm / four_k2, T::one() / four_k2, &mut warnings);
    let n_qaa = qaa_expected_with_cutoff(p, p0, params.qaa_growth_c, params.tail_cutoff)?;
    let (r, q_log) = qubitization_queries_log10(inp.d, inp.a_max, t, eps)?;
    let base = T::lit(2.0).log10() + q_log;
    Ok(CostReport {
        solver: Solver::Hhl,
        queries_log10: base + n_qaa.log10(),
        base_queries_log10: base,
        n_qaa,
        hamsim_time_t: Some(t),
        alpha: None,
        degrees: Degrees { r_tilde: Some(r), ..Degrees::default() },
        p,
        p0,
        warnings,
    })
}

/// `(Delta z, L)` of the Fourier LCU discretization.
pub fn fourier_grid<T: Real>(kappa: T, eps: T) -> (T, u64) {
    let lg = (T::one() + T::lit(8.0) * kappa / eps).ln();
    let dz = T::lit(2.0) * T::PI() / (kappa + T::one()) / lg.sqrt();
    let l = ((kappa + T::one()) / T::PI() * lg).floor().to_u64().unwrap_or(0);
    (dz, l)
}

/// LCU normalization `alpha` of QLS-Fourier.
pub fn fourier_alpha<T: Real>(kappa: T, eps: T) -> Result<T> {
    check_epsilon(eps)?;
    if !(kappa >= T::one()) || !kappa.is_finite() {
        return Err(CostError::Domain(format!("kappa must be finite and >= 1, got {kappa}")));
    }
    let (dz, l) = fourier_grid(kappa, eps);
    let mut acc = Neumaier::new();
    let half = T::lit(0.5);
    for i in 1..=l {
        let z = T::from_u64(i).expect("l") * dz;
        acc.add(z * (-(z * z) * half).exp());
    }
    let pref = T::lit(4.0) * T::PI().sqrt() * kappa / (kappa + T::one());
    Ok(pref * acc.value())
}

pub fn fourier_cost<T: Real>(inp: &CostInputs<T>, params: &SolverParams<T>) -> Result<CostReport<T>> {
    inp.validate()?;
    params.validate()?;
    let eps = params.epsilon;
    let k = inp.kappa;
    let t = T::lit(2.0) * T::SQRT_2() * k * (T::one() + T::lit(8.0) * k / eps).ln();
    let alpha = fourier_alpha(k, eps)?;
    let mut warnings = Vec::new();
    let a2 = alpha * alpha;
    let (p, p0) = settle_probabilities(Solver::Fourier, inp.x_norm * inp.x_norm / a2, T::one() / a2, &mut warnings);
    let n_qaa = qaa_expected_with_cutoff(p, p0, params.qaa_growth_c, params.tail_cutoff)?;
    let (r, base) = qubitization_queries_log10(inp.d, inp.a_max, t, eps)?;
    Ok(CostReport {
        solver: Solver::Fourier,
        queries_log10: base + n_qaa.log10(),
        base_queries_log10: base,
        n_qaa,
        hamsim_time_t: Some(t),
        alpha: Some(alpha),
        degrees: Degrees { r_tilde: Some(r), ..Degrees::default() },
        p,
        p0,
        warnings,
    })
}

/// Truncation parameters of the Chebyshev expansion of `1/x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebParams {
    pub s: u64,
    pub j0: u64,
    pub s_log10: f64,
}

/// `s = ceil(c^2 log2(c/eps))`, `j0 = ceil(sqrt(s log2(4 s/eps)))` for effective condition number `c`.
pub fn chebyshev_params_effective<T: Real>(c: T, eps: T) -> Result<ChebParams> {
    if !(eps > T::zero()) || !(c > T::zero()) || !(c / eps > T::one()) || !c.is_finite() {
        return Err(CostError::Domain(format!("need c/eps > 1, got c = {c}, eps = {eps}")));
    }
    let s_real = (c * c * (c / eps).log2()).ceil();
    let s = to_u64_checked(s_real, "s")?;
    if s as f64 >= 9.007_199_254_740_992e15 {
        return Err(CostError::Overflow("s exceeds exact float range"));
    }
    let sr = T::from_u64(s).expect("s");
    let j0 = to_u64_checked((sr * (T::lit(4.0) * sr / eps).log2()).sqrt().ceil(), "j0")?;
    Ok(ChebParams { s, j0, s_log10: s_real.to64().log10() })
}

pub fn chebyshev_params<T: Real>(d: u64, kappa: T, eps: T) -> Result<ChebParams> {
    chebyshev_params_effective(T::from_u64(d).expect("d") * kappa, eps)
}

/// LCU normalization `alpha = (4/d) sum_{j<=j0} P(X > s + j)` of QLS-Chebyshev.
pub fn chebyshev_alpha<T: Real>(d: u64, cp: &ChebParams) -> T {
    T::lit(4.0 * alpha_sum(cp.s, cp.j0) / d as f64)
}

pub fn chebyshev_cost<T: Real>(inp: &CostInputs<T>, params: &SolverParams<T>) -> Result<CostReport<T>> {
    inp.validate()?;
    params.validate()?;
    let cp = chebyshev_params(inp.d, inp.kappa, params.epsilon)?;
    let alpha: T = chebyshev_alpha(inp.d, &cp);
    let mut warnings = Vec::new();
    let a2 = alpha * alpha;
    let (p, p0) = settle_probabilities(Solver::Chebyshev, inp.x_norm * inp.x_norm / a2, T::one() / a2, &mut warnings);
    let n_qaa = qaa_expected_with_cutoff(p, p0, params.qaa_growth_c, params.tail_cutoff)?;
    let base = T::lit(8.0).log10() + log10_u64::<T>(cp.j0);
    Ok(CostReport {
        solver: Solver::Chebyshev,
        queries_log10: base + n_qaa.log10(),
        base_queries_log10: base,
        n_qaa,
        hamsim_time_t: None,
        alpha: Some(alpha),
        degrees: Degrees { j0: Some(cp.j0), s: Some(cp.s), ..Degrees::default() },
        p,
        p0,
        warnings,
    })
}

/// `n_exp(beta, eps) = ceil(sqrt(2 ln(4/eps) ceil(max(beta e^2, ln(2/eps)))))`.
pub fn n_exp<T: Real>(beta: T, eps: T) -> Result<u64> {
    if !(eps > T::zero()) || !(beta >= T::zero()) {
        return Err(CostError::Domain(format!("n_exp needs eps > 0, beta >= 0, got {beta}, {eps}")));
    }
    let e2 = T::E() * T::E();
    let inner = (beta * e2).max((T::lit(2.0) / eps).ln()).ceil();
    to_u64_checked((T::lit(2.0) * (T::lit(4.0) / eps).ln() * inner).sqrt().ceil(), "n_exp")
}

/// Erf sharpness `k = (sqrt 2 / K) sqrt(ln(8/(pi eps^2)))` for a sign transition of half-width `K`.
pub fn sign_sharpness<T: Real>(width: T, eps: T) -> T {
    T::SQRT_2() / width * (T::lit(8.0) / (T::PI() * eps * eps)).ln().sqrt()
}

/// Sign/rect degree `2 n_exp(2k^2, sqrt(pi) eps/(16k)) + 1` with the matching `n_exp` and `k`.
pub fn rect_degree<T: Real>(width: T, eps: T) -> Result<(u64, u64, T)> {
    let k = sign_sharpness(width, eps);
    let ne = n_exp(T::lit(2.0) * k * k, T::PI().sqrt() * eps / (T::lit(16.0) * k))?;
    let n = ne
        .checked_mul(2)
        .and_then(|v| v.checked_add(1))
        .ok_or(CostError::Overflow("n_rect"))?;
    Ok((n, ne, k))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QsvtDegrees<T> {
    pub n_rect: u64,
    pub n_exp: u64,
    pub n_inv: u64,
    pub k: T,
    pub eps_rect: T,
    /// `j0` of the inverse polynomial.
    pub j0_inv: u64,
    /// `j0(d kappa, eps/(4 kappa))` entering the rect accuracy.
    pub j0_rect: u64,
}

pub fn qsvt_degrees<T: Real>(d: u64, kappa: T, eps: T) -> Result<QsvtDegrees<T>> {
    check_epsilon(eps)?;
    let dr = T::from_u64(d).expect("d");
    let dk = dr * kappa;
    if !(dk > T::one()) {
        return Err(CostError::Domain(format!("need d kappa > 1, got {dk}")));
    }
    let eps_p = eps / (T::lit(4.0) * kappa);
    let inv = chebyshev_params_effective(dk, dr / (T::lit(2.0) * kappa) * eps)?;
    let n_inv = inv
        .j0
        .checked_mul(2)
        .and_then(|v| v.checked_add(1))
        .ok_or(CostError::Overflow("n_inv"))?;
    let rect = chebyshev_params_effective(dk, eps_p)?;
    let eps_rect = eps_p.min(dk / (T::lit(2.0) * T::from_u64(rect.j0).expect("j0")));
    let (n_rect, ne, k) = rect_degree(T::one() / dk, eps_rect)?;
    Ok(QsvtDegrees { n_rect, n_exp: ne, n_inv, k, eps_rect, j0_inv: inv.j0, j0_rect: rect.j0 })
}

pub fn qsvt_cost<T: Real>(inp: &CostInputs<T>, params: &SolverParams<T>) -> Result<CostReport<T>> {
    inp.validate()?;
    params.validate()?;
    let eps = params.epsilon;
    let deg = qsvt_degrees(inp.d, inp.kappa, eps)?;
    let base_count = deg
        .n_rect
        .checked_add(deg.n_inv)
        .and_then(|v| v.checked_mul(4))
        .ok_or(CostError::Overflow("qsvt queries"))?;
    let mut warnings = Vec::new();
    let two_k = T::lit(2.0) * inp.kappa;
    let lb = (T::one() - eps / T::lit(2.0)) / two_k;
    let (p, p0) = settle_probabilities(Solver::Qsvt, (inp.x_norm / two_k).powi(2), lb * lb, &mut warnings);
    let n_qaa = qaa_expected_with_cutoff(p, p0, params.qaa_growth_c, params.tail_cutoff)?;
    let base = log10_u64::<T>(base_count);
    let queries = if params.include_qaa_in_qsvt { base + n_qaa.log10() } else { base };
    Ok(CostReport {
        solver: Solver::Qsvt,
        queries_log10: queries,
        base_queries_log10: base,
        n_qaa,
        hamsim_time_t: None,
        alpha: None,
        degrees: Degrees {
            j0: Some(deg.j0_inv),
            n_rect: Some(deg.n_rect),
            n_exp: Some(deg.n_exp),
            n_inv: Some(deg.n_inv),
            ..Degrees::default()
        },
        p,
        p0,
        warnings,
    })
}

pub fn solver_cost<T: Real>(solver: Solver, inp: &CostInputs<T>, params: &SolverParams<T>) -> Result<CostReport<T>> {
    match solver {
        Solver::Hhl => hhl_cost(inp, params),
        Solver::Fourier => fourier_cost(inp, params),
        Solver::Chebyshev => chebyshev_cost(inp, params),
        Solver::Qsvt => qsvt_cost(inp, params),
    }
}

/// Reports for HHL, Fourier, Chebyshev and QSVT, in that order.
pub fn cost_all<T: Real>(inp: &CostInputs<T>, params: &SolverParams<T>) -> Result<Vec<CostReport<T>>> {
    Solver::ALL.iter().map(|&s| solver_cost(s, inp, params)).collect()
}
