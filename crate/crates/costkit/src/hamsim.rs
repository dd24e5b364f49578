//! Truncation-degree bound for qubitized Hamiltonian simulation and its query count.

use crate::error::{CostError, Result};
use crate::scalar::{to_count, Real};

/// Oracle calls per unit of the truncation degree.
pub const QUBITIZATION_FACTOR: u64 = 48;

pub(crate) fn check_epsilon<T: Real>(eps: T) -> Result<()> {
    if !(eps > T::zero() && eps < T::one()) {
        return Err(CostError::InvalidEpsilon(eps.to64()));
    }
    Ok(())
}

/// Branch threshold `ln(1/eps)/e`; scaled times at or above it use the linear branch.
pub fn r_tilde_threshold<T: Real>(eps: T) -> T {
    (T::one() / eps).ln() / T::E()
}

/// Upper bound `r~(t, eps)` on the Jacobi–Anger truncation degree at scaled time `t`.
pub fn r_tilde<T: Real>(t_scaled: T, eps: T) -> Result<u64> {
    check_epsilon(eps)?;
    if !(t_scaled >= T::zero()) || !t_scaled.is_finite() {
        return Err(CostError::NegativeTime(t_scaled.to64()));
    }
    let l = (T::one() / eps).ln();
    let v = if t_scaled >= l / T::E() {
        (T::E() * t_scaled).ceil()
    } else {
        // t = 0 gives ln(inf) in the denominator and a zero degree
        (T::lit(4.0) * l / (T::E() + l / t_scaled).ln()).ceil()
    };
    to_count(v).ok_or(CostError::Overflow("r_tilde"))
}

/// `48 r~(d a_max t, eps)` oracle calls.
pub fn qubitization_queries<T: Real>(d: u64, a_max: T, t: T, eps: T) -> Result<u64> {
    if d == 0 {
        return Err(CostError::Domain("sparsity must be at least 1".into()));
    }
    if !(a_max > T::zero() && a_max <= T::one()) {
        return Err(CostError::Domain(format!("a_max must lie in (0, 1], got {a_max}")));
    }
    if !(t > T::zero()) {
        return Err(CostError::NegativeTime(t.to64()));
    }
    let scaled = T::from_u64(d).expect("d") * a_max * t;
    let r = r_tilde(scaled, eps)?;
    r.checked_mul(QUBITIZATION_FACTOR).ok_or(CostError::Overflow("qubitization_queries"))
}

/// `log10` of the qubitization query count.
pub fn qubitization_queries_log10<T: Real>(d: u64, a_max: T, t: T, eps: T) -> Result<(u64, T)> {
    let q = qubitization_queries(d, a_max, t, eps)?;
    Ok((q / QUBITIZATION_FACTOR, T::from_u64(q).expect("count").log10()))
}
