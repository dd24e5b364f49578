//! Expected cost of randomized amplitude amplification with a known lower bound `p0`.

use crate::error::{CostError, Result};
use crate::scalar::{Neumaier, Real};

/// Default growth constant of the amplification schedule.
pub const DEFAULT_GROWTH: f64 = 1.2;
/// Default running-product cutoff of the unsaturated series.
pub const DEFAULT_TAIL_CUTOFF: f64 = 1e-15;

pub fn check_probabilities<T: Real>(p: T, p0: T) -> Result<()> {
    if !(p0 > T::zero() && p0 <= p && p <= T::one()) {
        return Err(CostError::InvalidProbability { p: p.to64(), p0: p0.to64() });
    }
    Ok(())
}

pub fn check_growth<T: Real>(c: T) -> Result<()> {
    if !(c > T::one() && c < T::lit(2.0)) {
        return Err(CostError::InvalidGrowth(c.to64()));
    }
    Ok(())
}

/// Saturation cap `floor(sqrt(1/p0))` of the schedule.
pub fn schedule_cap<T: Real>(p0: T) -> u64 {
    (T::one() / p0).sqrt().floor().to_u64().unwrap_or(u64::MAX)
}

/// Round-`k` iteration bound `m_k = floor(min(c^k, sqrt(1/p0)))`, rounds numbered from 1.
///
/// The Monte-Carlo simulator and the analytic series both draw their schedule from here.
pub fn schedule_m<T: Real>(k: u32, c: T, p0: T) -> u64 {
    let cap = (T::one() / p0).sqrt();
    let ck = c.powi(k.min(i32::MAX as u32) as i32);
    ck.min(cap).floor().to_u64().unwrap_or(u64::MAX)
}

/// Amplitude angle `theta = asin(sqrt(p))`.
pub fn amplitude_angle<T: Real>(p: T) -> T {
    p.sqrt().min(T::one()).asin()
}

/// Success probability averaged over `j` uniform on `0..=m`.
pub fn mean_success<T: Real>(m: u64, theta: T) -> T {
    let two = T::lit(2.0);
    let s2 = (two * theta).sin();
    if s2.abs() <= T::epsilon() {
        // limit at p = 1: the ratio below tends to -2(m+1)
        return T::one();
    }
    let mp1 = T::from_u64(m).expect("m") + T::one();
    let four = T::lit(4.0);
    T::lit(0.5) - (four * mp1 * theta).sin() / (four * mp1 * s2)
}

/// Expected number of base-algorithm applications `n_QAA(p, p0, c)`.
pub fn qaa_expected<T: Real>(p: T, p0: T, c: T) -> Result<T> {
    qaa_expected_with_cutoff(p, p0, c, T::lit(DEFAULT_TAIL_CUTOFF))
}

pub fn qaa_expected_with_cutoff<T: Real>(p: T, p0: T, c: T, cutoff: T) -> Result<T> {
    check_probabilities(p, p0)?;
    check_growth(c)?;
    let theta = amplitude_angle(p);
    let cap = schedule_cap(p0);
    let mut sum = Neumaier::new();
    let mut prod = T::one();
    let mut k = 1u32;
    loop {
        let m = schedule_m(k, c, p0);
        let q = mean_success(m, theta);
        let mt = T::from_u64(m).expect("m");
        if m >= cap {
            // every later round repeats (m, q): geometric tail m prod / q
            sum.add(mt * prod / q);
            break;
        }
        sum.add(mt * prod);
        prod = prod * (T::one() - q);
        if prod < cutoff {
            break;
        }
        k += 1;
    }
    Ok(sum.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_success_costs_one() {
        assert_eq!(qaa_expected(1.0, 1.0, 1.2).unwrap(), 1.0);
    }

    #[test]
    fn quarter_probability_value() {
        // rounds m = 1, 1, 1 with mean success 5/8, then saturation at m = 2 with 1/2
        let v: f64 = qaa_expected(0.25, 0.25, 1.2).unwrap();
        assert!((v - 1.7265625).abs() < 1e-12, "{v}");
    }

    #[test]
    fn mean_success_matches_direct_average() {
        for &p in &[0.01f64, 0.2, 0.5, 0.9, 0.999] {
            let th = amplitude_angle(p);
            for m in 0..20u64 {
                let direct: f64 = (0..=m)
                    .map(|j| ((2 * j + 1) as f64 * th).sin().powi(2))
                    .sum::<f64>()
                    / (m + 1) as f64;
                assert!((mean_success(m, th) - direct).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn schedule_saturates() {
        assert_eq!(schedule_m(1, 1.2, 0.25), 1);
        assert_eq!(schedule_m(4, 1.2, 0.25), 2);
        assert_eq!(schedule_m(40, 1.2, 0.25), 2);
        assert_eq!(schedule_m(1000, 1.2, 1e-6), 1000);
        assert_eq!(schedule_cap(1e-4), 100);
    }

    #[test]
    fn small_probability_in_expected_range() {
        let v: f64 = qaa_expected(1e-4, 1e-4, 1.2).unwrap();
        assert!(v > 50.0 && v < 500.0, "{v}");
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(qaa_expected(0.2, 0.3, 1.2).is_err());
        assert!(qaa_expected(1.2, 0.3, 1.2).is_err());
        assert!(qaa_expected(0.2, 0.0, 1.2).is_err());
        assert!(matches!(qaa_expected(0.2, 0.1, 2.0), Err(CostError::InvalidGrowth(_))));
    }

    #[test]
    fn single_precision_tracks_double() {
        let a = qaa_expected(0.01f32, 0.01, 1.2).unwrap() as f64;
        let b = qaa_expected(0.01f64, 0.01, 1.2).unwrap();
        assert!((a - b).abs() / b < 1e-4);
    }
}
