//! Upper half-tails of the symmetric binomial distribution.
//!
//! `halftail(s, j) = P(X > s + j)` for `X ~ Bin(2s, 1/2)`. Writing `Y = X - s`, the Chebyshev
//! normalization needs `A(s, j0) = sum_{j=0}^{j0} P(Y > j) = sum_{i>=1} min(i, j0+1) P(Y = i)`.
//! Three routes are provided: exact rationals (small `s`), a log-domain probability-mass sum,
//! and the closed form `E[Y+] = s C(2s, s) / (2 4^s)` minus the tail `E[(Y - j0 - 1)+]`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::scalar::Neumaier;

/// Largest `s` served by the exact big-integer path.
pub const EXACT_MAX_S: u64 = 2000;

/// Exact suffix sums of the binomial row `C(2s, k)` over the common denominator `4^s`.
#[derive(Debug, Clone)]
pub struct ExactTails {
    s: u64,
    /// `suffix[i] = sum_{k = s+1+i}^{2s} C(2s, k)`, i.e. numerator of `P(Y > i)`.
    suffix: Vec<BigUint>,
    denom: BigUint,
}

impl ExactTails {
    pub fn new(s: u64) -> Self {
        let n = 2 * s;
        // C(n, k) from k = n downward
        let mut row = BigUint::one();
        let mut acc = BigUint::zero();
        let mut suffix = vec![BigUint::zero(); s as usize + 1];
        for k in (s + 1..=n).rev() {
            acc += &row;
            suffix[(k - s - 1) as usize] = acc.clone();
            row = row * BigUint::from(k) / BigUint::from(n - k + 1);
        }
        let denom = BigUint::one() << (2 * s as usize);
        Self { s, suffix, denom }
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    /// `P(Y > j)` as an exact rational; zero for `j >= s`.
    pub fn tail(&self, j: u64) -> BigRational {
        if j >= self.s {
            return BigRational::zero();
        }
        ratio(&self.suffix[j as usize], &self.denom)
    }

    /// `ln P(Y > j)`; `-inf` for `j >= s`.
    pub fn ln_tail(&self, j: u64) -> f64 {
        if j >= self.s {
            return f64::NEG_INFINITY;
        }
        ln_biguint(&self.suffix[j as usize]) - (2 * self.s) as f64 * std::f64::consts::LN_2
    }

    pub fn tail_f64(&self, j: u64) -> f64 {
        self.tail(j).to_f64().unwrap_or(0.0)
    }

    /// `A(s, j0) = sum_{j=0}^{j0} P(Y > j)` exactly.
    pub fn alpha_sum(&self, j0: u64) -> BigRational {
        let top = j0.min(self.s.saturating_sub(1));
        let mut num = BigUint::zero();
        if self.s > 0 {
            for j in 0..=top {
                num += &self.suffix[j as usize];
            }
        }
        ratio(&num, &self.denom)
    }
}

/// Natural log of a positive big integer from its leading 64 bits.
fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::NEG_INFINITY, f64::ln);
    }
    let shift = bits - 64;
    (x >> shift as usize).to_f64().expect("64-bit head").ln() + shift as f64 * std::f64::consts::LN_2
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    let g = num.gcd(den);
    if g.is_zero() {
        return BigRational::zero();
    }
    BigRational::new_raw((num / &g).into(), (den / &g).into())
}

/// Exact `P(X > s + j)`.
pub fn halftail_exact(s: u64, j: u64) -> BigRational {
    ExactTails::new(s).tail(j)
}

/// `ln(C(2s, s) / 4^s)`, the log central mass `ln P(Y = 0)`.
pub fn ln_central(s: u64) -> f64 {
    if s == 0 {
        return 0.0;
    }
    if s < 64 {
        let sf = s as f64;
        let mut acc = 0.0f64;
        for i in 1..=s {
            acc += ((sf + i as f64) / (4.0 * i as f64)).ln();
        }
        return acc;
    }
    let x = s as f64;
    -0.5 * (std::f64::consts::PI * x).ln() - 1.0 / (8.0 * x) + 1.0 / (192.0 * x.powi(3))
        - 1.0 / (640.0 * x.powi(5))
}

/// Increment `ln P(Y = i+1) - ln P(Y = i)`.
#[inline]
fn ln_step(s: f64, i: f64) -> f64 {
    (-i / s).ln_1p() - ((i + 1.0) / s).ln_1p()
}

/// `ln P(Y = i)` for `0 <= i <= s`.
pub fn ln_pmf(s: u64, i: u64) -> f64 {
    if i > s {
        return f64::NEG_INFINITY;
    }
    let sf = s as f64;
    let mut acc = Neumaier::new();
    acc.add(ln_central(s));
    for m in 0..i {
        acc.add(ln_step(sf, m as f64));
    }
    acc.value()
}

/// Modified Lentz continued fraction of the regularized incomplete beta `I_x(a, b)`
/// (without the front factor), valid for `x < (a + 1)/(a + b + 2)`.
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const TOL: f64 = 1e-16;
    let max_iter = (20.0 * a.max(b).sqrt()) as usize + 400;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0f64;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=max_iter {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < TOL {
            break;
        }
    }
    h
}

/// `P(X > s + j)` via `I_{1/2}(s + j + 1, s - j)` in the log domain.
///
/// The front factor of the incomplete beta at `x = 1/2` equals `P(Y = j + 1) / 2`.
pub fn halftail_beta(s: u64, j: u64) -> f64 {
    if j >= s {
        return 0.0;
    }
    let a = (s + j + 1) as f64;
    let b = (s - j) as f64;
    0.5 * ln_pmf(s, j + 1).exp() * beta_cf(a, b, 0.5)
}

/// `P(X > s + j)`: exact below [`EXACT_MAX_S`], incomplete beta above.
pub fn halftail(s: u64, j: u64) -> f64 {
    if s <= EXACT_MAX_S {
        halftail_exact(s, j).to_f64().unwrap_or(0.0)
    } else {
        halftail_beta(s, j)
    }
}

/// `ln P(Y > j)` for `j = 0..=j0`, without underflow.
///
/// Exact below [`EXACT_MAX_S`]; above, the top tail comes from the incomplete beta and the
/// rest from `P(Y > j - 1) = P(Y > j) + P(Y = j)` summed downward in the log domain.
pub fn ln_halftail_seq(s: u64, j0: u64) -> Vec<f64> {
    if s <= EXACT_MAX_S {
        let ex = ExactTails::new(s);
        return (0..=j0).map(|j| ex.ln_tail(j)).collect();
    }
    let top = j0.min(s - 1);
    let mut out = vec![f64::NEG_INFINITY; j0 as usize + 1];
    let (a, b) = ((s + top + 1) as f64, (s - top) as f64);
    let mut acc = ln_pmf(s, top + 1) + beta_cf(a, b, 0.5).ln() - std::f64::consts::LN_2;
    let mut ln_pmf_j = ln_pmf(s, top);
    out[top as usize] = acc;
    let sf = s as f64;
    for j in (0..top).rev() {
        // acc = ln P(Y > j + 1), ln_pmf_j = ln P(Y = j + 1)
        let (hi, lo) = if acc > ln_pmf_j { (acc, ln_pmf_j) } else { (ln_pmf_j, acc) };
        acc = hi + (lo - hi).exp().ln_1p();
        out[j as usize] = acc;
        ln_pmf_j -= ln_step(sf, j as f64);
    }
    out
}

/// Relative weight below which mass-sum terms are dropped.
const MASS_CUTOFF: f64 = 1e-40;

/// `A(s, j0)` as `sum_{i>=1} min(i, j0 + 1) P(Y = i)`, accumulated in the log domain.
pub fn alpha_sum_mass(s: u64, j0: u64) -> f64 {
    if s == 0 {
        return 0.0;
    }
    let sf = s as f64;
    let w_cap = (j0 + 1) as f64;
    let mut lp = ln_central(s) + ln_step(sf, 0.0);
    let head = lp;
    let mut acc = Neumaier::new();
    let mut i = 1u64;
    while i <= s {
        acc.add((i as f64).min(w_cap) * lp.exp());
        if i > j0 && lp - head < MASS_CUTOFF.ln() {
            break;
        }
        lp += ln_step(sf, i as f64);
        i += 1;
    }
    acc.value()
}

/// `A(s, j0)` as `E[Y+] - E[(Y - j0 - 1)+]`.
pub fn alpha_sum_closed(s: u64, j0: u64) -> f64 {
    if s == 0 {
        return 0.0;
    }
    let mean_pos = 0.5 * s as f64 * ln_central(s).exp();
    let a = j0 + 1;
    if a >= s {
        return mean_pos;
    }
    // tail sum_{i > a} (i - a) P(Y = i)
    let sf = s as f64;
    let mut lp = ln_pmf(s, a + 1);
    let head = lp;
    let mut tail = Neumaier::new();
    let mut i = a + 1;
    while i <= s {
        let term = (i - a) as f64 * lp.exp();
        tail.add(term);
        if term <= MASS_CUTOFF * mean_pos || lp - head < MASS_CUTOFF.ln() {
            break;
        }
        lp += ln_step(sf, i as f64);
        i += 1;
    }
    mean_pos - tail.value()
}

/// Production `A(s, j0)`: exact rationals for small `s`, closed form otherwise.
pub fn alpha_sum(s: u64, j0: u64) -> f64 {
    if s <= EXACT_MAX_S {
        ExactTails::new(s).alpha_sum(j0).to_f64().unwrap_or(0.0)
    } else {
        alpha_sum_closed(s, j0)
    }
}
