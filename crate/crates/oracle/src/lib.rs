//! Reference implementations for tests: binary fixed point with a few hundred bits,
//! series for the elementary and Bessel functions, and exact binomial sums.
//!
//! Nothing here is tuned for speed; every routine trades time for margin.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Fractional bits of [`Fx`].
pub const FRAC_BITS: usize = 384;

/// Signed binary fixed point `m / 2^FRAC_BITS`; about 115 decimal digits after the point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fx {
    m: BigInt,
}

impl PartialOrd for Fx {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fx {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m.cmp(&other.m)
    }
}

impl Fx {
    pub fn zero() -> Self {
        Fx { m: BigInt::zero() }
    }

    pub fn one() -> Self {
        Fx { m: BigInt::one() << FRAC_BITS }
    }

    pub fn from_int(n: i64) -> Self {
        Fx { m: BigInt::from(n) << FRAC_BITS }
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Fx::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        let mut m = BigInt::from(mant);
        let shift = e + FRAC_BITS as i64;
        if shift >= 0 {
            m <<= shift as usize;
        } else {
            m >>= (-shift) as usize;
        }
        Fx { m: m * sign }
    }

    /// Nearest double (ties resolved by the truncated mantissa, adequate for testing).
    pub fn to_f64(&self) -> f64 {
        let (sign, mag) = (self.m.sign(), self.m.magnitude());
        if mag.is_zero() {
            return 0.0;
        }
        let bits = mag.bits() as i64;
        // keep 64 leading bits
        let drop = (bits - 64).max(0) as usize;
        let top = (mag >> drop).to_u64().unwrap() as f64;
        let v = top * 2f64.powi((drop as i64 - FRAC_BITS as i64) as i32);
        if sign == Sign::Minus {
            -v
        } else {
            v
        }
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        Fx { m: (num << FRAC_BITS) / den }
    }

    pub fn div(&self, o: &Fx) -> Fx {
        Fx { m: (&self.m << FRAC_BITS) / &o.m }
    }

    pub fn div_int(&self, n: i64) -> Fx {
        Fx { m: &self.m / BigInt::from(n) }
    }

    pub fn mul_int(&self, n: i64) -> Fx {
        Fx { m: &self.m * BigInt::from(n) }
    }

    pub fn abs(&self) -> Fx {
        Fx { m: self.m.abs() }
    }

    pub fn is_negligible(&self) -> bool {
        self.m.magnitude().bits() < 4
    }

    fn half_pow(&self, k: usize) -> Fx {
        Fx { m: &self.m >> k }
    }

    /// Integer nearest to `self`.
    pub fn round(&self) -> BigInt {
        let half = BigInt::one() << (FRAC_BITS - 1);
        (&self.m + half).div_floor(&(BigInt::one() << FRAC_BITS))
    }
}

impl Add for &Fx {
    type Output = Fx;
    fn add(self, o: &Fx) -> Fx {
        Fx { m: &self.m + &o.m }
    }
}

impl Sub for &Fx {
    type Output = Fx;
    fn sub(self, o: &Fx) -> Fx {
        Fx { m: &self.m - &o.m }
    }
}

impl Mul for &Fx {
    type Output = Fx;
    fn mul(self, o: &Fx) -> Fx {
        Fx { m: (&self.m * &o.m) >> FRAC_BITS }
    }
}

impl Neg for &Fx {
    type Output = Fx;
    fn neg(self) -> Fx {
        Fx { m: -&self.m }
    }
}

fn atan_inv(n: i64) -> Fx {
    // atan(1/n) = sum (-1)^k / ((2k+1) n^(2k+1))
    let mut term = Fx::one().div_int(n);
    let n2 = n * n;
    let mut acc = Fx::zero();
    let mut k = 0i64;
    while !term.is_negligible() {
        let t = term.div_int(2 * k + 1);
        acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
        term = term.div_int(n2);
        k += 1;
    }
    acc
}

/// `pi` by Machin's formula.
pub fn pi() -> Fx {
    let a = atan_inv(5).mul_int(16);
    let b = atan_inv(239).mul_int(4);
    &a - &b
}

/// `exp(x)` by argument halving and Taylor series.
pub fn exp(x: &Fx) -> Fx {
    let mag = x.abs().to_f64();
    let k = if mag < 1e-3 { 0 } else { (mag.log2().ceil() as i64 + 10).max(0) as usize };
    let r = x.half_pow(k);
    let mut term = Fx::one();
    let mut acc = Fx::one();
    let mut n = 1i64;
    loop {
        term = (&term * &r).div_int(n);
        if term.is_negligible() {
            break;
        }
        acc = &acc + &term;
        n += 1;
    }
    for _ in 0..k {
        acc = &acc * &acc;
    }
    acc
}

/// `(cos x, sin x)` with reduction modulo `2 pi`.
pub fn cos_sin(x: &Fx) -> (Fx, Fx) {
    let two_pi = pi().mul_int(2);
    let q = x.div(&two_pi).round();
    let r = x - &Fx { m: (&two_pi.m * q) };
    let r2 = &r * &r;
    let mut c = Fx::one();
    let mut s = r.clone();
    let mut tc = Fx::one();
    let mut ts = r.clone();
    let mut n = 1i64;
    loop {
        tc = (&tc * &r2).div_int((2 * n - 1) * (2 * n));
        ts = (&ts * &r2).div_int((2 * n) * (2 * n + 1));
        if tc.is_negligible() && ts.is_negligible() {
            break;
        }
        if n % 2 == 1 {
            c = &c - &tc;
            s = &s - &ts;
        } else {
            c = &c + &tc;
            s = &s + &ts;
        }
        n += 1;
    }
    (c, s)
}

/// `e^{-i lambda t}` as `(re, im)` doubles, evaluated from the exact product of the inputs.
pub fn exp_minus_i(lambda: f64, t: f64) -> (f64, f64) {
    let arg = &Fx::from_f64(lambda) * &Fx::from_f64(t);
    let (c, s) = cos_sin(&arg);
    (c.to_f64(), -s.to_f64())
}

/// Power series of `J_k(t)`.
pub fn bessel_j(k: u32, t: f64) -> f64 {
    let h = &Fx::from_f64(t) * &Fx::one().div_int(2);
    let h2 = &h * &h;
    // (t/2)^k / k!
    let mut term = Fx::one();
    for i in 1..=k as i64 {
        term = (&term * &h).div_int(i);
    }
    let mut acc = term.clone();
    let mut m = 1i64;
    loop {
        term = (&term * &h2).div_int(m * (m + k as i64));
        if term.is_negligible() {
            break;
        }
        acc = if m % 2 == 1 { &acc - &term } else { &acc + &term };
        m += 1;
    }
    acc.to_f64()
}

/// Power series of `e^{-q} I_k(q)`.
pub fn bessel_i_scaled(k: u32, q: f64) -> f64 {
    let h = &Fx::from_f64(q) * &Fx::one().div_int(2);
    let h2 = &h * &h;
    let mut term = Fx::one();
    for i in 1..=k as i64 {
        term = (&term * &h).div_int(i);
    }
    let mut acc = term.clone();
    let mut m = 1i64;
    loop {
        term = (&term * &h2).div_int(m * (m + k as i64));
        if term.is_negligible() {
            break;
        }
        acc = &acc + &term;
        m += 1;
    }
    (&acc * &exp(&-&Fx::from_f64(q))).to_f64()
}

/// `erf(x)` from its Maclaurin series.
pub fn erf(x: f64) -> f64 {
    let xf = Fx::from_f64(x);
    let x2 = &xf * &xf;
    let mut term = xf.clone();
    let mut acc = xf.clone();
    let mut n = 1i64;
    loop {
        term = (&term * &x2).div_int(n);
        let t = term.div_int(2 * n + 1);
        if t.is_negligible() {
            break;
        }
        acc = if n % 2 == 1 { &acc - &t } else { &acc + &t };
        n += 1;
    }
    let sqrt_pi = sqrt(&pi());
    (&acc.mul_int(2)).div(&sqrt_pi).to_f64()
}

/// Newton square root of a positive fixed-point value.
pub fn sqrt(x: &Fx) -> Fx {
    let mut g = Fx::from_f64(x.to_f64().sqrt());
    for _ in 0..8 {
        g = (&g + &x.div(&g)).div_int(2);
    }
    g
}

/// `P(X > s + j)` for `X ~ Bin(2s, 1/2)` as a direct sum of binomial coefficients.
pub fn binomial_halftail(s: u64, j: u64) -> BigRational {
    let n = 2 * s;
    let mut num = BigUint::zero();
    if s + j + 1 <= n {
        let mut c = binomial(BigUint::from(n), BigUint::from(s + j + 1));
        for k in (s + j + 1)..=n {
            num += &c;
            c = c * BigUint::from(n - k) / BigUint::from(k + 1);
        }
    }
    BigRational::new(num.into(), (BigInt::one() << (2 * s as usize)).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert_eq!(pi().to_f64(), std::f64::consts::PI);
        assert_eq!(exp(&Fx::one()).to_f64(), std::f64::consts::E);
        assert!((exp(&Fx::from_int(-30)).to_f64() - (-30f64).exp()).abs() < 1e-28);
    }

    #[test]
    fn trigonometry() {
        for &x in &[0.3, 2.0, -7.5, 123.25] {
            let (c, s) = cos_sin(&Fx::from_f64(x));
            assert!((c.to_f64() - f64::cos(x)).abs() < 1e-15);
            assert!((s.to_f64() - f64::sin(x)).abs() < 1e-15);
        }
    }

    #[test]
    fn special_functions() {
        assert!((bessel_j(1, 1.0) - 0.44005058574493351596).abs() < 1e-17);
        assert!((bessel_j(0, 0.0) - 1.0).abs() == 0.0);
        assert!((bessel_i_scaled(0, 1.0) - 0.46575960759364043).abs() < 1e-16);
        assert!((erf(0.5) - 0.5204998778130465).abs() < 1e-16);
    }

    #[test]
    fn binomial_sums() {
        assert_eq!(binomial_halftail(2, 0), BigRational::new(5.into(), 16.into()));
        assert_eq!(binomial_halftail(3, 2), BigRational::new(1.into(), 64.into()));
    }

    #[test]
    fn f64_round_trip() {
        for &x in &[1.0, -0.1, 1e-10, 12345.678] {
            assert_eq!(Fx::from_f64(x).to_f64(), x);
        }
    }
}
