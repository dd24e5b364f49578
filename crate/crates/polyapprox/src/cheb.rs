//! Chebyshev-series evaluation and sampling grids.

use qls_costkit::Real;

/// `sum_j c_j T_{2j+1}(x)` by Clenshaw in `y = T_2(x)`; exactly odd in `x`.
pub fn clenshaw_odd<T: Real>(c: &[T], x: T) -> T {
    let y2 = T::lit(2.0) * (T::lit(2.0) * x * x - T::one());
    let (mut b1, mut b2) = (T::zero(), T::zero());
    for &ck in c.iter().rev() {
        let b0 = ck + y2 * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    // b1 = b_0, b2 = b_1; phi_{-1} = T_{-1} = T_1
    x * (b1 - b2)
}

/// `sum_j c_j T_{2j}(x)`; exactly even in `x`.
pub fn clenshaw_even<T: Real>(c: &[T], x: T) -> T {
    let y = T::lit(2.0) * x * x - T::one();
    let y2 = T::lit(2.0) * y;
    let (mut b1, mut b2) = (T::zero(), T::zero());
    for &ck in c.iter().rev() {
        let b0 = ck + y2 * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    b1 - y * b2
}

/// `sum_n c_n T_n(x)`.
pub fn clenshaw<T: Real>(c: &[T], x: T) -> T {
    let x2 = T::lit(2.0) * x;
    let (mut b1, mut b2) = (T::zero(), T::zero());
    for &ck in c.iter().skip(1).rev() {
        let b0 = ck + x2 * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    c.first().copied().unwrap_or(T::zero()) + x * b1 - b2
}

/// Default number of sample points of sup-norm checks.
pub const GRID_POINTS: usize = 10_000;

/// `n` Chebyshev points of the first kind mapped to `[lo, hi]`, increasing.
pub fn chebyshev_points(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let (m, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    (0..n)
        .map(|i| {
            let th = std::f64::consts::PI * (2 * (n - 1 - i) + 1) as f64 / (2 * n) as f64;
            m + h * th.cos()
        })
        .collect()
}

/// Chebyshev points on `[-1, -1/kappa] U [1/kappa, 1]`, `n/2` per side, with both endpoints
/// of each side included.
pub fn dkappa_points(n: usize, kappa: f64) -> Vec<f64> {
    let half = (n / 2).max(2);
    let lo = 1.0 / kappa;
    let mut pos = chebyshev_points(half - 2, lo, 1.0);
    pos.insert(0, lo);
    pos.push(1.0);
    let mut all: Vec<f64> = pos.iter().rev().map(|v| -v).collect();
    all.extend(pos);
    all
}

/// Largest `|f(x)|` over the points.
pub fn sup_abs<F: Fn(f64) -> f64>(points: &[f64], f: F) -> f64 {
    points.iter().map(|&x| f(x).abs()).fold(0.0, f64::max)
}
