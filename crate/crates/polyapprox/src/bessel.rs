//! Bessel sequences by Miller backward recurrence.

use qls_costkit::Real;

/// Starting index of the backward recurrence for orders up to `k_max` at argument `x`.
fn start_index(k_max: usize, x: f64) -> usize {
    // J_k(t) and e^{-q} I_k(q) are below 1e-17 of the leading terms past this index
    let base = k_max.max(x.ceil() as usize);
    let n = base + 30 + (10.0 * x.abs().sqrt()).ceil() as usize;
    n + (n & 1)
}

/// `J_0(t), ..., J_{k_max}(t)` for `t >= 0`, normalized by `J_0 + 2 sum_k J_{2k} = 1`.
pub fn bessel_j_seq<T: Real>(t: T, k_max: usize) -> Vec<T> {
    let mut out = vec![T::zero(); k_max + 1];
    if t == T::zero() {
        out[0] = T::one();
        return out;
    }
    let n = start_index(k_max, t.to64());
    let two = T::lit(2.0);
    let big = T::lit(1e150);
    let (mut next, mut cur) = (T::zero(), T::lit(1e-280));
    let mut norm = T::zero();
    let mut vals = vec![T::zero(); n + 1];
    vals[n] = cur;
    for k in (1..=n).rev() {
        let kt = T::from_usize(k).expect("k");
        let prev = two * kt / t * cur - next;
        next = cur;
        cur = prev;
        vals[k - 1] = cur;
        if cur.abs() > big {
            // rescale everything computed so far
            let f = T::one() / big;
            for v in vals[k - 1..].iter_mut() {
                *v = *v * f;
            }
            next = next * f;
            cur = cur * f;
        }
    }
    for (k, v) in vals.iter().enumerate() {
        if k == 0 {
            norm = norm + *v;
        } else if k % 2 == 0 {
            norm = norm + two * *v;
        }
    }
    for k in 0..=k_max {
        out[k] = vals[k] / norm;
    }
    out
}

/// Scaled modified Bessel `e^{-q} I_k(q)` for `k = 0..=k_max`, `q >= 0`, normalized by
/// `e^{-q} (I_0 + 2 sum_{k>=1} I_k) = 1`.
pub fn bessel_i_scaled_seq<T: Real>(q: T, k_max: usize) -> Vec<T> {
    let mut out = vec![T::zero(); k_max + 1];
    if q == T::zero() {
        out[0] = T::one();
        return out;
    }
    let n = start_index(k_max, q.to64());
    let two = T::lit(2.0);
    let big = T::lit(1e150);
    let (mut next, mut cur) = (T::zero(), T::lit(1e-280));
    let mut vals = vec![T::zero(); n + 1];
    vals[n] = cur;
    for k in (1..=n).rev() {
        let kt = T::from_usize(k).expect("k");
        let prev = two * kt / q * cur + next;
        next = cur;
        cur = prev;
        vals[k - 1] = cur;
        if cur > big {
            let f = T::one() / big;
            for v in vals[k - 1..].iter_mut() {
                *v = *v * f;
            }
            next = next * f;
            cur = cur * f;
        }
    }
    let mut norm = vals[0];
    for v in &vals[1..] {
        norm = norm + two * *v;
    }
    for k in 0..=k_max {
        out[k] = vals[k] / norm;
    }
    out
}
