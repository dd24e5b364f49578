//! Dense and iterative kernels behind metrics, normalization and reference solves.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{InstanceError, Result};
use crate::instance::vec_norm;
use crate::sparse::SparseHermitian;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn axpy(alpha: Complex64, x: &[Complex64], y: &mut [Complex64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Ascending eigenvalues of a dense Hermitian matrix.
pub fn dense_eigenvalues(a: &DMatrix<Complex64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(a.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

/// `(min |lambda|, max |lambda|)` from a dense eigendecomposition.
pub fn dense_abs_extremes(m: &SparseHermitian) -> (f64, f64) {
    let ev = dense_eigenvalues(&m.to_dense());
    abs_extremes(&ev)
}

pub fn abs_extremes(ev: &[f64]) -> (f64, f64) {
    let lo = ev.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    let hi = ev.iter().map(|x| x.abs()).fold(0.0, f64::max);
    (lo, hi)
}

/// Deterministic non-degenerate start vector.
fn start_vector(n: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0 + ((i * 7919) % 97) as f64 / 97.0, ((i * 104729) % 89) as f64 / 178.0))
        .collect();
    let nv = vec_norm(&v);
    v.iter_mut().for_each(|z| *z /= nv);
    v
}

/// Algebraic extremes `(lambda_min, lambda_max)` of a Hermitian operator by Lanczos
/// with full reorthogonalization; converged when both Ritz residuals fall below `tol |theta|`.
pub fn lanczos_extremes<F>(n: usize, op: F, tol: f64, max_iter: usize) -> Result<(f64, f64)>
where
    F: Fn(&[Complex64], &mut [Complex64]),
{
    if n == 0 {
        return Err(InstanceError::ZeroMatrix);
    }
    let kmax = max_iter.min(n).max(1);
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(kmax);
    let mut alpha = Vec::with_capacity(kmax);
    let mut beta: Vec<f64> = Vec::with_capacity(kmax);
    let mut q = start_vector(n);
    let mut w = vec![zero(); n];
    for k in 0..kmax {
        op(&q, &mut w);
        let a = dot(&q, &w).re;
        basis.push(q.clone());
        // two passes of classical Gram-Schmidt against the whole basis
        for _ in 0..2 {
            for b in &basis {
                let h = dot(b, &w);
                axpy(-h, b, &mut w);
            }
        }
        alpha.push(a);
        let bnorm = vec_norm(&w);
        let m = k + 1;
        let check = m == kmax || bnorm <= f64::EPSILON * a.abs().max(1e-300) || m % 5 == 0;
        if check {
            let mut t = DMatrix::<f64>::zeros(m, m);
            for i in 0..m {
                t[(i, i)] = alpha[i];
                if i + 1 < m {
                    t[(i, i + 1)] = beta[i];
                    t[(i + 1, i)] = beta[i];
                }
            }
            let eig = SymmetricEigen::new(t);
            let (mut imin, mut imax) = (0, 0);
            for i in 0..m {
                if eig.eigenvalues[i] < eig.eigenvalues[imin] {
                    imin = i;
                }
                if eig.eigenvalues[i] > eig.eigenvalues[imax] {
                    imax = i;
                }
            }
            let res = |i: usize| (bnorm * eig.eigenvectors[(m - 1, i)]).abs();
            let (lmin, lmax) = (eig.eigenvalues[imin], eig.eigenvalues[imax]);
            let scale = lmin.abs().max(lmax.abs());
            let exhausted = bnorm <= 1e-13 * scale.max(1e-300);
            if exhausted || m == n || (res(imin) <= tol * lmin.abs() && res(imax) <= tol * lmax.abs()) {
                return Ok((lmin, lmax));
            }
        }
        if bnorm == 0.0 {
            break;
        }
        beta.push(bnorm);
        q = w.iter().map(|z| z / bnorm).collect();
    }
    Err(InstanceError::NoConvergence { what: "Lanczos", iterations: kmax })
}

/// Spectral norm of a Hermitian sparse matrix, `max |lambda|`.
pub fn spectral_norm(m: &SparseHermitian, dense_threshold: usize, tol: f64, max_iter: usize) -> Result<f64> {
    if m.dim() <= dense_threshold {
        return Ok(dense_abs_extremes(m).1);
    }
    let (lo, hi) = lanczos_extremes(m.dim(), |x, y| m.matvec(x, y), tol, max_iter)?;
    Ok(lo.abs().max(hi.abs()))
}

/// `(min |lambda|, max |lambda|)` iteratively; indefinite spectra fall back to Lanczos on `A^2`.
pub fn iterative_abs_extremes(m: &SparseHermitian, tol: f64, max_iter: usize) -> Result<(f64, f64)> {
    let n = m.dim();
    let (lo, hi) = lanczos_extremes(n, |x, y| m.matvec(x, y), tol, max_iter)?;
    let top = lo.abs().max(hi.abs());
    if lo > 0.0 {
        return Ok((lo, top));
    }
    if hi < 0.0 {
        return Ok((hi.abs(), top));
    }
    let sq = |x: &[Complex64], y: &mut [Complex64]| {
        let mut t = vec![zero(); x.len()];
        m.matvec(x, &mut t);
        m.matvec(&t, y);
    };
    let (lo2, _) = lanczos_extremes(n, sq, tol, max_iter)?;
    Ok((lo2.max(0.0).sqrt(), top))
}

/// Dense LU solve with one step of iterative refinement.
pub fn lu_solve(m: &SparseHermitian, b: &[Complex64]) -> Result<Vec<Complex64>> {
    let a = m.to_dense();
    let lu = a.clone().lu();
    let rhs = DVector::from_column_slice(b);
    let mut x = lu.solve(&rhs).ok_or(InstanceError::SingularMatrix { lambda_min: 0.0, lambda_max: f64::NAN })?;
    let r = &rhs - &a * &x;
    if let Some(dx) = lu.solve(&r) {
        x += dx;
    }
    Ok(x.iter().copied().collect())
}

/// Conjugate gradients for Hermitian positive-definite systems.
pub fn cg_solve(m: &SparseHermitian, b: &[Complex64], tol: f64, max_iter: usize) -> Result<Vec<Complex64>> {
    let n = m.dim();
    let bnorm = vec_norm(b);
    let mut x = vec![zero(); n];
    if bnorm == 0.0 {
        return Ok(x);
    }
    let mut r = b.to_vec();
    let mut p = r.clone();
    let mut ap = vec![zero(); n];
    let mut rr = dot(&r, &r).re;
    for it in 0..max_iter {
        m.matvec(&p, &mut ap);
        let pap = dot(&p, &ap).re;
        if !(pap > 0.0) {
            return Err(InstanceError::NoConvergence { what: "conjugate gradients (not positive definite)", iterations: it });
        }
        let a = rr / pap;
        axpy(Complex64::new(a, 0.0), &p, &mut x);
        axpy(Complex64::new(-a, 0.0), &ap, &mut r);
        let rr_new = dot(&r, &r).re;
        if rr_new.sqrt() <= tol * bnorm {
            // confirm against the true residual
            m.matvec(&x, &mut ap);
            let true_res: Vec<Complex64> = b.iter().zip(&ap).map(|(u, v)| u - v).collect();
            if vec_norm(&true_res) <= 10.0 * tol * bnorm {
                return Ok(x);
            }
            r = true_res;
            p = r.clone();
            rr = dot(&r, &r).re;
            continue;
        }
        let beta = rr_new / rr;
        for (pi, ri) in p.iter_mut().zip(&r) {
            *pi = ri + *pi * beta;
        }
        rr = rr_new;
    }
    Err(InstanceError::NoConvergence { what: "conjugate gradients", iterations: max_iter })
}

/// `||A x - b||_2`.
pub fn residual_norm(m: &SparseHermitian, x: &[Complex64], b: &[Complex64]) -> f64 {
    let mut ax = vec![zero(); m.dim()];
    m.matvec(x, &mut ax);
    let r: Vec<Complex64> = ax.iter().zip(b).map(|(u, v)| u - v).collect();
    vec_norm(&r)
}
