//! Hermitian dilation `H = [[0, B], [B^T, 0]]` of a basis system.
//!
//! The eigenvalues of `H` are `+-sigma_i(B)`, so `kappa(H) = kappa(B)` and the sparsity of `H`
//! is the larger of the row and column sparsities of `B`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use qls_instances::{normalize, Instance, MetricsConfig, SparseHermitian, Source};

use crate::error::{Result, SimplexError};
use crate::simplex::BasisSnapshot;

/// Smallest admissible LU pivot magnitude of an emitted basis.
pub const MIN_PIVOT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SystemKind {
    /// `B x_B = b`.
    #[default]
    Forward,
    /// `B^T y = c_B`.
    Transposed,
}

/// Smallest `|U_ii|` of the partially pivoted LU of `b`.
pub fn min_pivot(b: &DMatrix<f64>) -> f64 {
    let lu = b.clone().lu();
    let u = lu.u();
    (0..u.nrows().min(u.ncols())).map(|i| u[(i, i)].abs()).fold(f64::INFINITY, f64::min)
}

pub fn dilate(b: &DMatrix<f64>) -> Result<SparseHermitian> {
    let m = b.nrows();
    let mut trip = Vec::new();
    for i in 0..m {
        for j in 0..b.ncols() {
            let v = b[(i, j)];
            if v != 0.0 {
                trip.push((i, m + j, Complex64::new(v, 0.0)));
                trip.push((m + j, i, Complex64::new(v, 0.0)));
            }
        }
    }
    Ok(SparseHermitian::from_triplets(m + b.ncols(), trip)?)
}

pub fn to_qls_instance(snapshot: &BasisSnapshot, lp_name: &str, kind: SystemKind, cfg: &MetricsConfig) -> Result<Instance> {
    let pivot = min_pivot(&snapshot.matrix);
    if !(pivot >= MIN_PIVOT) {
        return Err(SimplexError::SingularBasis { pivot });
    }
    let (mat, top): (DMatrix<f64>, &DVector<f64>) = match kind {
        SystemKind::Forward => (snapshot.matrix.clone(), &snapshot.rhs),
        SystemKind::Transposed => (snapshot.matrix.transpose(), &snapshot.cost),
    };
    let m = mat.nrows();
    let h = dilate(&mat)?;
    let mut rhs = vec![Complex64::new(0.0, 0.0); 2 * m];
    for (i, &v) in top.iter().enumerate() {
        rhs[i] = Complex64::new(v, 0.0);
    }
    let tag = match kind {
        SystemKind::Forward => "",
        SystemKind::Transposed => "-t",
    };
    let name: String = lp_name.chars().map(|c| if c.is_whitespace() { '_' } else { c }).collect();
    let name = if name.is_empty() { "lp".to_string() } else { name };
    let id = format!("simplex-{}-it{}{}", name, snapshot.iteration, tag);
    let inst = Instance::new(id, Source::Simplex, h, rhs)?.with_kappa_truth(snapshot.kappa_b);
    Ok(normalize(&inst, cfg)?)
}
