//! Row-compressed Hermitian matrices with every stored entry mirrored by its conjugate.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{InstanceError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SparseHermitian {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<Complex64>,
}

impl SparseHermitian {
    /// Builds from triplets; duplicates are summed and exact zeros dropped.
    ///
    /// Fails unless `a[j][k] == conj(a[k][j])` holds bit-exactly for every stored entry.
    pub fn from_triplets(n: usize, mut trip: Vec<(usize, usize, Complex64)>) -> Result<Self> {
        for &(j, k, v) in &trip {
            if j >= n || k >= n {
                return Err(InstanceError::IndexOutOfRange { row: j, col: k, n });
            }
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(InstanceError::NonFinite("matrix"));
            }
        }
        trip.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut row_ptr = vec![0usize; n + 1];
        let mut col_idx = Vec::with_capacity(trip.len());
        let mut values: Vec<Complex64> = Vec::with_capacity(trip.len());
        let mut rows = Vec::with_capacity(trip.len());
        for (j, k, v) in trip {
            if let (Some(&lr), Some(&lc)) = (rows.last(), col_idx.last()) {
                if lr == j && lc == k {
                    *values.last_mut().unwrap() += v;
                    continue;
                }
            }
            rows.push(j);
            col_idx.push(k);
            values.push(v);
        }
        let mut w = 0;
        for i in 0..values.len() {
            if values[i] != Complex64::new(0.0, 0.0) {
                rows[w] = rows[i];
                col_idx[w] = col_idx[i];
                values[w] = values[i];
                w += 1;
            }
        }
        rows.truncate(w);
        col_idx.truncate(w);
        values.truncate(w);
        for &r in &rows {
            row_ptr[r + 1] += 1;
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        let m = SparseHermitian { n, row_ptr, col_idx, values };
        m.check_hermitian()?;
        Ok(m)
    }

    fn check_hermitian(&self) -> Result<()> {
        for j in 0..self.n {
            for (k, v) in self.row(j) {
                match self.get(k, j) {
                    Some(w) if w == v.conj() => {}
                    _ => return Err(InstanceError::NotHermitian { row: j, col: k }),
                }
            }
        }
        Ok(())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        let trip = d.iter().enumerate().map(|(i, &x)| (i, i, Complex64::new(x, 0.0))).collect();
        Self::from_triplets(d.len(), trip).expect("real diagonal is Hermitian")
    }

    /// Dense Hermitian input; entries are mirrored from the upper triangle.
    pub fn from_dense_upper(a: &DMatrix<Complex64>) -> Result<Self> {
        let n = a.nrows();
        let mut trip = Vec::new();
        for j in 0..n {
            let d = a[(j, j)].re;
            if d != 0.0 {
                trip.push((j, j, Complex64::new(d, 0.0)));
            }
            for k in j + 1..n {
                let v = a[(j, k)];
                if v != Complex64::new(0.0, 0.0) {
                    trip.push((j, k, v));
                    trip.push((k, j, v.conj()));
                }
            }
        }
        Self::from_triplets(n, trip)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, j: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let r = self.row_ptr[j]..self.row_ptr[j + 1];
        self.col_idx[r.clone()].iter().copied().zip(self.values[r].iter().copied())
    }

    pub fn get(&self, j: usize, k: usize) -> Option<Complex64> {
        let r = self.row_ptr[j]..self.row_ptr[j + 1];
        let cols = &self.col_idx[r.clone()];
        cols.binary_search(&k).ok().map(|p| self.values[r.start + p])
    }

    /// Stored entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.n).flat_map(move |j| self.row(j).map(move |(k, v)| (j, k, v)))
    }

    /// `y = A x`.
    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        for (j, yj) in y.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for p in self.row_ptr[j]..self.row_ptr[j + 1] {
                acc += self.values[p] * x[self.col_idx[p]];
            }
            *yj = acc;
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut m = self.clone();
        for v in &mut m.values {
            *v = *v * factor;
        }
        // scaling by a real factor preserves exact conjugate symmetry
        m
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_row_nnz(&self) -> usize {
        (0..self.n).map(|j| self.row_ptr[j + 1] - self.row_ptr[j]).max().unwrap_or(0)
    }

    pub fn max_col_nnz(&self) -> usize {
        let mut counts = vec![0usize; self.n];
        for &k in &self.col_idx {
            counts[k] += 1;
        }
        counts.into_iter().max().unwrap_or(0)
    }

    /// Maximum nonzero count over rows and columns.
    pub fn sparsity(&self) -> usize {
        self.max_row_nnz().max(self.max_col_nnz())
    }

    /// Largest `|a[j][k] - conj(a[k][j])|` over stored entries and their mirrors.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (j, k, v) in self.triplets() {
            let w = self.get(k, j).unwrap_or_default();
            worst = worst.max((v - w.conj()).norm());
        }
        worst
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for (j, k, v) in self.triplets() {
            a[(j, k)] = v;
        }
        a
    }
}
