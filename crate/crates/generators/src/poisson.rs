//! Second-order finite-difference Dirichlet Laplacian on `[-1, 1]^D`, `f = 1`.

use num_complex::Complex64;
use qls_instances::{Instance, ScaleRecord, SparseHermitian, Source};

use crate::error::{GenError, Result};

/// Largest instance dimension built by default.
pub const DEFAULT_MAX_DIM: usize = 1 << 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PoissonSpec {
    pub dim: usize,
    /// Grid has `2^(refine + 1) - 1` interior points per axis.
    pub refine: u32,
    pub max_n: usize,
}

impl PoissonSpec {
    pub fn new(dim: usize, refine: u32) -> Self {
        PoissonSpec { dim, refine, max_n: DEFAULT_MAX_DIM }
    }

    pub fn points_per_axis(&self) -> usize {
        (1usize << (self.refine + 1)) - 1
    }
}

pub fn gen_poisson(spec: &PoissonSpec) -> Result<Instance> {
    let m = spec.points_per_axis();
    let inst = gen_poisson_points(spec.dim, m, spec.max_n)?;
    Ok(inst)
}

/// `sin^2(m pi / (2(m+1)))`: top eigenvalue of `tridiag(-1, 2, -1)` over 4.
fn top_axis(m: usize) -> f64 {
    (m as f64 * std::f64::consts::PI / (2.0 * (m as f64 + 1.0))).sin().powi(2)
}

fn bottom_axis(m: usize) -> f64 {
    (std::f64::consts::PI / (2.0 * (m as f64 + 1.0))).sin().powi(2)
}

/// Dirichlet Laplacian with `m` interior points per axis, divided by its top eigenvalue
/// `(4 D / h^2) sin^2(m pi / (2(m+1)))`, `h = 2/(m+1)`; rhs `1/sqrt(N)`.
pub fn gen_poisson_points(dim: usize, m: usize, max_n: usize) -> Result<Instance> {
    if !(1..=3).contains(&dim) {
        return Err(GenError::DimensionUnsupported(dim));
    }
    if m == 0 {
        return Err(GenError::InvalidSpec("need at least one interior point per axis".into()));
    }
    let n = m.checked_pow(dim as u32).filter(|&n| n <= max_n).ok_or(GenError::TooLarge { n: m.saturating_pow(dim as u32), max: max_n })?;
    let h = 2.0 / (m as f64 + 1.0);
    let lmax = 4.0 * dim as f64 * top_axis(m) / (h * h);
    // entries of (1/h^2) stencil / lmax, without the h^2 round trip
    let c = 1.0 / (4.0 * dim as f64 * top_axis(m));
    let diag = Complex64::new(2.0 * dim as f64 * c, 0.0);
    let off = Complex64::new(-c, 0.0);

    let mut stride = [1usize; 3];
    for a in 1..dim {
        stride[a] = stride[a - 1] * m;
    }
    let mut trip = Vec::with_capacity(n * (2 * dim + 1));
    for p in 0..n {
        trip.push((p, p, diag));
        for s in stride.iter().take(dim) {
            let coord = (p / s) % m;
            if coord > 0 {
                trip.push((p, p - s, off));
            }
            if coord + 1 < m {
                trip.push((p, p + s, off));
            }
        }
    }
    let matrix = SparseHermitian::from_triplets(n, trip)?;
    let rn = (n as f64).sqrt();
    let rhs = vec![Complex64::new(1.0 / rn, 0.0); n];
    let id = format!("poisson-D{dim}-m{m}");
    Ok(Instance::new(id, Source::Poisson, matrix, rhs)?
        .with_kappa_truth(poisson_kappa_closed_form(dim, m))
        .with_scale(ScaleRecord { matrix: lmax, rhs: rn }))
}

/// Ratio of extremal eigenvalues of the `D`-fold Kronecker sum; equal axes make every
/// dimension share the one-dimensional ratio.
pub fn poisson_kappa_closed_form(dim: usize, m: usize) -> f64 {
    let _ = dim;
    if m <= 1 {
        return 1.0;
    }
    top_axis(m) / bottom_axis(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_points_is_scaled_tridiagonal() {
        let inst = gen_poisson(&PoissonSpec::new(1, 1)).unwrap();
        let s = 2.0 + 2f64.sqrt();
        assert!((inst.matrix.get(0, 0).unwrap().re - 2.0 / s).abs() < 1e-15);
        assert!((inst.matrix.get(0, 1).unwrap().re + 1.0 / s).abs() < 1e-15);
        assert_eq!(inst.matrix.get(0, 2), None);
        assert!((poisson_kappa_closed_form(1, 3) - (3.0 + 2.0 * 2f64.sqrt())).abs() < 1e-13);
        assert!((poisson_kappa_closed_form(2, 3) - (3.0 + 2.0 * 2f64.sqrt())).abs() < 1e-13);
        assert_eq!(poisson_kappa_closed_form(1, 1), 1.0);
    }

    #[test]
    fn stencil_width() {
        for (dim, d) in [(1, 3), (2, 5), (3, 7)] {
            let inst = gen_poisson(&PoissonSpec::new(dim, 2)).unwrap();
            assert_eq!(inst.matrix.sparsity(), d);
            assert_eq!(inst.dim(), 7usize.pow(dim as u32));
        }
    }

    #[test]
    fn limits() {
        assert!(matches!(gen_poisson(&PoissonSpec::new(4, 1)), Err(GenError::DimensionUnsupported(4))));
        assert!(matches!(gen_poisson(&PoissonSpec::new(3, 6)), Err(GenError::TooLarge { .. })));
        assert!(gen_poisson(&PoissonSpec::new(3, 5)).is_ok());
    }
}
