//! Dense check of the Fourier linear-combination-of-unitaries kernel.

use nalgebra::DMatrix;
use num_complex::Complex64;
use qls_costkit::fourier_grid;

use crate::error::{ApproxError, Result};
use crate::poly::{ApproxPolynomial, Basis, Domain, LogCoeff, Parity};

/// Largest dimension accepted by [`fourier_kernel_check`].
pub const MAX_KERNEL_DIM: usize = 64;

/// Grid of the kernel: `dy`, `J`, `dz`, `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierGrid {
    pub dy: f64,
    pub j: u64,
    pub dz: f64,
    pub l: u64,
}

impl FourierGrid {
    pub fn new(kappa: f64, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(ApproxError::EpsilonOutOfRange(epsilon));
        }
        let lg = (1.0 + 8.0 * kappa / epsilon).ln();
        let dy = epsilon / 16.0 / lg.sqrt();
        let j = (16.0 * 2f64.sqrt() * kappa / epsilon * lg).floor() as u64;
        let (dz, l) = fourier_grid(kappa, epsilon);
        Ok(FourierGrid { dy, j, dz, l })
    }

    /// Same `dy`, `J` and z window `L dz = 2 sqrt(lg)`, with `dz` shrunk to
    /// `2 pi / ((kappa + 1 + J dy / sqrt(lg)) sqrt(lg))`.
    ///
    /// The z sum is a Riemann sum of `z e^{-z^2/2} sin(lambda y z)` with `y` up to
    /// `Y = J dy`; its first alias sits at frequency `2 pi / dz - lambda Y`. The printed `dz`
    /// leaves `(kappa + 1 - sqrt(2) kappa) sqrt(lg)`, which goes negative for `kappa > 2.414`
    /// and is zero at `lambda = 1`, `kappa = 2.414`. Shrinking `dz` restores the margin
    /// `(kappa + 1) sqrt(lg)` uniformly on `|lambda| <= 1`.
    pub fn resolved(kappa: f64, epsilon: f64) -> Result<Self> {
        let p = Self::new(kappa, epsilon)?;
        let lg = (1.0 + 8.0 * kappa / epsilon).ln();
        let y = p.j as f64 * p.dy;
        let dz = 2.0 * std::f64::consts::PI / (kappa + 1.0 + y / lg.sqrt()) / lg.sqrt();
        let l = (2.0 * lg.sqrt() / dz).floor() as u64;
        Ok(FourierGrid { dz, l, ..p })
    }

    /// `alpha_jl = dy dz^2 |l| e^{-(l dz)^2/2} / sqrt(2 pi)`.
    pub fn alpha(&self, l: u64) -> f64 {
        let z = l as f64 * self.dz;
        self.dy * self.dz * z * (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
    }

    /// `sum_{j,l} alpha_jl`.
    pub fn alpha_total(&self) -> f64 {
        2.0 * self.j as f64 * (1..=self.l).map(|l| self.alpha(l)).sum::<f64>()
    }

    /// Largest simulation time `(J - 1) L dy dz`.
    pub fn max_time(&self) -> f64 {
        (self.j.saturating_sub(1) * self.l) as f64 * self.dy * self.dz
    }
}

/// Scalar kernel `sum_m c_m sin(m dy dz lambda)`: the terms `l` and `-l` of
/// `sum alpha_jl sign(l) e^{-i lambda t_jl}` pair to `-2i alpha_jl sin(lambda t_jl)`, and the
/// global phase `i` is removed so the series approximates `1/lambda`.
pub fn fourier_kernel(kappa: f64, epsilon: f64) -> Result<ApproxPolynomial> {
    fourier_kernel_on(&FourierGrid::new(kappa, epsilon)?, kappa, epsilon)
}

/// [`fourier_kernel`] on an explicit grid.
pub fn fourier_kernel_on(g: &FourierGrid, kappa: f64, epsilon: f64) -> Result<ApproxPolynomial> {
    let m_max = (g.j.saturating_sub(1) * g.l) as usize;
    let mut c = vec![0.0f64; m_max + 1];
    for l in 1..=g.l {
        let a = 2.0 * g.alpha(l);
        for j in 1..g.j {
            c[(j * l) as usize] += a;
        }
    }
    let coeffs = c.into_iter().map(|v| if v == 0.0 { LogCoeff::zero() } else { LogCoeff::from_value(v) }).collect();
    Ok(ApproxPolynomial::new(Basis::FourierSine, Parity::Odd, coeffs, m_max as u64, Domain::dkappa(kappa), epsilon)
        .with_omega(g.dy * g.dz))
}

/// `||A^{-1} - h(A)||` for Hermitian `A` with spectrum in `D_kappa`.
///
/// `h(A)` is assembled densely as `V diag(h(lambda)) V^dagger`, `A^{-1}` by LU, and the
/// spectral norm of the difference by SVD.
pub fn fourier_kernel_check(a: &DMatrix<Complex64>, kappa: f64, epsilon: f64) -> Result<f64> {
    fourier_kernel_check_on(a, &FourierGrid::new(kappa, epsilon)?, kappa, epsilon)
}

/// [`fourier_kernel_check`] on an explicit grid.
pub fn fourier_kernel_check_on(a: &DMatrix<Complex64>, grid: &FourierGrid, kappa: f64, epsilon: f64) -> Result<f64> {
    let n = a.nrows();
    if n != a.ncols() || n == 0 || n > MAX_KERNEL_DIM {
        return Err(ApproxError::Domain(format!("need a square matrix of dimension 1..={MAX_KERNEL_DIM}, got {}x{}", n, a.ncols())));
    }
    if !(kappa > 1.0) {
        return Err(ApproxError::Domain(format!("kappa must exceed 1, got {kappa}")));
    }
    let eig = a.clone().symmetric_eigen();
    let tol = 1e-12;
    for &lam in eig.eigenvalues.iter() {
        let al = lam.abs();
        if al > 1.0 + tol || al < 1.0 / kappa - tol {
            return Err(ApproxError::EigenvalueOutOfDomain { lambda: lam, kappa });
        }
    }
    let h = fourier_kernel_on(grid, kappa, epsilon)?;
    let v = &eig.eigenvectors;
    let hd = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(h.eval(l), 0.0)));
    let ha = v * hd * v.adjoint();
    let inv = a.clone().lu().try_inverse().ok_or_else(|| ApproxError::Domain("matrix is singular".into()))?;
    let diff = inv - ha;
    Ok(diff.singular_values().max())
}
