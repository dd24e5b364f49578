//! Table of every approximation bound with its measured value, for reporting.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::bessel::bessel_j_seq;
use crate::cheb::{chebyshev_points, dkappa_points};
use crate::error::Result;
use crate::fourier::{fourier_kernel_check, fourier_kernel_check_on, FourierGrid};
use crate::hamsim::{hamsim_truncation_degree, TruncatedHamsim};
use crate::hhl::{hhl_exact_success_prob, HhlToyModel};
use crate::inverse::cheb_inverse_coeffs;
use crate::mi::MiPoly;
use crate::sign::{RectPoly, SignPoly};

/// Slack added to every bound before comparison.
pub const SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationRow {
    pub check: &'static str,
    pub params: String,
    pub measured: f64,
    pub bound: f64,
    /// `true` when the measured value must stay below the bound, `false` when above.
    pub upper: bool,
    pub pass: bool,
}

impl ValidationRow {
    fn upper(check: &'static str, params: String, measured: f64, bound: f64) -> Self {
        ValidationRow { check, params, measured, bound, upper: true, pass: measured < bound + SLACK }
    }

    fn lower(check: &'static str, params: String, measured: f64, bound: f64) -> Self {
        ValidationRow { check, params, measured, bound, upper: false, pass: measured > bound - SLACK }
    }
}

fn factorial_bound(k: u32, t: f64) -> f64 {
    (1..=k).fold((t / 2.0).powi(k as i32), |acc, i| acc / i as f64)
}

/// Runs every check on grids of `grid` points.
pub fn validate_all(grid: usize) -> Result<Vec<ValidationRow>> {
    let mut rows = Vec::new();

    let mut worst = 0.0f64;
    for &t in &[0.5f64, 1.0, 2.0] {
        let j = bessel_j_seq(t, 10);
        for k in 1..=10u32 {
            worst = worst.max(j[k as usize].abs() / factorial_bound(k, t));
        }
    }
    rows.push(ValidationRow::upper("bessel_factorial_bound_ratio", "k=1..10 t=0.5,1,2".into(), worst, 1.0));

    let (t, eps) = (5.0f64, 1e-6);
    let r = hamsim_truncation_degree(t, eps)?;
    let h = TruncatedHamsim::new(t, r);
    let pts = chebyshev_points(grid, -1.0, 1.0);
    let err = pts
        .iter()
        .map(|&l| (h.eval(l) - Complex64::new((l * t).cos(), -(l * t).sin())).norm())
        .fold(0.0, f64::max);
    rows.push(ValidationRow::upper("hamsim_truncation_sup", format!("t={t} eps={eps} R={r}"), err, 2.0 * eps));

    let (c, eps) = (2.0, 0.125);
    let g = cheb_inverse_coeffs(c, eps)?;
    let dk = dkappa_points(grid, c);
    let err = dk.iter().map(|&x| (g.eval(x) - 1.0 / x).abs()).fold(0.0, f64::max);
    rows.push(ValidationRow::upper("cheb_inverse_sup", format!("c={c} eps={eps}"), err, 2.0 * eps));
    let low = dk.iter().map(|&x| g.eval(x).abs()).fold(f64::INFINITY, f64::min);
    rows.push(ValidationRow::lower("cheb_inverse_min_abs", format!("c={c} eps={eps}"), low, 1.0 - eps));

    let s = SignPoly::new(0.0, 0.5, 0.05)?;
    let err = pts
        .iter()
        .filter(|&&x| s.in_valid_region(x))
        .map(|&x| (s.eval(x) - x.signum()).abs())
        .fold(0.0, f64::max);
    rows.push(ValidationRow::upper("sign_sup", "a=0 K=0.5 eps=0.05".into(), err, 0.05));

    let rp = RectPoly::new(0.25, 0.25, 0.05)?;
    let err = pts
        .iter()
        .filter(|&&x| rp.in_valid_region(x))
        .map(|&x| (rp.eval(x) - rp.target(x)).abs())
        .fold(0.0, f64::max);
    rows.push(ValidationRow::upper("rect_sup", "t=0.25 delta=0.25 eps=0.05".into(), err, 0.05));

    let mi = MiPoly::new(1, 2.0, 0.2)?;
    let top = pts.iter().map(|&x| mi.eval(x).abs()).fold(0.0, f64::max);
    rows.push(ValidationRow::upper("mi_bounded", "d=1 kappa=2 eps=0.2".into(), top, 1.0));
    let err = dkappa_points(grid, 2.0).iter().map(|&x| (mi.eval(x) - mi.target(x)).abs()).fold(0.0, f64::max);
    rows.push(ValidationRow::upper("mi_close", "d=1 kappa=2 eps=0.2".into(), err, 0.2));

    let a = DMatrix::from_diagonal(&DVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)]));
    let err = fourier_kernel_check(&a, 2.0, 0.1)?;
    rows.push(ValidationRow::upper("fourier_kernel", "diag(1,1/2) kappa=2 eps=0.1".into(), err, 0.1));
    let err = fourier_kernel_check_on(&a, &FourierGrid::resolved(2.0, 0.1)?, 2.0, 0.1)?;
    rows.push(ValidationRow::upper("fourier_kernel_resolved", "diag(1,1/2) kappa=2 eps=0.1".into(), err, 0.1));

    let model = HhlToyModel::new(vec![1.0, 0.7, 0.4, 0.25], vec![0.5, -0.3, 0.6, 0.55], 4.0, 0.1)?;
    let (pt, pe) = hhl_exact_success_prob(&model);
    rows.push(ValidationRow::upper("hhl_success_gap", format!("kappa=4 eps=0.1 T={}", model.clock_size()), (pt - pe).abs(), 0.1));

    Ok(rows)
}
