//! Classical problem parameters, spectral normalization and reference solves.

use num_complex::Complex64;

use crate::error::{InstanceError, Result};
use crate::instance::{vec_norm, Instance, ScaleRecord};
use crate::linalg::{cg_solve, dense_abs_extremes, iterative_abs_extremes, lu_solve, residual_norm, spectral_norm};

/// Thresholds and tolerances of the metric computations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsConfig {
    /// Largest dimension handled by dense eigendecomposition and LU.
    pub dense_threshold: usize,
    pub lanczos_tol: f64,
    pub lanczos_max_iter: usize,
    /// Relative accuracy of the spectral norm used for normalization.
    pub norm_tol: f64,
    pub cg_tol: f64,
    pub cg_max_iter: usize,
    /// `|lambda_min| / |lambda_max|` below this counts as singular.
    pub singular_ratio: f64,
    /// Required `||A x - b|| / ||b||` of reference solves.
    pub residual_tol: f64,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        MetricsConfig {
            dense_threshold: 4096,
            lanczos_tol: 1e-8,
            lanczos_max_iter: 300,
            norm_tol: 1e-12,
            cg_tol: 1e-12,
            cg_max_iter: 200_000,
            singular_ratio: 1e-14,
            residual_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricsMode {
    Dense,
    UseGroundTruth,
    Iterative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KappaSource {
    ExactEigen,
    GeneratorGroundTruth,
    IterativeEstimate,
}

impl KappaSource {
    pub fn as_str(self) -> &'static str {
        match self {
            KappaSource::ExactEigen => "exact_eigen",
            KappaSource::GeneratorGroundTruth => "generator_ground_truth",
            KappaSource::IterativeEstimate => "iterative_estimate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceMetrics {
    pub dim: usize,
    pub sparsity_d: usize,
    pub kappa: f64,
    pub a_max: f64,
    pub x_norm: f64,
    pub kappa_source: KappaSource,
}

/// Condition number, sparsity, largest entry and solution norm of a normalized instance.
pub fn compute_metrics(inst: &Instance, mode: MetricsMode, cfg: &MetricsConfig) -> Result<InstanceMetrics> {
    let n = inst.dim();
    if inst.matrix.nnz() == 0 {
        return Err(InstanceError::ZeroMatrix);
    }
    let (kappa, source) = match mode {
        MetricsMode::Dense if n <= cfg.dense_threshold => {
            let (lo, hi) = dense_abs_extremes(&inst.matrix);
            (checked_ratio(lo, hi, cfg)?, KappaSource::ExactEigen)
        }
        MetricsMode::Dense => match inst.kappa_truth {
            Some(k) => (k, KappaSource::GeneratorGroundTruth),
            None => return Err(InstanceError::DimensionTooLarge { n, threshold: cfg.dense_threshold }),
        },
        MetricsMode::UseGroundTruth => (inst.kappa_truth.ok_or(InstanceError::MissingGroundTruth)?, KappaSource::GeneratorGroundTruth),
        MetricsMode::Iterative => {
            let (lo, hi) = iterative_abs_extremes(&inst.matrix, cfg.lanczos_tol, cfg.lanczos_max_iter)?;
            (checked_ratio(lo, hi, cfg)?, KappaSource::IterativeEstimate)
        }
    };
    let x = solve_reference(inst, cfg)?;
    Ok(InstanceMetrics {
        dim: n,
        sparsity_d: inst.matrix.sparsity(),
        kappa,
        a_max: inst.matrix.max_abs(),
        x_norm: vec_norm(&x),
        kappa_source: source,
    })
}

fn checked_ratio(lo: f64, hi: f64, cfg: &MetricsConfig) -> Result<f64> {
    if !(lo > cfg.singular_ratio * hi) {
        return Err(InstanceError::SingularMatrix { lambda_min: lo, lambda_max: hi });
    }
    Ok(hi / lo)
}

/// Rescales to unit spectral norm and unit rhs, accumulating the factors in the scale record.
pub fn normalize(inst: &Instance, cfg: &MetricsConfig) -> Result<Instance> {
    if inst.matrix.nnz() == 0 {
        return Err(InstanceError::ZeroMatrix);
    }
    let bn = inst.rhs_norm();
    if bn == 0.0 {
        return Err(InstanceError::ZeroRhs);
    }
    let sn = spectral_norm(&inst.matrix, cfg.dense_threshold, cfg.norm_tol, cfg.lanczos_max_iter.max(500))?;
    if sn == 0.0 {
        return Err(InstanceError::ZeroMatrix);
    }
    Ok(rescaled(inst, sn, bn))
}

/// Divides matrix and rhs by known factors; a factor within a few ulps of one is skipped.
pub fn rescaled(inst: &Instance, matrix_factor: f64, rhs_factor: f64) -> Instance {
    let near_one = |f: f64| (f - 1.0).abs() <= 4.0 * f64::EPSILON;
    let mut out = inst.clone();
    if !near_one(matrix_factor) {
        out.matrix = inst.matrix.scaled(1.0 / matrix_factor);
        out.scale.matrix *= matrix_factor;
    }
    if !near_one(rhs_factor) {
        out.rhs = inst.rhs.iter().map(|z| z / rhs_factor).collect();
        out.scale.rhs *= rhs_factor;
    }
    out
}

/// The scale record of an instance built as `A / matrix_factor`, `b / rhs_factor`.
pub fn scale_of(matrix_factor: f64, rhs_factor: f64) -> ScaleRecord {
    ScaleRecord { matrix: matrix_factor, rhs: rhs_factor }
}

/// `x = A^{-1} b` by dense LU up to the dense threshold, conjugate gradients above it.
pub fn solve_reference(inst: &Instance, cfg: &MetricsConfig) -> Result<Vec<Complex64>> {
    let x = if inst.dim() <= cfg.dense_threshold {
        lu_solve(&inst.matrix, &inst.rhs)?
    } else {
        cg_solve(&inst.matrix, &inst.rhs, cfg.cg_tol, cfg.cg_max_iter)?
    };
    let res = residual_norm(&inst.matrix, &x, &inst.rhs);
    let bn = inst.rhs_norm();
    if !(res <= cfg.residual_tol * bn) {
        return Err(InstanceError::ResidualTooLarge { residual: res, bound: cfg.residual_tol * bn });
    }
    Ok(x)
}
