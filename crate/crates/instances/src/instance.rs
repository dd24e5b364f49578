use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{InstanceError, Result};
use crate::sparse::SparseHermitian;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    Random,
    Poisson,
    Simplex,
    External,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Random => "random",
            Source::Poisson => "poisson",
            Source::Simplex => "simplex",
            Source::External => "external",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Source {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "random" => Ok(Source::Random),
            "poisson" => Ok(Source::Poisson),
            "simplex" => Ok(Source::Simplex),
            "external" => Ok(Source::External),
            other => Err(format!("unknown source {other:?}")),
        }
    }
}

/// Factors the original matrix and rhs were divided by.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleRecord {
    pub matrix: f64,
    pub rhs: f64,
}

impl Default for ScaleRecord {
    fn default() -> Self {
        ScaleRecord { matrix: 1.0, rhs: 1.0 }
    }
}

/// Hermitian system `A x = b` with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub id: String,
    pub source: Source,
    pub matrix: SparseHermitian,
    pub rhs: Vec<Complex64>,
    pub scale: ScaleRecord,
    /// Condition number known from construction, if any.
    pub kappa_truth: Option<f64>,
}

impl Instance {
    pub fn new(id: impl Into<String>, source: Source, matrix: SparseHermitian, rhs: Vec<Complex64>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return Err(InstanceError::InvalidId(id));
        }
        if rhs.len() != matrix.dim() {
            return Err(InstanceError::DimensionMismatch { n: matrix.dim(), rhs: rhs.len() });
        }
        if rhs.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(InstanceError::NonFinite("rhs"));
        }
        Ok(Instance { id, source, matrix, rhs, scale: ScaleRecord::default(), kappa_truth: None })
    }

    pub fn with_kappa_truth(mut self, kappa: f64) -> Self {
        self.kappa_truth = Some(kappa);
        self
    }

    pub fn with_scale(mut self, scale: ScaleRecord) -> Self {
        self.scale = scale;
        self
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn rhs_norm(&self) -> f64 {
        vec_norm(&self.rhs)
    }
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    // scaled accumulation keeps tiny and huge entries representable
    let scale = v.iter().map(|z| z.re.abs().max(z.im.abs())).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let s: f64 = v.iter().map(|z| (z / scale).norm_sqr()).sum();
    scale * s.sqrt()
}
