//! Run configuration: defaults, a `key = value` file and command-line overrides, in that order.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use qls_costkit::{Solver, SolverParamsF64};
use qls_instances::{MetricsConfig, MetricsMode};

use crate::error::{BenchError, Result};

/// How `kappa` is obtained per instance during a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricsChoice {
    /// Dense eigenvalues up to the dense threshold, generator ground truth above it.
    Dense,
    GroundTruth,
    Iterative,
}

impl MetricsChoice {
    pub fn mode(self) -> MetricsMode {
        match self {
            MetricsChoice::Dense => MetricsMode::Dense,
            MetricsChoice::GroundTruth => MetricsMode::UseGroundTruth,
            MetricsChoice::Iterative => MetricsMode::Iterative,
        }
    }
}

impl FromStr for MetricsChoice {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dense" => Ok(MetricsChoice::Dense),
            "ground_truth" => Ok(MetricsChoice::GroundTruth),
            "iterative" => Ok(MetricsChoice::Iterative),
            other => Err(format!("unknown metrics mode {other:?} (dense, ground_truth, iterative)")),
        }
    }
}

/// Averaging domain of heatmap cells. Only the geometric mean of counts is offered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aggregation {
    /// Arithmetic mean of `log10` counts.
    #[default]
    GeometricMean,
}

/// Everything a sweep needs besides the instances.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub epsilon: f64,
    pub solvers: Vec<Solver>,
    /// Explicit `kappa` edges; `None` means decade edges spanning the data.
    pub kappa_bins: Option<Vec<f64>>,
    /// Explicit integer `d` edges; `None` means one bin per sparsity value.
    pub d_bins: Option<Vec<u64>>,
    pub aggregation: Aggregation,
    pub params: SolverParamsF64,
    pub metrics: MetricsChoice,
    pub metrics_config: MetricsConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            epsilon: 1e-8,
            solvers: Solver::ALL.to_vec(),
            kappa_bins: None,
            d_bins: None,
            aggregation: Aggregation::GeometricMean,
            params: SolverParamsF64::default(),
            metrics: MetricsChoice::Dense,
            metrics_config: MetricsConfig::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(BenchError::Config(format!("epsilon must lie in (0, 1), got {}", self.epsilon)));
        }
        if self.solvers.is_empty() {
            return Err(BenchError::Config("solver list is empty".into()));
        }
        if let Some(edges) = &self.kappa_bins {
            if edges.len() < 2 || edges.iter().any(|e| !(e.is_finite() && *e > 0.0)) || edges.windows(2).any(|w| w[0] >= w[1]) {
                return Err(BenchError::Config(format!("kappa_bins must be at least two positive strictly increasing edges, got {edges:?}")));
            }
        }
        if let Some(edges) = &self.d_bins {
            if edges.len() < 2 || edges[0] == 0 || edges.windows(2).any(|w| w[0] >= w[1]) {
                return Err(BenchError::Config(format!("d_bins must be at least two strictly increasing edges starting at 1 or above, got {edges:?}")));
            }
        }
        self.params.validate().map_err(|e| BenchError::Config(e.to_string()))
    }

    /// Solver parameters with the sweep's epsilon applied.
    pub fn solver_params(&self) -> SolverParamsF64 {
        SolverParamsF64 { epsilon: self.epsilon, ..self.params }
    }
}

/// Global settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub out_dir: PathBuf,
    /// Worker threads; `None` lets rayon decide.
    pub threads: Option<usize>,
    pub sweep: SweepConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, out_dir: PathBuf::from("out"), threads: None, sweep: SweepConfig::default() }
    }
}

/// Keys accepted in a config file.
pub const CONFIG_KEYS: [&str; 16] = [
    "seed",
    "epsilon",
    "out_dir",
    "threads",
    "solvers",
    "kappa_bins",
    "d_bins",
    "qsvt_qaa",
    "qaa_growth_c",
    "tail_cutoff",
    "metrics",
    "dense_threshold",
    "lanczos_tol",
    "lanczos_max_iter",
    "cg_tol",
    "residual_tol",
];

fn parse_value<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse::<T>().map_err(|e| BenchError::Config(format!("line {line}: {key} = {value:?}: {e}")))
}

fn parse_list<T: FromStr>(key: &str, value: &str, line: usize) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    value.split(',').map(|v| parse_value(key, v.trim(), line)).collect()
}

pub fn parse_solvers(value: &str) -> std::result::Result<Vec<Solver>, String> {
    value
        .split(',')
        .map(|s| Solver::parse(s.trim()).ok_or_else(|| format!("unknown solver {:?}", s.trim())))
        .collect()
}

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        let sweep = &mut self.sweep;
        match key {
            "seed" => self.seed = parse_value(key, value, line)?,
            "epsilon" => sweep.epsilon = parse_value(key, value, line)?,
            "out_dir" => self.out_dir = PathBuf::from(value),
            "threads" => {
                let n: usize = parse_value(key, value, line)?;
                if n == 0 {
                    return Err(BenchError::Config(format!("line {line}: threads must be positive")));
                }
                self.threads = Some(n);
            }
            "solvers" => sweep.solvers = parse_solvers(value).map_err(|e| BenchError::Config(format!("line {line}: {e}")))?,
            "kappa_bins" => sweep.kappa_bins = Some(parse_list(key, value, line)?),
            "d_bins" => sweep.d_bins = Some(parse_list(key, value, line)?),
            "qsvt_qaa" => sweep.params.include_qaa_in_qsvt = parse_value(key, value, line)?,
            "qaa_growth_c" => sweep.params.qaa_growth_c = parse_value(key, value, line)?,
            "tail_cutoff" => sweep.params.tail_cutoff = parse_value(key, value, line)?,
            "metrics" => sweep.metrics = parse_value(key, value, line)?,
            "dense_threshold" => sweep.metrics_config.dense_threshold = parse_value(key, value, line)?,
            "lanczos_tol" => sweep.metrics_config.lanczos_tol = parse_value(key, value, line)?,
            "lanczos_max_iter" => sweep.metrics_config.lanczos_max_iter = parse_value(key, value, line)?,
            "cg_tol" => sweep.metrics_config.cg_tol = parse_value(key, value, line)?,
            "residual_tol" => sweep.metrics_config.residual_tol = parse_value(key, value, line)?,
            other => return Err(BenchError::Config(format!("line {line}: unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Reads `key = value` lines; `#` starts a comment, blank lines are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| BenchError::Config(format!("line {}: expected key = value, got {line:?}", i + 1)))?;
            self.set(key.trim(), value.trim(), i + 1)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::Config(format!("{}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.sweep.validate()
    }
}
