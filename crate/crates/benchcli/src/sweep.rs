//! Instance-parallel sweep with a sorted-id merge.

use std::path::{Path, PathBuf};

use qls_instances::{load_instance, Instance};
use rayon::prelude::*;

use crate::config::SweepConfig;
use crate::error::{BenchError, Result};
use crate::heatmap::{build_heatmap, HeatmapTable};
use crate::rows::{evaluate_instance, CostRow, InstanceResult};

/// An instance that could not be loaded or costed.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Failure {
    pub id: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    /// Sorted by id, solvers in sweep order within an id.
    pub results: Vec<InstanceResult>,
    pub rows: Vec<CostRow>,
    pub table: HeatmapTable,
    pub failures: Vec<Failure>,
    pub unbinned: Vec<String>,
}

impl SweepOutcome {
    pub fn processed(&self) -> usize {
        self.results.len()
    }
}

/// Runs `f` on a pool of `threads` workers, or on the global pool when `None`.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| BenchError::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Costs every instance; failures are logged and skipped. Output does not depend on input order
/// or thread count.
pub fn run_sweep(instances: &[Instance], cfg: &SweepConfig) -> Result<SweepOutcome> {
    cfg.validate()?;
    let mut order: Vec<&Instance> = instances.iter().collect();
    order.sort_by(|a, b| a.id.cmp(&b.id));

    let mut failures = Vec::new();
    let mut unique = Vec::with_capacity(order.len());
    for inst in order {
        if unique.last().is_some_and(|prev: &&Instance| prev.id == inst.id) {
            log::warn!("{}: duplicate id, skipped", inst.id);
            failures.push(Failure { id: inst.id.clone(), error: "duplicate id".into() });
        } else {
            unique.push(inst);
        }
    }
    if unique.is_empty() {
        log::warn!("sweep has no instances; the table is empty");
    }

    let evaluated: Vec<(String, Result<InstanceResult>)> = unique.par_iter().map(|inst| (inst.id.clone(), evaluate_instance(inst, cfg))).collect();
    let mut results = Vec::with_capacity(evaluated.len());
    for (id, outcome) in evaluated {
        match outcome {
            Ok(r) => results.push(r),
            Err(e) => {
                log::warn!("{id}: {e}");
                failures.push(Failure { id, error: e.to_string() });
            }
        }
    }
    failures.sort_by(|a, b| a.id.cmp(&b.id));

    let rows: Vec<CostRow> = results.iter().flat_map(|r| r.rows(cfg.epsilon)).collect();
    let binned = build_heatmap(&rows, cfg);
    for id in &binned.unbinned {
        log::warn!("{id}: outside every heatmap bin");
    }
    Ok(SweepOutcome { results, rows, table: binned.table, failures, unbinned: binned.unbinned })
}

/// Expands directories to their `*.qls` files; plain files are taken as given. Sorted, deduplicated.
pub fn collect_instance_paths(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let entries = std::fs::read_dir(input).map_err(|e| BenchError::io(input, e))?;
            for entry in entries {
                let path = entry.map_err(|e| BenchError::io(input, e))?.path();
                if path.extension().is_some_and(|x| x == INSTANCE_EXTENSION) {
                    paths.push(path);
                }
            }
        } else {
            paths.push(input.clone());
        }
    }
    paths.sort();
    paths.dedup();
    Ok(paths)
}

pub const INSTANCE_EXTENSION: &str = "qls";

/// Loads every path in parallel; unreadable files become failures keyed by their path.
pub fn load_instances(paths: &[PathBuf]) -> (Vec<Instance>, Vec<Failure>) {
    let loaded: Vec<(&Path, qls_instances::Result<Instance>)> = paths.par_iter().map(|p| (p.as_path(), load_instance(p))).collect();
    let mut instances = Vec::new();
    let mut failures = Vec::new();
    for (path, outcome) in loaded {
        match outcome {
            Ok(inst) => instances.push(inst),
            Err(e) => {
                log::warn!("{}: {e}", path.display());
                failures.push(Failure { id: path.display().to_string(), error: e.to_string() });
            }
        }
    }
    (instances, failures)
}
