//! Per-instance cost rows, one per (instance, solver).

use std::io::{Read, Write};

use qls_costkit::{cost_all, CostInputsF64, CostReportF64, Solver};
use qls_instances::{compute_metrics, Instance, InstanceMetrics};
use serde::{Deserialize, Serialize};

use crate::config::SweepConfig;
use crate::error::Result;

/// Column order of the per-instance CSV.
pub const ROW_COLUMNS: [&str; 20] = [
    "id", "source", "N", "d", "kappa", "a_max", "x_norm", "epsilon", "solver", "queries_log10", "n_qaa", "t_hamsim", "alpha", "j0", "s",
    "n_rect", "n_inv", "p", "p0", "warnings",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostRow {
    pub id: String,
    pub source: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub d: usize,
    pub kappa: f64,
    pub a_max: f64,
    pub x_norm: f64,
    pub epsilon: f64,
    pub solver: String,
    pub queries_log10: f64,
    pub n_qaa: f64,
    pub t_hamsim: Option<f64>,
    pub alpha: Option<f64>,
    pub j0: Option<u64>,
    pub s: Option<u64>,
    pub n_rect: Option<u64>,
    pub n_inv: Option<u64>,
    pub p: f64,
    pub p0: f64,
    /// `;`-separated warning tags, empty when there are none.
    pub warnings: String,
}

/// Metrics and the selected solver reports of one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceResult {
    pub id: String,
    pub source: String,
    pub metrics: InstanceMetrics,
    pub reports: Vec<CostReportF64>,
}

pub fn cost_inputs(m: &InstanceMetrics) -> CostInputsF64 {
    CostInputsF64 { d: m.sparsity_d as u64, kappa: m.kappa, a_max: m.a_max, x_norm: m.x_norm }
}

/// Metrics and costs of a normalized instance; reports keep `cfg.solvers` order.
pub fn evaluate_instance(inst: &Instance, cfg: &SweepConfig) -> Result<InstanceResult> {
    let metrics = compute_metrics(inst, cfg.metrics.mode(), &cfg.metrics_config)?;
    let all = cost_all(&cost_inputs(&metrics), &cfg.solver_params())?;
    let reports = cfg.solvers.iter().map(|s| all[Solver::ALL.iter().position(|a| a == s).expect("known solver")].clone()).collect();
    Ok(InstanceResult { id: inst.id.clone(), source: inst.source.as_str().to_string(), metrics, reports })
}

pub fn cost_row(id: &str, source: &str, m: &InstanceMetrics, epsilon: f64, r: &CostReportF64) -> CostRow {
    CostRow {
        id: id.to_string(),
        source: source.to_string(),
        n: m.dim,
        d: m.sparsity_d,
        kappa: m.kappa,
        a_max: m.a_max,
        x_norm: m.x_norm,
        epsilon,
        solver: r.solver.name().to_string(),
        queries_log10: r.queries_log10,
        n_qaa: r.n_qaa,
        t_hamsim: r.hamsim_time_t,
        alpha: r.alpha,
        j0: r.degrees.j0,
        s: r.degrees.s,
        n_rect: r.degrees.n_rect,
        n_inv: r.degrees.n_inv,
        p: r.p,
        p0: r.p0,
        warnings: r.warnings.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(";"),
    }
}

impl InstanceResult {
    pub fn rows(&self, epsilon: f64) -> Vec<CostRow> {
        self.reports.iter().map(|r| cost_row(&self.id, &self.source, &self.metrics, epsilon, r)).collect()
    }
}

pub fn write_rows_csv<W: Write>(out: W, rows: &[CostRow]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(ROW_COLUMNS)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_rows_csv<R: Read>(input: R) -> Result<Vec<CostRow>> {
    let mut r = csv::Reader::from_reader(input);
    let rows = r.deserialize().collect::<std::result::Result<Vec<CostRow>, _>>()?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qls_instances::KappaSource;

    fn metrics() -> InstanceMetrics {
        InstanceMetrics { dim: 8, sparsity_d: 2, kappa: 10.0, a_max: 0.75, x_norm: 3.0, kappa_source: KappaSource::ExactEigen }
    }

    #[test]
    fn header_matches_serialized_fields() {
        let all = cost_all(&cost_inputs(&metrics()), &SweepConfig::default().solver_params()).unwrap();
        let rows: Vec<CostRow> = all.iter().map(|r| cost_row("a", "random", &metrics(), 1e-8, r)).collect();
        let mut buf = Vec::new();
        write_rows_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), ROW_COLUMNS.join(","));
        assert_eq!(read_rows_csv(text.as_bytes()).unwrap(), rows);
    }

    #[test]
    fn absent_degrees_are_empty_fields() {
        let all = cost_all(&cost_inputs(&metrics()), &SweepConfig::default().solver_params()).unwrap();
        let hhl = cost_row("a", "random", &metrics(), 1e-8, &all[0]);
        assert_eq!(hhl.solver, "HHL");
        assert_eq!(hhl.n_inv, None);
        let mut buf = Vec::new();
        write_rows_csv(&mut buf, &[hhl]).unwrap();
        let line = String::from_utf8(buf).unwrap().lines().nth(1).unwrap().to_string();
        assert_eq!(line.split(',').count(), ROW_COLUMNS.len());
        assert!(line.contains(",,"));
    }
}
