//! `kappa` x `d` aggregation of cost rows.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::config::SweepConfig;
use crate::error::Result;
use crate::rows::CostRow;

pub const HEATMAP_COLUMNS: [&str; 9] = ["kappa_lo", "kappa_hi", "d_lo", "d_hi", "solver", "count", "mean_log10", "min_log10", "max_log10"];

/// Relative slack below each `kappa` edge, so a computed `kappa = 10 (1 - 1e-12)` lands in `[10, 100)`.
pub const EDGE_SLACK: f64 = 1e-9;

/// One nonempty cell; bins are half-open, `lo <= value < hi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatmapCell {
    pub kappa_lo: f64,
    pub kappa_hi: f64,
    pub d_lo: u64,
    pub d_hi: u64,
    pub solver: String,
    pub count: usize,
    pub mean_log10: f64,
    pub min_log10: f64,
    pub max_log10: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct HeatmapTable {
    /// Sorted by `kappa` bin, then `d` bin, then solver in sweep order.
    pub cells: Vec<HeatmapCell>,
}

/// Index `i` with `edges[i] <= kappa < edges[i + 1]`, both edges lowered by [`EDGE_SLACK`].
pub fn kappa_bin(kappa: f64, edges: &[f64]) -> Option<usize> {
    let lowered = |e: f64| e * (1.0 - EDGE_SLACK);
    edges.windows(2).position(|w| kappa >= lowered(w[0]) && kappa < lowered(w[1]))
}

/// Decade edges `10^k .. 10^(k_max + 1)` covering every value.
pub fn decade_edges(kappas: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let decade = |k: f64| (k * (1.0 + EDGE_SLACK)).log10().floor() as i32;
    let (lo, hi) = kappas.into_iter().fold((i32::MAX, i32::MIN), |(lo, hi), k| (lo.min(decade(k)), hi.max(decade(k))));
    if lo > hi {
        return Vec::new();
    }
    (lo..=hi + 1).map(|k| 10f64.powi(k)).collect()
}

/// One bin `[d, d + 1)` per distinct sparsity.
pub fn unit_d_bins(ds: impl IntoIterator<Item = u64>) -> Vec<(u64, u64)> {
    let mut ds: Vec<u64> = ds.into_iter().collect();
    ds.sort_unstable();
    ds.dedup();
    ds.into_iter().map(|d| (d, d + 1)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Binned {
    pub table: HeatmapTable,
    /// Ids of instances whose `kappa` or `d` falls outside every bin.
    pub unbinned: Vec<String>,
}

/// Aggregates rows into cells; the cell mean is the mean of `log10` counts.
pub fn build_heatmap(rows: &[CostRow], cfg: &SweepConfig) -> Binned {
    let kappa_edges = cfg.kappa_bins.clone().unwrap_or_else(|| decade_edges(rows.iter().map(|r| r.kappa)));
    let d_intervals: Vec<(u64, u64)> = match &cfg.d_bins {
        Some(edges) => edges.windows(2).map(|w| (w[0], w[1])).collect(),
        None => unit_d_bins(rows.iter().map(|r| r.d as u64)),
    };
    let solver_rank = |name: &str| cfg.solvers.iter().position(|s| s.name() == name).unwrap_or(usize::MAX);

    let mut cells: BTreeMap<(usize, usize, usize), Vec<f64>> = BTreeMap::new();
    let mut unbinned = Vec::new();
    for row in rows {
        let kb = kappa_bin(row.kappa, &kappa_edges);
        let db = d_intervals.iter().position(|&(lo, hi)| (row.d as u64) >= lo && (row.d as u64) < hi);
        match (kb, db) {
            (Some(kb), Some(db)) => cells.entry((kb, db, solver_rank(&row.solver))).or_default().push(row.queries_log10),
            _ => {
                if unbinned.last() != Some(&row.id) {
                    unbinned.push(row.id.clone());
                }
            }
        }
    }

    let cells = cells
        .into_iter()
        .map(|((kb, db, rank), values)| {
            let min = values.iter().copied().fold(f64::INFINITY, f64::min);
            let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            // Rounding of the sum can push the mean of equal values one ulp outside [min, max].
            let mean = (values.iter().sum::<f64>() / values.len() as f64).clamp(min, max);
            HeatmapCell {
                kappa_lo: kappa_edges[kb],
                kappa_hi: kappa_edges[kb + 1],
                d_lo: d_intervals[db].0,
                d_hi: d_intervals[db].1,
                solver: cfg.solvers[rank].name().to_string(),
                count: values.len(),
                mean_log10: mean,
                min_log10: min,
                max_log10: max,
            }
        })
        .collect();
    Binned { table: HeatmapTable { cells }, unbinned }
}

pub fn write_heatmap_csv<W: Write>(out: W, table: &HeatmapTable) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(HEATMAP_COLUMNS)?;
    for cell in &table.cells {
        w.serialize(cell)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_heatmap_csv<R: Read>(input: R) -> Result<HeatmapTable> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != HEATMAP_COLUMNS {
        return Err(crate::error::BenchError::Schema(format!("heatmap header {header:?} differs from {HEATMAP_COLUMNS:?}")));
    }
    let cells = r.deserialize().collect::<std::result::Result<Vec<HeatmapCell>, _>>()?;
    Ok(HeatmapTable { cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(id: &str, kappa: f64, d: usize, solver: &str, q: f64) -> CostRow {
        CostRow {
            id: id.into(),
            source: "random".into(),
            n: 16,
            d,
            kappa,
            a_max: 0.5,
            x_norm: 1.0,
            epsilon: 1e-8,
            solver: solver.into(),
            queries_log10: q,
            n_qaa: 1.0,
            t_hamsim: None,
            alpha: None,
            j0: None,
            s: None,
            n_rect: None,
            n_inv: None,
            p: 1.0,
            p0: 1.0,
            warnings: String::new(),
        }
    }

    #[test]
    fn near_edge_kappa_goes_up() {
        let edges = [1.0, 10.0, 100.0];
        assert_eq!(kappa_bin(10.0 * (1.0 - 1e-12), &edges), Some(1));
        assert_eq!(kappa_bin(10.0, &edges), Some(1));
        assert_eq!(kappa_bin(9.9, &edges), Some(0));
        assert_eq!(kappa_bin(100.0, &edges), None);
        assert_eq!(decade_edges([10.0 * (1.0 - 1e-12), 999.0]), vec![10.0, 100.0, 1000.0]);
        assert_eq!(decade_edges([]), Vec::<f64>::new());
    }

    #[test]
    fn unit_d_bins_skip_gaps() {
        assert_eq!(unit_d_bins([4, 2, 2, 8]), vec![(2, 3), (4, 5), (8, 9)]);
    }

    #[test]
    fn single_instance_bin_mean_is_its_value() {
        let binned = build_heatmap(&[row("a", 12.0, 2, "QSVT", 5.25)], &SweepConfig::default());
        assert_eq!(binned.table.cells.len(), 1);
        let c = &binned.table.cells[0];
        assert_eq!((c.kappa_lo, c.kappa_hi, c.d_lo, c.d_hi, c.count), (10.0, 100.0, 2, 3, 1));
        assert_eq!((c.mean_log10, c.min_log10, c.max_log10), (5.25, 5.25, 5.25));
    }

    #[test]
    fn cells_average_logs_and_follow_solver_order() {
        let rows = [row("a", 20.0, 2, "QSVT", 4.0), row("a", 20.0, 2, "HHL", 14.0), row("b", 30.0, 2, "QSVT", 6.0), row("b", 30.0, 2, "HHL", 15.0)];
        let cells = build_heatmap(&rows, &SweepConfig::default()).table.cells;
        assert_eq!(cells.iter().map(|c| c.solver.as_str()).collect::<Vec<_>>(), ["HHL", "QSVT"]);
        assert_eq!((cells[1].mean_log10, cells[1].min_log10, cells[1].max_log10, cells[1].count), (5.0, 4.0, 6.0, 2));
    }

    #[test]
    fn explicit_bins_report_out_of_range_ids() {
        let cfg = SweepConfig { kappa_bins: Some(vec![1.0, 10.0]), d_bins: Some(vec![1, 4]), ..SweepConfig::default() };
        let rows = [row("a", 5.0, 2, "HHL", 12.0), row("b", 50.0, 2, "HHL", 12.0), row("c", 5.0, 4, "HHL", 12.0)];
        let binned = build_heatmap(&rows, &cfg);
        assert_eq!(binned.table.cells.len(), 1);
        assert_eq!(binned.unbinned, vec!["b", "c"]);
    }

    #[test]
    fn one_bin_is_one_data_row() {
        let table = build_heatmap(&[row("a", 12.0, 2, "QSVT", 5.25)], &SweepConfig::default()).table;
        let mut buf = Vec::new();
        write_heatmap_csv(&mut buf, &table).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(read_heatmap_csv(text.as_bytes()).unwrap(), table);
        assert!(read_heatmap_csv("kappa,d\n1,2\n".as_bytes()).is_err());
    }
}
