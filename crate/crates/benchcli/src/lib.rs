//! Benchmark orchestration: sweeps over instance sets, per-instance cost rows, `kappa` x `d`
//! heatmap tables and CSV/JSON reports. The `qls` binary wraps this library.

pub mod config;
pub mod error;
pub mod extract;
pub mod heatmap;
pub mod report;
pub mod rows;
pub mod sets;
pub mod sweep;
pub mod tables;

pub use config::{Aggregation, MetricsChoice, RunConfig, SweepConfig};
pub use error::{BenchError, Result, EXIT_CONFIG, EXIT_FATAL, EXIT_OK, EXIT_PARTIAL};
pub use heatmap::{build_heatmap, read_heatmap_csv, write_heatmap_csv, HeatmapCell, HeatmapTable};
pub use report::{heatmap_json, parse_heatmap_json, parse_report_json, report_json, write_sweep, Format, SweepReport};
pub use rows::{evaluate_instance, read_rows_csv, write_rows_csv, CostRow, InstanceResult, ROW_COLUMNS};
pub use sweep::{collect_instance_paths, load_instances, run_sweep, with_threads, Failure, SweepOutcome};
