//! JSON documents for sweeps and heatmap tables, checked against the shipped schemas.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::SweepConfig;
use crate::error::{BenchError, Result};
use crate::heatmap::{write_heatmap_csv, HeatmapCell, HeatmapTable};
use crate::rows::{write_rows_csv, CostRow};
use crate::sweep::{Failure, SweepOutcome};

pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");
pub const HEATMAP_SCHEMA: &str = include_str!("../schema/heatmap.schema.json");

pub const INSTANCES_CSV: &str = "instances.csv";
pub const HEATMAP_CSV: &str = "heatmap.csv";
pub const REPORT_JSON: &str = "report.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (csv, json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub format: String,
    pub version: u32,
    pub epsilon: f64,
    pub solvers: Vec<String>,
    pub aggregation: String,
    pub processed: usize,
    pub failures: Vec<Failure>,
    pub unbinned: Vec<String>,
    pub heatmap: Vec<HeatmapCell>,
    pub instances: Vec<CostRow>,
}

impl SweepReport {
    pub fn new(outcome: &SweepOutcome, cfg: &SweepConfig) -> Self {
        SweepReport {
            format: "qls-sweep-report".into(),
            version: 1,
            epsilon: cfg.epsilon,
            solvers: cfg.solvers.iter().map(|s| s.name().to_string()).collect(),
            aggregation: "geometric_mean".into(),
            processed: outcome.processed(),
            failures: outcome.failures.clone(),
            unbinned: outcome.unbinned.clone(),
            heatmap: outcome.table.cells.clone(),
            instances: outcome.rows.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatmapDocument {
    pub format: String,
    pub version: u32,
    pub aggregation: String,
    pub cells: Vec<HeatmapCell>,
}

impl HeatmapDocument {
    pub fn new(table: &HeatmapTable) -> Self {
        HeatmapDocument { format: "qls-heatmap".into(), version: 1, aggregation: "geometric_mean".into(), cells: table.cells.clone() }
    }

    pub fn table(&self) -> HeatmapTable {
        HeatmapTable { cells: self.cells.clone() }
    }
}

/// Structural validation of `doc` against a schema given as JSON text.
pub fn validate_against(schema: &str, doc: &Value) -> Result<()> {
    let schema: Value = serde_json::from_str(schema)?;
    let validator = jsonschema::validator_for(&schema).map_err(|e| BenchError::Schema(format!("schema does not compile: {e}")))?;
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{}: {e}", e.instance_path)).collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(BenchError::Schema(errors.join("; ")))
    }
}

fn to_validated_json<T: Serialize>(schema: &str, doc: &T) -> Result<String> {
    let value = serde_json::to_value(doc)?;
    validate_against(schema, &value)?;
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    Ok(text)
}

pub fn report_json(report: &SweepReport) -> Result<String> {
    to_validated_json(REPORT_SCHEMA, report)
}

pub fn heatmap_json(table: &HeatmapTable) -> Result<String> {
    to_validated_json(HEATMAP_SCHEMA, &HeatmapDocument::new(table))
}

pub fn parse_report_json(text: &str) -> Result<SweepReport> {
    let value: Value = serde_json::from_str(text)?;
    validate_against(REPORT_SCHEMA, &value)?;
    Ok(serde_json::from_value(value)?)
}

pub fn parse_heatmap_json(text: &str) -> Result<HeatmapTable> {
    let value: Value = serde_json::from_str(text)?;
    validate_against(HEATMAP_SCHEMA, &value)?;
    Ok(serde_json::from_value::<HeatmapDocument>(value)?.table())
}

pub fn heatmap_text(table: &HeatmapTable, format: Format) -> Result<String> {
    match format {
        Format::Json => heatmap_json(table),
        Format::Csv => {
            let mut buf = Vec::new();
            write_heatmap_csv(&mut buf, table)?;
            Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
        }
    }
}

pub fn rows_text(rows: &[CostRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_rows_csv(&mut buf, rows)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| BenchError::io(parent, e))?;
    }
    fs::write(path, text).map_err(|e| BenchError::io(path, e))
}

/// Writes the per-instance CSV first, then the heatmap CSV and the JSON report.
pub fn write_sweep(dir: &Path, outcome: &SweepOutcome, cfg: &SweepConfig) -> Result<()> {
    write_file(&dir.join(INSTANCES_CSV), &rows_text(&outcome.rows)?)?;
    write_file(&dir.join(HEATMAP_CSV), &heatmap_text(&outcome.table, Format::Csv)?)?;
    write_file(&dir.join(REPORT_JSON), &report_json(&SweepReport::new(outcome, cfg))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heatmap::read_heatmap_csv;

    fn cell(mean: f64) -> HeatmapCell {
        HeatmapCell {
            kappa_lo: 10.0,
            kappa_hi: 100.0,
            d_lo: 2,
            d_hi: 3,
            solver: "QSVT".into(),
            count: 3,
            mean_log10: mean,
            min_log10: mean - 0.1,
            max_log10: mean + 0.2,
        }
    }

    #[test]
    fn heatmap_json_validates_and_round_trips() {
        let table = HeatmapTable { cells: vec![cell(5.123456789012345), cell(1.0 / 3.0)] };
        let json = heatmap_json(&table).unwrap();
        assert_eq!(parse_heatmap_json(&json).unwrap(), table);
        let csv = heatmap_text(&table, Format::Csv).unwrap();
        assert_eq!(read_heatmap_csv(csv.as_bytes()).unwrap(), table);
    }

    #[test]
    fn schema_rejects_malformed_documents() {
        let mut doc = serde_json::to_value(HeatmapDocument::new(&HeatmapTable { cells: vec![cell(4.0)] })).unwrap();
        validate_against(HEATMAP_SCHEMA, &doc).unwrap();
        doc["cells"][0]["solver"] = Value::from("Grover");
        assert!(validate_against(HEATMAP_SCHEMA, &doc).is_err());
        doc["cells"][0]["solver"] = Value::from("HHL");
        doc["cells"][0]["count"] = Value::from(0);
        assert!(validate_against(HEATMAP_SCHEMA, &doc).is_err());
        doc["cells"][0]["count"] = Value::from(1);
        doc["extra"] = Value::from(true);
        assert!(validate_against(HEATMAP_SCHEMA, &doc).is_err());
    }

    #[test]
    fn schemas_compile() {
        for schema in [REPORT_SCHEMA, HEATMAP_SCHEMA] {
            let value: Value = serde_json::from_str(schema).unwrap();
            jsonschema::validator_for(&value).unwrap();
        }
    }
}
