//! CSV tables for the QAA crossvalidation and the approximation-bound suite.

use qls_polyapprox::ValidationRow;
use qls_qaasim::CrossRow;

use crate::error::Result;

pub const QAA_COLUMNS: [&str; 9] = ["p", "p0", "analytic", "empirical", "stderr", "z", "rel_err", "mean_rounds", "pass"];
pub const APPROX_COLUMNS: [&str; 6] = ["check", "params", "measured", "bound", "kind", "pass"];

/// Default crossvalidation cases: `p = p0` on five values plus one gap case.
pub const DEFAULT_QAA_CASES: [(f64, f64); 6] = [(1.0, 1.0), (0.5, 0.5), (0.25, 0.25), (0.1, 0.1), (0.01, 0.01), (0.25, 0.01)];

/// Relative-error limit applied on top of the `|z|` limit.
pub const QAA_REL_LIMIT: f64 = 0.02;

pub fn qaa_row_passes(r: &CrossRow) -> bool {
    r.pass && r.rel_err <= QAA_REL_LIMIT
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn qaa_csv(rows: &[CrossRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(QAA_COLUMNS)?;
    for r in rows {
        let fields = [r.p, r.p0, r.analytic, r.empirical, r.stderr, r.z, r.rel_err, r.mean_rounds].map(|v| v.to_string());
        w.write_record(fields.iter().map(String::as_str).chain([if qaa_row_passes(r) { "true" } else { "false" }]))?;
    }
    finish(w)
}

pub fn approx_csv(rows: &[ValidationRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(APPROX_COLUMNS)?;
    for r in rows {
        let kind = if r.upper { "upper" } else { "lower" };
        w.write_record([r.check, &r.params, &r.measured.to_string(), &r.bound.to_string(), kind, if r.pass { "true" } else { "false" }])?;
    }
    finish(w)
}
