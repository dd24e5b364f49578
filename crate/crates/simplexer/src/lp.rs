//! Linear programs as read from MPS, and their standard form `min c^T x, A x = b, x >= 0`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Result, SimplexError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpRow {
    pub name: String,
    pub kind: RowKind,
    pub rhs: f64,
    /// MPS `RANGES` value, if any.
    pub range: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpColumn {
    pub name: String,
    pub cost: f64,
    pub lower: f64,
    pub upper: f64,
    /// Declared integer in the file; solved as continuous.
    pub integer: bool,
}

/// `min c^T x + offset` subject to row constraints and column bounds.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LpProblem {
    pub name: String,
    pub rows: Vec<LpRow>,
    pub columns: Vec<LpColumn>,
    /// `(row, column, value)`, at most one entry per position.
    pub entries: Vec<(usize, usize, f64)>,
    pub objective_offset: f64,
    pub warnings: Vec<String>,
}

impl LpProblem {
    pub fn new(name: impl Into<String>) -> Self {
        LpProblem { name: name.into(), rows: Vec::new(), columns: Vec::new(), entries: Vec::new(), objective_offset: 0.0, warnings: Vec::new() }
    }

    /// Adds a column with bounds `[0, inf)`.
    pub fn add_column(&mut self, name: impl Into<String>, cost: f64) -> usize {
        self.columns.push(LpColumn { name: name.into(), cost, lower: 0.0, upper: f64::INFINITY, integer: false });
        self.columns.len() - 1
    }

    pub fn add_row(&mut self, name: impl Into<String>, kind: RowKind, coeffs: &[(usize, f64)], rhs: f64) -> usize {
        let r = self.rows.len();
        self.rows.push(LpRow { name: name.into(), kind, rhs, range: None });
        self.entries.extend(coeffs.iter().filter(|c| c.1 != 0.0).map(|&(c, v)| (r, c, v)));
        r
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(SimplexError::Parse { section: "model".into(), line: 0, message: m });
        for &(r, c, v) in &self.entries {
            if r >= self.rows.len() || c >= self.columns.len() {
                return bad(format!("entry ({r}, {c}) outside {}x{}", self.rows.len(), self.columns.len()));
            }
            if !v.is_finite() {
                return bad(format!("non-finite coefficient at ({r}, {c})"));
            }
        }
        for row in &self.rows {
            if !row.rhs.is_finite() || row.range.is_some_and(|x| !x.is_finite()) {
                return bad(format!("non-finite rhs or range on row {}", row.name));
            }
        }
        for col in &self.columns {
            if !col.cost.is_finite() || col.lower.is_nan() || col.upper.is_nan() || col.lower > col.upper || col.lower == f64::INFINITY || col.upper == f64::NEG_INFINITY {
                return bad(format!("inconsistent cost or bounds on column {}", col.name));
            }
        }
        Ok(())
    }
}

/// How a standard-form column maps back to the original variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ColumnOrigin {
    /// `x_j = shift + sign * x'`.
    Structural { column: usize, sign: f64, shift: f64 },
    /// Negative part of a free variable: `x_j -= x'`.
    FreeNegative { column: usize },
    /// Slack of an original row, or of an upper-bound row when `None`.
    Slack { row: Option<usize> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct StandardForm {
    pub a: DMatrix<f64>,
    pub b: DVector<f64>,
    pub c: DVector<f64>,
    /// Constant added to `c^T x` to recover the original objective.
    pub offset: f64,
    pub origins: Vec<ColumnOrigin>,
    /// Number of original variables.
    pub n_original: usize,
}

impl StandardForm {
    pub fn rows(&self) -> usize {
        self.a.nrows()
    }

    pub fn cols(&self) -> usize {
        self.a.ncols()
    }

    /// Original variable values from a standard-form point.
    pub fn recover(&self, x: &DVector<f64>) -> Vec<f64> {
        let mut out = vec![0.0; self.n_original];
        for (k, o) in self.origins.iter().enumerate() {
            match *o {
                ColumnOrigin::Structural { column, sign, shift } => out[column] += shift + sign * x[k],
                ColumnOrigin::FreeNegative { column } => out[column] -= x[k],
                ColumnOrigin::Slack { .. } => {}
            }
        }
        out
    }
}

/// Standard form: variables shifted or reflected onto `x >= 0`, free variables split, finite
/// upper bounds and ranges turned into extra rows, a slack on every inequality.
pub fn to_standard_form(lp: &LpProblem) -> Result<StandardForm> {
    lp.validate()?;
    // rows: (coefficients over structural standard columns, kind, rhs)
    let mut origins = Vec::new();
    let mut col_of: Vec<Vec<(usize, f64)>> = Vec::with_capacity(lp.columns.len());
    let mut offset = lp.objective_offset;
    let mut cost = Vec::new();
    let mut bound_rows: Vec<(usize, f64)> = Vec::new();
    for (j, col) in lp.columns.iter().enumerate() {
        let k = origins.len();
        if col.lower.is_finite() {
            origins.push(ColumnOrigin::Structural { column: j, sign: 1.0, shift: col.lower });
            cost.push(col.cost);
            offset += col.cost * col.lower;
            col_of.push(vec![(k, 1.0)]);
            if col.upper.is_finite() {
                bound_rows.push((k, col.upper - col.lower));
            }
        } else if col.upper.is_finite() {
            origins.push(ColumnOrigin::Structural { column: j, sign: -1.0, shift: col.upper });
            cost.push(-col.cost);
            offset += col.cost * col.upper;
            col_of.push(vec![(k, -1.0)]);
        } else {
            origins.push(ColumnOrigin::Structural { column: j, sign: 1.0, shift: 0.0 });
            origins.push(ColumnOrigin::FreeNegative { column: j });
            cost.push(col.cost);
            cost.push(-col.cost);
            col_of.push(vec![(k, 1.0), (k + 1, -1.0)]);
        }
    }
    let n_struct = origins.len();

    let mut rows: Vec<(Vec<(usize, f64)>, RowKind, f64, Option<usize>)> = Vec::new();
    let mut coeffs: Vec<Vec<(usize, f64)>> = vec![Vec::new(); lp.rows.len()];
    let mut rhs: Vec<f64> = lp.rows.iter().map(|r| r.rhs).collect();
    for &(r, j, v) in &lp.entries {
        let col = &lp.columns[j];
        let shift = if col.lower.is_finite() { col.lower } else if col.upper.is_finite() { col.upper } else { 0.0 };
        rhs[r] -= v * shift;
        for &(k, s) in &col_of[j] {
            coeffs[r].push((k, v * s));
        }
    }
    for (r, row) in lp.rows.iter().enumerate() {
        let co = std::mem::take(&mut coeffs[r]);
        match (row.kind, row.range) {
            (kind, None) => rows.push((co, kind, rhs[r], Some(r))),
            (kind, Some(range)) => {
                let (lo, hi) = match kind {
                    RowKind::Le => (rhs[r] - range.abs(), rhs[r]),
                    RowKind::Ge => (rhs[r], rhs[r] + range.abs()),
                    RowKind::Eq if range >= 0.0 => (rhs[r], rhs[r] + range),
                    RowKind::Eq => (rhs[r] + range, rhs[r]),
                };
                rows.push((co.clone(), RowKind::Ge, lo, Some(r)));
                rows.push((co, RowKind::Le, hi, Some(r)));
            }
        }
    }
    for &(k, ub) in &bound_rows {
        rows.push((vec![(k, 1.0)], RowKind::Le, ub, None));
    }

    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.1 != RowKind::Eq).count();
    let n = n_struct + n_slack;
    let mut a = DMatrix::zeros(m, n);
    let mut b = DVector::zeros(m);
    let mut c = DVector::zeros(n);
    for (k, &v) in cost.iter().enumerate() {
        c[k] = v;
    }
    let mut s = n_struct;
    for (i, (co, kind, r, src)) in rows.into_iter().enumerate() {
        for (k, v) in co {
            a[(i, k)] += v;
        }
        b[i] = r;
        match kind {
            RowKind::Le => a[(i, s)] = 1.0,
            RowKind::Ge => a[(i, s)] = -1.0,
            RowKind::Eq => continue,
        }
        origins.push(ColumnOrigin::Slack { row: src });
        s += 1;
    }
    Ok(StandardForm { a, b, c, offset, origins, n_original: lp.columns.len() })
}
