//! MPS reader: NAME, ROWS, COLUMNS, RHS, RANGES, BOUNDS, ENDATA, optional OBJSENSE.
//!
//! Fields are whitespace separated, which covers fixed-format files whose names contain no
//! blanks. Integer markers are read and the model is treated as its LP relaxation.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Result, SimplexError};
use crate::lp::{LpColumn, LpProblem, LpRow, RowKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
enum Section {
    #[default]
    Start,
    Name,
    ObjSense,
    Rows,
    Columns,
    Rhs,
    Ranges,
    Bounds,
    End,
}

impl Section {
    fn label(self) -> &'static str {
        match self {
            Section::Start => "header",
            Section::Name => "NAME",
            Section::ObjSense => "OBJSENSE",
            Section::Rows => "ROWS",
            Section::Columns => "COLUMNS",
            Section::Rhs => "RHS",
            Section::Ranges => "RANGES",
            Section::Bounds => "BOUNDS",
            Section::End => "ENDATA",
        }
    }
}

pub fn parse_mps_file(path: &Path) -> Result<LpProblem> {
    parse_mps(&std::fs::read_to_string(path)?)
}

pub fn parse_mps(text: &str) -> Result<LpProblem> {
    let mut p = Parser::default();
    for (i, raw) in text.lines().enumerate() {
        p.line = i + 1;
        if raw.starts_with('*') || raw.trim().is_empty() {
            continue;
        }
        if !raw.starts_with(char::is_whitespace) {
            p.header(raw)?;
        } else {
            p.data(raw.split_whitespace().collect())?;
        }
        if p.section == Section::End {
            break;
        }
    }
    if p.section != Section::End {
        return Err(SimplexError::Parse { section: p.section.label().into(), line: p.line, message: "missing ENDATA".into() });
    }
    p.finish()
}

#[derive(Default)]
struct Parser {
    section: Section,
    line: usize,
    lp: LpProblem,
    objective: Option<String>,
    maximize: bool,
    row_index: HashMap<String, usize>,
    col_index: HashMap<String, usize>,
    entry_index: HashMap<(usize, usize), usize>,
    integer: bool,
    warned_integer: bool,
}

impl Parser {
    fn lp(&mut self) -> &mut LpProblem {
        &mut self.lp
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(SimplexError::Parse { section: self.section.label().into(), line: self.line, message: message.into() })
    }
}

impl Parser {
    fn header(&mut self, raw: &str) -> Result<()> {
        let mut f = raw.split_whitespace();
        let key = f.next().unwrap_or("");
        let next = match key {
            "NAME" => {
                let name = f.next().unwrap_or("").to_string();
                self.lp().name = name;
                Section::Name
            }
            "OBJSENSE" => {
                match f.next() {
                    Some("MAX") | Some("MAXIMIZE") => self.maximize = true,
                    Some("MIN") | Some("MINIMIZE") | None => {}
                    Some(other) => return self.err(format!("unknown objective sense {other}")),
                }
                Section::ObjSense
            }
            "ROWS" => Section::Rows,
            "COLUMNS" => Section::Columns,
            "RHS" => Section::Rhs,
            "RANGES" => Section::Ranges,
            "BOUNDS" => Section::Bounds,
            "ENDATA" => Section::End,
            "QUADOBJ" | "QMATRIX" | "QSECTION" | "QCMATRIX" | "SOS" | "CSECTION" | "INDICATORS" => {
                return Err(SimplexError::UnsupportedFeature(format!("section {key} (line {})", self.line)));
            }
            _ => return self.err(format!("unknown section {key}")),
        };
        self.section = next;
        Ok(())
    }

    fn number(&self, s: &str) -> Result<f64> {
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => self.err(format!("bad number {s:?}")),
        }
    }

    fn data(&mut self, f: Vec<&str>) -> Result<()> {
        match self.section {
            Section::ObjSense => {
                match f[0] {
                    "MAX" | "MAXIMIZE" => self.maximize = true,
                    "MIN" | "MINIMIZE" => {}
                    other => return self.err(format!("unknown objective sense {other}")),
                }
                Ok(())
            }
            Section::Rows => self.row(&f),
            Section::Columns => self.column(&f),
            Section::Rhs => self.pairs(&f, |p, r, v| {
                match r {
                    Some(r) => p.lp().rows[r].rhs = v,
                    // objective rhs moves the constant to the other side
                    None => p.lp().objective_offset = -v,
                }
                Ok(())
            }),
            Section::Ranges => self.pairs(&f, |p, r, v| match r {
                Some(r) => {
                    p.lp().rows[r].range = Some(v);
                    Ok(())
                }
                None => p.err("range on the objective row"),
            }),
            Section::Bounds => self.bound(&f),
            s => self.err(format!("data line outside a data section ({})", s.label())),
        }
    }

    fn row(&mut self, f: &[&str]) -> Result<()> {
        if f.len() != 2 {
            return self.err("expected `<type> <name>`");
        }
        let kind = match f[0] {
            "N" => {
                if self.objective.is_none() {
                    self.objective = Some(f[1].to_string());
                } else {
                    let msg = format!("extra objective row {} ignored", f[1]);
                    log::warn!("{msg}");
                    self.lp().warnings.push(msg);
                    self.row_index.insert(f[1].to_string(), usize::MAX);
                }
                return Ok(());
            }
            "L" => RowKind::Le,
            "G" => RowKind::Ge,
            "E" => RowKind::Eq,
            other => return self.err(format!("unknown row type {other}")),
        };
        if self.row_index.contains_key(f[1]) {
            return self.err(format!("duplicate row {}", f[1]));
        }
        let idx = self.lp().rows.len();
        self.lp().rows.push(LpRow { name: f[1].to_string(), kind, rhs: 0.0, range: None });
        self.row_index.insert(f[1].to_string(), idx);
        Ok(())
    }

    /// `Some(row)` for constraints, `None` for the objective; extra objectives are skipped
    /// by the caller through `usize::MAX`.
    fn lookup_row(&self, name: &str) -> Result<Option<usize>> {
        if self.objective.as_deref() == Some(name) {
            return Ok(None);
        }
        match self.row_index.get(name) {
            Some(&r) => Ok(Some(r)),
            None => self.err(format!("unknown row {name}")),
        }
    }

    fn column(&mut self, f: &[&str]) -> Result<()> {
        if f.len() == 3 && f[1].trim_matches('\'') == "MARKER" {
            match f[2].trim_matches('\'') {
                "INTORG" => {
                    self.integer = true;
                    if !self.warned_integer {
                        self.warned_integer = true;
                        let msg = "integer markers present; solving the LP relaxation".to_string();
                        log::warn!("{msg}");
                        self.lp().warnings.push(msg);
                    }
                }
                "INTEND" => self.integer = false,
                other => return self.err(format!("unknown marker {other}")),
            }
            return Ok(());
        }
        if f.len() != 3 && f.len() != 5 {
            return self.err("expected `<column> <row> <value> [<row> <value>]`");
        }
        let j = match self.col_index.get(f[0]) {
            Some(&j) => j,
            None => {
                let j = self.lp().columns.len();
                let integer = self.integer;
                self.lp().columns.push(LpColumn { name: f[0].to_string(), cost: 0.0, lower: 0.0, upper: f64::INFINITY, integer });
                self.col_index.insert(f[0].to_string(), j);
                j
            }
        };
        for pair in f[1..].chunks(2) {
            let v = self.number(pair[1])?;
            match self.lookup_row(pair[0])? {
                None => self.lp().columns[j].cost = v,
                Some(usize::MAX) => {}
                Some(r) => {
                    if self.entry_index.contains_key(&(r, j)) {
                        return self.err(format!("duplicate entry for ({}, {})", pair[0], f[0]));
                    }
                    let len = self.lp().entries.len();
                    self.entry_index.insert((r, j), len);
                    if v != 0.0 {
                        self.lp().entries.push((r, j, v));
                    }
                }
            }
        }
        Ok(())
    }

    /// RHS and RANGES lines: an optional set name, then one or two `(row, value)` pairs.
    fn pairs(&mut self, f: &[&str], mut apply: impl FnMut(&mut Self, Option<usize>, f64) -> Result<()>) -> Result<()> {
        let body = match f.len() {
            3 | 5 => &f[1..],
            2 | 4 => f,
            _ => return self.err("expected `[<set>] <row> <value> [<row> <value>]`"),
        };
        for pair in body.chunks(2) {
            let v = self.number(pair[1])?;
            match self.lookup_row(pair[0])? {
                Some(usize::MAX) => {}
                r => apply(self, r, v)?,
            }
        }
        Ok(())
    }

    fn bound(&mut self, f: &[&str]) -> Result<()> {
        let kind = f[0];
        let needs_value = matches!(kind, "UP" | "LO" | "FX" | "LI" | "UI");
        let (col, val) = match (needs_value, f.len()) {
            (true, 4) => (f[2], Some(self.number(f[3])?)),
            (true, 3) => (f[1], Some(self.number(f[2])?)),
            (false, 3) => (f[2], None),
            (false, 2) => (f[1], None),
            (false, 4) if kind == "BV" => (f[2], None),
            _ => return self.err(format!("malformed {kind} bound")),
        };
        let Some(&j) = self.col_index.get(col) else {
            return self.err(format!("bound on unknown column {col}"));
        };
        let c = &mut self.lp().columns[j];
        match (kind, val) {
            ("UP" | "UI", Some(v)) => {
                c.upper = v;
                // a negative upper bound with the default lower bound makes the variable free below
                if v < 0.0 && c.lower == 0.0 {
                    c.lower = f64::NEG_INFINITY;
                }
            }
            ("LO" | "LI", Some(v)) => c.lower = v,
            ("FX", Some(v)) => {
                c.lower = v;
                c.upper = v;
            }
            ("FR", None) => {
                c.lower = f64::NEG_INFINITY;
                c.upper = f64::INFINITY;
            }
            ("MI", None) => c.lower = f64::NEG_INFINITY,
            ("PL", None) => c.upper = f64::INFINITY,
            ("BV", None) => {
                c.lower = 0.0;
                c.upper = 1.0;
            }
            _ => return self.err(format!("unknown bound type {kind}")),
        }
        if matches!(kind, "LI" | "UI" | "BV") {
            c.integer = true;
        }
        Ok(())
    }

    fn finish(mut self) -> Result<LpProblem> {
        if self.objective.is_none() {
            return self.err("no objective row");
        }
        let maximize = self.maximize;
        let mut lp = std::mem::take(&mut self.lp);
        if maximize {
            for c in &mut lp.columns {
                c.cost = -c.cost;
            }
            lp.objective_offset = -lp.objective_offset;
            lp.warnings.push("maximization converted to minimization of the negated objective".into());
        }
        lp.validate()?;
        Ok(lp)
    }
}
