//! Versioned text format.
//!
//! ```text
//! QLSINST v1 N=<n> source=<s> id=<id> matrix_scale=<f> rhs_scale=<f> [kappa_truth=<f>]
//! <j> <k> <re> <im>        one line per stored entry, 0-based, row-major
//! B
//! <re> <im>                N lines
//! CRC32=<8 hex digits>     over every byte before this line
//! ```
//! Floats are written in shortest round-trip exponent form.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{InstanceError, Result};
use crate::instance::{Instance, ScaleRecord, Source};
use crate::sparse::SparseHermitian;

const MAGIC: &str = "QLSINST";
const VERSION: &str = "v1";

pub fn to_text(inst: &Instance) -> String {
    let mut s = String::new();
    write!(
        s,
        "{MAGIC} {VERSION} N={} source={} id={} matrix_scale={:e} rhs_scale={:e}",
        inst.dim(),
        inst.source,
        inst.id,
        inst.scale.matrix,
        inst.scale.rhs
    )
    .unwrap();
    if let Some(k) = inst.kappa_truth {
        write!(s, " kappa_truth={k:e}").unwrap();
    }
    s.push('\n');
    for (j, k, v) in inst.matrix.triplets() {
        writeln!(s, "{j} {k} {:e} {:e}", v.re, v.im).unwrap();
    }
    s.push_str("B\n");
    for v in &inst.rhs {
        writeln!(s, "{:e} {:e}", v.re, v.im).unwrap();
    }
    let crc = crc32fast::hash(s.as_bytes());
    writeln!(s, "CRC32={crc:08x}").unwrap();
    s
}

pub fn save_instance(path: &Path, inst: &Instance) -> Result<()> {
    fs::write(path, to_text(inst))?;
    Ok(())
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path)?;
    from_text(&text)
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> InstanceError {
    InstanceError::Parse { line, column, message: message.into() }
}

/// 1-based column of `tok` inside `line`.
fn col_of(line: &str, tok: &str) -> usize {
    (tok.as_ptr() as usize).saturating_sub(line.as_ptr() as usize) + 1
}

fn parse_f64(line_no: usize, line: &str, tok: &str) -> Result<f64> {
    let v: f64 = tok.parse().map_err(|_| perr(line_no, col_of(line, tok), format!("invalid number {tok:?}")))?;
    if !v.is_finite() {
        return Err(perr(line_no, col_of(line, tok), "non-finite number"));
    }
    Ok(v)
}

fn parse_usize(line_no: usize, line: &str, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| perr(line_no, col_of(line, tok), format!("invalid index {tok:?}")))
}

pub fn from_text(text: &str) -> Result<Instance> {
    // locate the trailer first so truncation is reported before content errors
    let body_end = match text.rfind("CRC32=") {
        Some(p) if p == 0 || text.as_bytes()[p - 1] == b'\n' => p,
        _ => {
            let last = text.lines().count().max(1);
            return Err(perr(last, 1, "missing CRC32 trailer"));
        }
    };
    let payload = &text[..body_end];
    let trailer = text[body_end..].trim_end_matches(['\n', '\r']);
    let trailer_line = payload.lines().count() + 1;
    if trailer.contains('\n') {
        return Err(perr(trailer_line + 1, 1, "content after CRC32 trailer"));
    }
    let hex = &trailer["CRC32=".len()..];
    let expected = u32::from_str_radix(hex, 16)
        .ok()
        .filter(|_| hex.len() == 8)
        .ok_or_else(|| perr(trailer_line, 7, format!("invalid checksum {hex:?}")))?;
    let found = crc32fast::hash(payload.as_bytes());
    if found != expected {
        return Err(InstanceError::ChecksumMismatch { expected, found });
    }

    let mut lines = payload.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (ln, header) = lines.next().ok_or_else(|| perr(1, 1, "empty file"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some(MAGIC) {
        return Err(perr(ln, 1, "bad magic"));
    }
    match toks.next() {
        Some(VERSION) => {}
        Some(v) => return Err(perr(ln, col_of(header, v), format!("unsupported version {v:?}"))),
        None => return Err(perr(ln, header.len() + 1, "missing version")),
    }
    let (mut n, mut source, mut id, mut kappa_truth) = (None, None, None, None);
    let mut scale = ScaleRecord::default();
    for tok in toks {
        let (key, val) = tok.split_once('=').ok_or_else(|| perr(ln, col_of(header, tok), "expected key=value"))?;
        let vcol = col_of(header, val);
        match key {
            "N" => n = Some(val.parse::<usize>().map_err(|_| perr(ln, vcol, "invalid N"))?),
            "source" => source = Some(val.parse::<Source>().map_err(|e| perr(ln, vcol, e))?),
            "id" => id = Some(val.to_string()),
            "matrix_scale" => scale.matrix = parse_f64(ln, header, val)?,
            "rhs_scale" => scale.rhs = parse_f64(ln, header, val)?,
            "kappa_truth" => kappa_truth = Some(parse_f64(ln, header, val)?),
            _ => return Err(perr(ln, col_of(header, tok), format!("unknown header key {key:?}"))),
        }
    }
    let n = n.ok_or_else(|| perr(ln, 1, "missing N"))?;
    let source = source.ok_or_else(|| perr(ln, 1, "missing source"))?;
    let id = id.ok_or_else(|| perr(ln, 1, "missing id"))?;

    let mut trip = Vec::new();
    let mut seen_b = false;
    for (ln, line) in lines.by_ref() {
        if line == "B" {
            seen_b = true;
            break;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(perr(ln, 1, format!("expected `j k re im`, found {} fields", f.len())));
        }
        let j = parse_usize(ln, line, f[0])?;
        let k = parse_usize(ln, line, f[1])?;
        if j >= n || k >= n {
            return Err(perr(ln, 1, format!("index ({j}, {k}) outside dimension {n}")));
        }
        let v = Complex64::new(parse_f64(ln, line, f[2])?, parse_f64(ln, line, f[3])?);
        if v == Complex64::new(0.0, 0.0) {
            return Err(perr(ln, col_of(line, f[2]), "explicit zero entry"));
        }
        trip.push((j, k, v));
    }
    if !seen_b {
        return Err(perr(trailer_line, 1, "missing rhs block"));
    }
    let stored = trip.len();
    let matrix = SparseHermitian::from_triplets(n, trip)?;
    if matrix.nnz() != stored {
        return Err(perr(2, 1, "duplicate matrix entries"));
    }
    let mut rhs = Vec::with_capacity(n);
    for (ln, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 2 {
            return Err(perr(ln, 1, format!("expected `re im`, found {} fields", f.len())));
        }
        rhs.push(Complex64::new(parse_f64(ln, line, f[0])?, parse_f64(ln, line, f[1])?));
    }
    if rhs.len() != n {
        return Err(perr(trailer_line, 1, format!("rhs has {} entries, expected {n}", rhs.len())));
    }
    let mut inst = Instance::new(id, source, matrix, rhs)?.with_scale(scale);
    inst.kappa_truth = kappa_truth;
    Ok(inst)
}
