//! Sweep CSV: writer and the matching reader.
//!
//! ```text
//! # pt-floquet sweep mu=<v> J=<v> tol=<v>
//! gamma0,omega,c,phase,trace_half
//! 0,0.1,0,Unbroken,-1
//! ...
//! ```
//!
//! Numbers are written in their shortest round-trip decimal form, so parsing a
//! field gives back the identical `f64`.

use std::fmt::Write as _;
use std::io::{self, Write};

use pt_floquet::{PhaseClass, PhaseGrid};

pub const COLUMNS: &str = "gamma0,omega,c,phase,trace_half";

/// Shortest decimal that parses back to `v`; plain notation for moderate
/// magnitudes, exponent notation otherwise.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-5..1e16).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn header_line(mu: f64, coupling: f64, tol: f64) -> String {
    format!(
        "# pt-floquet sweep mu={} J={} tol={}",
        format_number(mu),
        format_number(coupling),
        format_number(tol)
    )
}

pub fn write_sweep<W: Write>(grid: &PhaseGrid, out: &mut W) -> io::Result<()> {
    let mut buf = String::with_capacity(64 * grid.c_values.len() + 128);
    buf.push_str(&header_line(grid.mu, grid.coupling, grid.tol));
    buf.push('\n');
    buf.push_str(COLUMNS);
    buf.push('\n');
    for (g, w, c, class, h) in grid.cells() {
        let _ = writeln!(
            buf,
            "{},{},{},{},{}",
            format_number(g),
            format_number(w),
            format_number(c),
            class,
            format_number(h)
        );
    }
    out.write_all(buf.as_bytes())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub gamma0: f64,
    pub omega: f64,
    pub c: f64,
    pub phase: PhaseClass,
    pub trace_half: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub mu: f64,
    pub coupling: f64,
    pub tol: f64,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn number(line: usize, field: &str, what: &str) -> Result<f64, ParseError> {
    field
        .parse()
        .map_err(|_| err(line, format!("bad {what} value {field:?}")))
}

pub fn parse_sweep(text: &str) -> Result<SweepTable, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (n, first) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let meta = first
        .strip_prefix("# pt-floquet sweep ")
        .ok_or_else(|| err(n, "missing `# pt-floquet sweep` header"))?;
    let (mut mu, mut coupling, mut tol) = (None, None, None);
    for kv in meta.split_whitespace() {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| err(n, format!("malformed header field {kv:?}")))?;
        let v = number(n, v, k)?;
        match k {
            "mu" => mu = Some(v),
            "J" => coupling = Some(v),
            "tol" => tol = Some(v),
            _ => return Err(err(n, format!("unknown header field {k:?}"))),
        }
    }

    let (n, cols) = lines.next().ok_or_else(|| err(2, "missing column header"))?;
    if cols != COLUMNS {
        return Err(err(n, format!("expected columns {COLUMNS:?}")));
    }

    let mut rows = Vec::new();
    for (n, line) in lines {
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 5 {
            return Err(err(n, format!("expected 5 fields, found {}", f.len())));
        }
        rows.push(SweepRow {
            gamma0: number(n, f[0], "gamma0")?,
            omega: number(n, f[1], "omega")?,
            c: number(n, f[2], "c")?,
            phase: f[3].parse().map_err(|_| err(n, format!("bad phase {:?}", f[3])))?,
            trace_half: number(n, f[4], "trace_half")?,
        });
    }

    Ok(SweepTable {
        mu: mu.ok_or_else(|| err(1, "header lacks mu"))?,
        coupling: coupling.ok_or_else(|| err(1, "header lacks J"))?,
        tol: tol.ok_or_else(|| err(1, "header lacks tol"))?,
        rows,
    })
}
