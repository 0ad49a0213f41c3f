//! Plain-text matrix files.
//!
//! ```text
//! # rows=2 cols=2 field=complex
//! 1.0000000000000000e0 0.0000000000000000e0:-1.0000000000000000e0
//! 0.0000000000000000e0:1.0000000000000000e0 1.0000000000000000e0
//! ```

use std::fmt::Write as _;
use std::path::Path;

use mgt_core::numkernel::{CMatrix, C64};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    fn name(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }
}

/// `real` when every imaginary part is exactly zero.
pub fn field_of(x: &CMatrix) -> Field {
    if x.as_slice().iter().all(|z| z.im == 0.0) {
        Field::Real
    } else {
        Field::Complex
    }
}

fn number(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn render(x: &CMatrix) -> String {
    let field = field_of(x);
    let mut out = format!("# rows={} cols={} field={}\n", x.rows(), x.cols(), field.name());
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            if j > 0 {
                out.push(' ');
            }
            let z = x[(i, j)];
            match field {
                Field::Real => out.push_str(&number(z.re)),
                Field::Complex => {
                    let _ = write!(out, "{}:{}", number(z.re), number(z.im));
                }
            }
        }
        out.push('\n');
    }
    out
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Usage(format!("malformed matrix file: {}", msg.into()))
}

fn parse_value(tok: &str, field: Field) -> Result<C64, CliError> {
    let real = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("`{tok}` is not a number")));
    match (field, tok.split_once(':')) {
        (Field::Real, None) => Ok(C64::new(real(tok)?, 0.0)),
        (Field::Real, Some(_)) => Err(bad(format!("complex entry `{tok}` in a real file"))),
        (Field::Complex, None) => Ok(C64::new(real(tok)?, 0.0)),
        (Field::Complex, Some((a, b))) => Ok(C64::new(real(a)?, real(b)?)),
    }
}

pub fn parse(text: &str) -> Result<CMatrix, CliError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| bad("empty input"))?;
    let header = header.strip_prefix('#').ok_or_else(|| bad("missing `#` header"))?;
    let (mut rows, mut cols, mut field) = (None, None, None);
    for kv in header.split_whitespace() {
        let (k, v) = kv.split_once('=').ok_or_else(|| bad(format!("header token `{kv}`")))?;
        match k {
            "rows" => rows = Some(v.parse::<usize>().map_err(|_| bad("rows"))?),
            "cols" => cols = Some(v.parse::<usize>().map_err(|_| bad("cols"))?),
            "field" => {
                field = Some(match v {
                    "real" => Field::Real,
                    "complex" => Field::Complex,
                    _ => return Err(bad(format!("unknown field `{v}`"))),
                })
            }
            _ => return Err(bad(format!("unknown header key `{k}`"))),
        }
    }
    let (rows, cols, field) = match (rows, cols, field) {
        (Some(r), Some(c), Some(f)) => (r, c, f),
        _ => return Err(bad("header needs rows, cols and field")),
    };
    let mut data = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for line in lines {
        if line.starts_with('#') {
            continue;
        }
        seen += 1;
        let row: Vec<C64> = line
            .split_whitespace()
            .map(|t| parse_value(t, field))
            .collect::<Result<_, _>>()?;
        if row.len() != cols {
            return Err(bad(format!("row {seen} has {} entries, expected {cols}", row.len())));
        }
        data.extend(row);
    }
    if seen != rows {
        return Err(bad(format!("found {seen} rows, expected {rows}")));
    }
    CMatrix::from_vec(rows, cols, data).map_err(|e| bad(e.to_string()))
}

pub fn read(path: &Path) -> Result<CMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn write(path: &Path, x: &CMatrix) -> Result<(), CliError> {
    std::fs::write(path, render(x)).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
