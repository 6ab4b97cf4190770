//! Tabular results rendered as CSV or as a JSON document with a `meta` header.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig, SystemSpec};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Empty,
    Str(String),
    Int(i64),
    Float(f64),
    Bool(bool),
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Str(s.to_owned())
    }
}
impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Str(s)
    }
}
impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}
impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}
impl From<i64> for Cell {
    fn from(n: i64) -> Self {
        Cell::Int(n)
    }
}
impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

/// Seventeen significant digits in scientific notation.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Empty => String::new(),
            Cell::Str(s) => s.clone(),
            Cell::Int(n) => n.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Empty => Value::Null,
            Cell::Str(s) => Value::String(s.clone()),
            Cell::Int(n) => json!(n),
            Cell::Float(x) => json!(x),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text))?;
        }
        w.into_inner().context("flushing CSV buffer")
    }

    pub fn to_json(&self, meta: Value) -> Result<Vec<u8>> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(k, v)| ((*k).to_owned(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "meta": meta, "rows": rows });
        let mut bytes = serde_json::to_vec_pretty(&doc)?;
        bytes.push(b'\n');
        Ok(bytes)
    }
}

/// `meta` object: parameters, grids, tolerances and the crate version.
pub fn meta(cfg: &RunConfig) -> Value {
    let (t, s) = match cfg.system {
        SystemSpec::Couplings(t) => (t, Value::Null),
        SystemSpec::Weights(w) => (semitoric_core::s_to_t(w), json!([w.s1(), w.s2()])),
    };
    json!({
        "command": cfg.command.name(),
        "params": { "R1": cfg.r1, "R2": cfg.r2, "t": t.as_array(), "s": s },
        "grids": { "grid": cfg.grid, "zeta_grid": cfg.zeta_grid },
        "tolerances": { "tol": cfg.tol },
        "version": env!("CARGO_PKG_VERSION"),
    })
}

pub fn render(table: &Table, cfg: &RunConfig) -> Result<Vec<u8>> {
    match cfg.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(meta(cfg)),
    }
}

/// Writes the finished bytes in one go to `out`, or to standard output.
pub fn emit(bytes: &[u8], out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_has_seventeen_digits() {
        assert_eq!(format_float(0.25), "2.5000000000000000e-1");
        assert_eq!(format_float(-3.0), "-3.0000000000000000e0");
        let x = 0.1 + 0.2;
        assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(vec!["a", "b", "c"]);
        t.push(vec![Cell::from("x"), Cell::Empty, Cell::from(1.5)]);
        let text = String::from_utf8(t.to_csv().unwrap()).unwrap();
        assert_eq!(text, "a,b,c\nx,,1.5000000000000000e0\n");
    }
}
