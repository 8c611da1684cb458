//! Row tables written as CSV or JSON with fixed float formatting.

use std::fs;
use std::path::Path;

use serde_json::Value;
use tpqhe_core::output::fmt_float;

use crate::config::Format;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F(f64),
    S(String),
    U(usize),
    B(bool),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::F(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::S(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::S(s)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::U(n)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::B(b)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::F(x) => fmt_float(*x),
            Cell::S(s) => s.replace([',', '\n', '\r'], ";"),
            Cell::U(n) => n.to_string(),
            Cell::B(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // NaN and infinities have no JSON literal
            Cell::F(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::S(s) => Value::String(s.clone()),
            Cell::U(n) => Value::from(*n),
            Cell::B(b) => Value::Bool(*b),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let doc = serde_json::json!({ "columns": self.columns, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }

    /// Writes `<stem>.csv` or `<stem>.json` under `dir`; returns the file name.
    pub fn write(&self, dir: &Path, stem: &str, format: Format) -> Result<String, CliError> {
        let (name, body) = match format {
            Format::Csv => (format!("{stem}.csv"), self.to_csv()),
            Format::Json => (format!("{stem}.json"), self.to_json()),
        };
        fs::write(dir.join(&name), body)?;
        Ok(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![0.5.into(), "x,y".into()]);
        assert_eq!(t.to_csv(), "a,b\n5.0000000000000000e-1,x;y\n");
    }

    #[test]
    fn json_nan_is_null() {
        let mut t = Table::new(&["a"]);
        t.push(vec![f64::NAN.into()]);
        assert!(t.to_json().contains("null"));
    }
}
