//! Tabular results and their CSV / JSON / JSONL renderings.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

pub const TOOL_VERSION: &str = concat!("quadzeta ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Jsonl,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Missing,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Missing, Into::into)
    }
}

/// Rounds to 15 significant digits so that printed values do not depend on
/// the last bits of a computation.
pub fn tidy(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// Plain decimal for moderate magnitudes, scientific otherwise.
pub fn fmt_num(x: f64) -> String {
    let x = tidy(x);
    if x != 0.0 && x.is_finite() && !(1e-5..1e16).contains(&x.abs()) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

impl Cell {
    fn to_text(&self) -> String {
        match self {
            Cell::Num(x) => fmt_num(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(tidy(*x)).map_or(Value::Null, Value::Number),
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Missing => Value::Null,
        }
    }
}

/// A fixed set of columns with one row per result.
#[derive(Debug, Clone)]
pub struct Table {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &str, columns: &[&'static str]) -> Self {
        Self {
            command: command.to_string(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width for {}", self.command);
        self.rows.push(row);
    }

    fn row_object(&self, row: &[Cell]) -> Map<String, Value> {
        self.columns
            .iter()
            .zip(row)
            .map(|(c, v)| (c.to_string(), v.to_json()))
            .collect()
    }

    pub fn render(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::to_text)).expect("in-memory write");
                }
                w.into_inner().expect("in-memory flush")
            }
            Format::Json => {
                let rows: Vec<Value> = self.rows.iter().map(|r| Value::Object(self.row_object(r))).collect();
                let doc = json!({
                    "tool_version": TOOL_VERSION,
                    "command": self.command,
                    "columns": self.columns,
                    "rows": rows,
                });
                let mut out = serde_json::to_vec_pretty(&doc).expect("serializable");
                out.push(b'\n');
                out
            }
            Format::Jsonl => {
                let mut out = Vec::new();
                for r in &self.rows {
                    serde_json::to_writer(&mut out, &Value::Object(self.row_object(r))).expect("serializable");
                    out.push(b'\n');
                }
                out
            }
        }
    }
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(bytes: &[u8], path: Option<&std::path::Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("demo", &["x", "label", "ok"]);
        t.push(vec![Cell::Num(-0.49999999999999994), "a,b".into(), true.into()]);
        t.push(vec![Cell::Num(f64::NAN), Cell::Missing, false.into()]);
        t
    }

    #[test]
    fn csv_quotes_and_rounds() {
        let text = String::from_utf8(sample().render(Format::Csv)).unwrap();
        assert_eq!(text, "x,label,ok\n-0.5,\"a,b\",true\nNaN,,false\n");
    }

    #[test]
    fn json_document() {
        let v: Value = serde_json::from_slice(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["tool_version"], TOOL_VERSION);
        assert_eq!(v["rows"][0]["x"], json!(-0.5));
        assert!(v["rows"][1]["x"].is_null());
    }

    #[test]
    fn jsonl_lines() {
        let text = String::from_utf8(sample().render(Format::Jsonl)).unwrap();
        assert_eq!(text.lines().count(), 2);
        let first: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first["label"], "a,b");
    }

    #[test]
    fn tidy_keeps_fifteen_digits() {
        assert_eq!(tidy(0.11837513961527216), 0.118375139615272);
        assert_eq!(tidy(0.0), 0.0);
        assert_eq!(tidy(-0.0), 0.0);
        assert_eq!(tidy(1e300), 1e300);
    }

    #[test]
    fn small_numbers_use_exponents() {
        assert_eq!(fmt_num(1e-12), "1e-12");
        assert_eq!(fmt_num(-3.5e-7), "-3.5e-7");
        assert_eq!(fmt_num(0.25), "0.25");
        assert_eq!(fmt_num(2e20), "2e20");
        assert_eq!(fmt_num(0.0), "0");
    }
}
