//! CSV and JSON emission.
//!
//! A command produces one or more [`Report`]s sharing a column layout. CSV
//! output is a single header followed by the rows of every report; JSON
//! output is one object per report and per line, with the rows under
//! `samples`. Reals are printed with a fixed number of decimals, so output
//! bytes depend only on the inputs and the configured precision.

use std::io::Write;

use anyhow::Result;
use serde_json::{Map, Number, Value};

use crate::config::OutputFormat;
use fibcontract::verify::{Quantity, VerificationReport};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    /// An exact number, kept as its decimal (or symbolic) text.
    Exact(String),
    Real(f64),
    Text(String),
    Bool(bool),
    List(Vec<Cell>),
    Empty,
}

impl Cell {
    pub fn exact(v: impl ToString) -> Self {
        Cell::Exact(v.to_string())
    }

    pub fn text(v: impl Into<String>) -> Self {
        Cell::Text(v.into())
    }

    fn csv_text(&self, precision: usize) -> String {
        match self {
            Cell::Exact(s) | Cell::Text(s) => s.clone(),
            Cell::Real(v) => format_real(*v, precision),
            Cell::Bool(b) => b.to_string(),
            Cell::List(items) => items.iter().map(|c| c.csv_text(precision)).collect::<Vec<_>>().join(";"),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self, precision: usize) -> Value {
        match self {
            // Integers that fit are emitted as numbers, everything else as text.
            Cell::Exact(s) => s.parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::String(s.clone())),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Real(v) => format_real(*v, precision)
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::List(items) => Value::Array(items.iter().map(|c| c.json(precision)).collect()),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<&Quantity> for Cell {
    fn from(q: &Quantity) -> Self {
        match q {
            Quantity::Exact(s) => Cell::Exact(s.clone()),
            Quantity::Real(v) => Cell::Real(*v),
        }
    }
}

pub fn format_real(v: f64, precision: usize) -> String {
    if v.is_finite() {
        let s = format!("{v:.precision$}");
        // Avoid "-0.000…" for values that round to zero.
        if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
            s[1..].to_string()
        } else {
            s
        }
    } else {
        v.to_string()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub name: String,
    pub parameters: String,
    pub passed: Option<bool>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(name: impl Into<String>, parameters: impl Into<String>, columns: &[&str]) -> Self {
        Report {
            name: name.into(),
            parameters: parameters.into(),
            passed: None,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

pub const VERIFY_COLUMNS: [&str; 7] = ["check", "parameters", "index", "values", "residual", "tolerance", "passed"];

impl From<&VerificationReport> for Report {
    fn from(v: &VerificationReport) -> Self {
        let mut report = Report::new(v.check_name.clone(), v.parameters.clone(), &VERIFY_COLUMNS);
        report.passed = Some(v.passed);
        for o in &v.details {
            report.push(vec![
                Cell::text(v.check_name.clone()),
                Cell::text(v.parameters.clone()),
                Cell::text(o.index.clone()),
                Cell::List(o.values.iter().map(Cell::from).collect()),
                Cell::from(&o.residual),
                o.tolerance.map(Cell::Real).unwrap_or(Cell::Empty),
                Cell::Bool(o.passed),
            ]);
        }
        report
    }
}

pub fn write_csv(out: &mut dyn Write, reports: &[Report], precision: usize) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    if let Some(first) = reports.first() {
        writer.write_record(&first.columns)?;
    }
    for report in reports {
        for row in &report.rows {
            writer.write_record(row.iter().map(|c| c.csv_text(precision)))?;
        }
    }
    writer.flush()?;
    Ok(())
}

pub fn write_json(out: &mut dyn Write, reports: &[Report], precision: usize) -> Result<()> {
    for report in reports {
        let mut object = Map::new();
        object.insert("report".into(), Value::String(report.name.clone()));
        object.insert("parameters".into(), Value::String(report.parameters.clone()));
        if let Some(passed) = report.passed {
            object.insert("passed".into(), Value::Bool(passed));
        }
        let samples = report
            .rows
            .iter()
            .map(|row| {
                let fields = report.columns.iter().cloned().zip(row.iter().map(|c| c.json(precision)));
                Value::Object(fields.collect())
            })
            .collect();
        object.insert("samples".into(), Value::Array(samples));
        serde_json::to_writer(&mut *out, &Value::Object(object))?;
        writeln!(out)?;
    }
    Ok(())
}

pub fn write(out: &mut dyn Write, format: OutputFormat, reports: &[Report], precision: usize) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(out, reports, precision),
        OutputFormat::Json => write_json(out, reports, precision),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo", "x=5", &["x", "exact", "note"]);
        r.push(vec![Cell::exact(5), Cell::Real(30f64.ln()), Cell::text("a, b")]);
        r.push(vec![Cell::exact("123456789012345678901234567890"), Cell::Real(-1e-20), Cell::Empty]);
        r
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[sample()], 6).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "x,exact,note\n5,3.401197,\"a, b\"\n123456789012345678901234567890,0.000000,\n");
    }

    #[test]
    fn json_lines() {
        let mut buf = Vec::new();
        write_json(&mut buf, &[sample(), sample()], 3).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        let v: Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(v["samples"][0]["exact"], serde_json::json!(3.401));
        assert_eq!(v["samples"][0]["x"], serde_json::json!(5));
        assert_eq!(v["samples"][1]["x"], serde_json::json!("123456789012345678901234567890"));
        assert_eq!(v["samples"][1]["note"], Value::Null);
    }

    #[test]
    fn emission_is_deterministic() {
        let render = || {
            let mut buf = Vec::new();
            write(&mut buf, OutputFormat::Json, &[sample()], 12).unwrap();
            buf
        };
        assert_eq!(render(), render());
    }
}
