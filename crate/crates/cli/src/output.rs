use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
}

/// The JSON document every command emits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Value,
    pub rows: Vec<Map<String, Value>>,
    pub diagnostics: Vec<Diagnostic>,
}

/// A command result before formatting.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Report {
    pub fn new(command: &str, inputs: Value, columns: &[&'static str]) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            columns: columns.to_vec(),
            rows: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn diagnostic(&mut self, name: &str, value: f64, tolerance: f64) {
        self.diagnostics.push(Diagnostic {
            name: name.to_string(),
            value,
            tolerance,
        });
    }

    fn check_finite(&self) -> Result<()> {
        for row in &self.rows {
            for cell in row {
                if let Cell::Num(v) = cell {
                    if !v.is_finite() {
                        bail!("non-finite value {v} in {} output", self.command);
                    }
                }
            }
        }
        for d in &self.diagnostics {
            if !(d.value.is_finite() && d.tolerance.is_finite()) {
                bail!("non-finite diagnostic {}", d.name);
            }
        }
        Ok(())
    }

    pub fn to_record(&self) -> OutputRecord {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                self.columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), json_cell(v)))
                    .collect()
            })
            .collect();
        OutputRecord {
            command: self.command.clone(),
            inputs: self.inputs.clone(),
            rows,
            diagnostics: self.diagnostics.clone(),
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        self.check_finite()?;
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_record())?;
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
        })
    }

    fn csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for d in &self.diagnostics {
            out.push_str(&format!(
                "# {} = {} (tolerance {})\n",
                d.name,
                format_sig(d.value, 12),
                format_sig(d.tolerance, 12)
            ));
        }
        out
    }

    pub fn write(&self, format: Format, out: Option<&Path>) -> Result<()> {
        let text = self.render(format)?;
        match out {
            Some(path) => std::fs::write(path, text)
                .with_context(|| format!("writing {}", path.display()))?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn json_cell(c: &Cell) -> Value {
    match c {
        Cell::Num(v) => Value::from(*v),
        Cell::Int(v) => Value::from(*v),
        Cell::Text(s) => Value::from(s.as_str()),
        Cell::Empty => Value::Null,
    }
}

fn csv_cell(c: &Cell) -> String {
    match c {
        Cell::Num(v) => format_sig(*v, 12),
        Cell::Int(v) => v.to_string(),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
        Cell::Empty => String::new(),
    }
}

/// `%.{digits}g`-style formatting.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{:.*e}", digits - 1, x);
        let (mantissa, e) = s.split_once('e').expect("exponent");
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(-0.5, 12), "-0.5");
        assert_eq!(format_sig(-1.0 / 18.0, 12), "-0.0555555555556");
        assert_eq!(format_sig(1.0, 12), "1");
        assert_eq!(format_sig(1e-8, 12), "1e-8");
        assert_eq!(format_sig(123456789012345.0, 12), "1.23456789012e14");
        assert_eq!(format_sig(0.000123, 12), "0.000123");
    }

    #[test]
    fn csv_layout() {
        let mut r = Report::new("t", Value::Null, &["a", "b"]);
        r.push(vec![1u32.into(), Cell::Empty]);
        r.push(vec![Cell::Int(2), "x,y".into()]);
        r.diagnostic("residual", 1e-12, 1e-8);
        assert_eq!(r.csv(), "a,b\n1,\n2,\"x,y\"\n# residual = 1e-12 (tolerance 1e-8)\n");
    }

    #[test]
    fn rejects_non_finite() {
        let mut r = Report::new("t", Value::Null, &["a"]);
        r.push(vec![f64::NAN.into()]);
        assert!(r.render(Format::Json).is_err());
    }
}
