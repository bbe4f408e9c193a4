//! Tabular output shared by every subcommand.
//!
//! A [`Table`] is rendered as aligned plain text, CSV with a header row, or a
//! single JSON document. Exact integers are kept as decimal strings in every
//! format; floats use the shortest representation that round-trips.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use num_bigint::BigUint;
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Exact integer or rational, as written in decimal.
    Exact(String),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    pub fn exact(v: impl fmt::Display) -> Cell {
        Cell::Exact(v.to_string())
    }

    pub fn text(v: impl Into<String>) -> Cell {
        Cell::Text(v.into())
    }

    fn render(&self) -> String {
        match self {
            Cell::Exact(s) | Cell::Text(s) => s.clone(),
            Cell::Float(v) => format_float(*v),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Exact(s) | Cell::Text(s) => Value::String(s.clone()),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }

    fn right_aligned(&self) -> bool {
        matches!(self, Cell::Exact(_) | Cell::Float(_))
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Cell {
        Cell::exact(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Cell {
        Cell::exact(v)
    }
}

impl From<&BigUint> for Cell {
    fn from(v: &BigUint) -> Cell {
        Cell::exact(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Cell {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Cell {
        Cell::Bool(v)
    }
}

/// Shortest round-tripping decimal; exponent form outside `[1e-5, 1e16)`.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:?}")
    }
}

/// Parses a float written by [`format_float`].
pub fn parse_float(s: &str) -> Option<f64> {
    f64::from_str(s).ok()
}

/// Optional provenance header: tool version and a timestamp.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Meta {
    pub version: &'static str,
    pub generated_unix: u64,
}

impl Meta {
    pub fn now() -> Meta {
        let generated_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Meta {
            version: env!("CARGO_PKG_VERSION"),
            generated_unix,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Report name, e.g. `average`.
    pub kind: String,
    /// Report-wide parameters; shown in plain and JSON output, not in CSV.
    pub context: Vec<(String, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(kind: impl Into<String>, columns: &[&'static str]) -> Table {
        Table {
            kind: kind.into(),
            context: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<Cell>) -> Table {
        self.context.push((key.into(), value.into()));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat, meta: Option<&Meta>) -> Result<String, CliError> {
        match format {
            OutputFormat::Plain => Ok(self.plain(meta)),
            OutputFormat::Csv => self.csv(),
            OutputFormat::Json => self.json(meta),
        }
    }

    fn plain(&self, meta: Option<&Meta>) -> String {
        let mut out = String::new();
        if let Some(m) = meta {
            out += &format!("# phik {} at unix time {}\n", m.version, m.generated_unix);
        }
        for (key, value) in &self.context {
            out += &format!("# {key} = {}\n", value.render());
        }
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::render).collect())
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                cells
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([self.columns[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |fields: Vec<(String, bool)>| -> String {
            let parts: Vec<String> = fields
                .into_iter()
                .zip(&widths)
                .map(|((s, right), &w)| {
                    if right {
                        format!("{s:>w$}")
                    } else {
                        format!("{s:<w$}")
                    }
                })
                .collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        let right: Vec<bool> = (0..self.columns.len())
            .map(|i| self.rows.first().is_some_and(|r| r[i].right_aligned()))
            .collect();
        out += &line(
            self.columns
                .iter()
                .zip(&right)
                .map(|(c, &r)| (c.to_string(), r))
                .collect(),
        );
        for (row, text) in self.rows.iter().zip(cells) {
            out += &line(
                text.into_iter()
                    .zip(row.iter().map(Cell::right_aligned))
                    .collect(),
            );
        }
        out
    }

    fn csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Csv(e.into_error().into()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    fn json(&self, meta: Option<&Meta>) -> Result<String, CliError> {
        let mut doc = Map::new();
        doc.insert("report".into(), Value::String(self.kind.clone()));
        if let Some(m) = meta {
            let mut mm = Map::new();
            mm.insert("version".into(), Value::String(m.version.into()));
            mm.insert("generated_unix".into(), Value::from(m.generated_unix));
            doc.insert("meta".into(), Value::Object(mm));
        }
        for (key, value) in &self.context {
            doc.insert(key.clone(), value.to_json());
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.to_string(), v.to_json()))
                        .collect(),
                )
            })
            .collect();
        doc.insert("rows".into(), Value::Array(rows));
        Ok(serde_json::to_string_pretty(&Value::Object(doc))? + "\n")
    }
}
