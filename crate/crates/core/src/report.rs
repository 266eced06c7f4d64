//! Machine-readable command output: a table of rows plus named parameters
//! and summary values, written as JSON or CSV.
//!
//! JSON layout:
//!
//! ```json
//! {
//!   "command": "eval",
//!   "parameters": {"level": "11", "weight": "4"},
//!   "columns": ["twist_index", "re", "im", "error_bound"],
//!   "rows": [["1", "1.2e-3", "0", "3.0e-9"]],
//!   "summary": {"pass": "true"}
//! }
//! ```
//!
//! Every cell is a string; numbers use [`decimal`]. CSV output is the header
//! line followed by the rows. Reports never contain timestamps or other
//! run-dependent data, so identical inputs give identical bytes.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::{Error, Result};

pub use crate::cuspform::format::decimal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    pub fn parse(tag: &str) -> Result<Self> {
        match tag {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::Parse(format!("unknown output format {tag:?} (expected json or csv)"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(serialize_with = "as_map")]
    pub parameters: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    #[serde(serialize_with = "as_map")]
    pub summary: Vec<(String, String)>,
}

/// Writes pairs as a JSON object in their given order.
fn as_map<S: serde::Serializer>(pairs: &[(String, String)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(pairs.len()))?;
    for (k, v) in pairs {
        m.serialize_entry(k, v)?;
    }
    m.end()
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Report {
            command: command.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn parameter(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub fn summary(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.summary.push((key.to_string(), value.to_string()));
        self
    }

    /// Appends a row; panics if its length differs from the header.
    pub fn row(&mut self, cells: Vec<String>) -> &mut Self {
        assert_eq!(cells.len(), self.columns.len(), "row width must match the columns");
        self.rows.push(cells);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

/// Writes `text` to `path`, or to stdout when `path` is `None`.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io { path: p.to_path_buf(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| Error::Io { path: "<stdout>".into(), source })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("eval", &["twist_index", "re"]);
        r.parameter("level", 11).parameter("weight", 4);
        r.row(vec!["1".into(), decimal(0.25)]);
        r.row(vec!["2".into(), decimal(-1.0 / 3.0)]);
        r.summary("pass", true);
        r
    }

    #[test]
    fn json_keeps_order_and_strings() {
        let j = sample().to_json();
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["parameters"]["level"], "11");
        assert_eq!(v["rows"][1][1], "-3.3333333333333331e-1");
        assert!(j.find("\"level\"").unwrap() < j.find("\"weight\"").unwrap());
        assert_eq!(v["summary"]["pass"], "true");
    }

    #[test]
    fn csv_is_header_and_rows() {
        assert_eq!(sample().to_csv(), "twist_index,re\n1,2.5000000000000000e-1\n2,-3.3333333333333331e-1\n");
    }

    #[test]
    fn formats_parse() {
        assert_eq!(OutputFormat::parse("csv").unwrap(), OutputFormat::Csv);
        assert!(OutputFormat::parse("xml").is_err());
    }

    #[test]
    #[should_panic]
    fn ragged_rows_panic() {
        Report::new("x", &["a", "b"]).row(vec!["1".into()]);
    }
}
