//! Output documents and their JSON and CSV renderings.
//!
//! Every command produces one [`OutputRecord`]. JSON renders the whole
//! record; CSV renders a header line followed by the rows, with columns in
//! the order the command declares them. Floats in CSV carry 17 significant
//! digits.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Null,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => csv_escape(s),
            Cell::Null => String::new(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Float(v) if v.is_finite() => s.serialize_f64(*v),
            Cell::Float(_) | Cell::Null => s.serialize_none(),
            Cell::Int(v) => s.serialize_u64(*v),
            Cell::Bool(v) => s.serialize_bool(*v),
            Cell::Text(v) => s.serialize_str(v),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// One table row; serializes as a JSON object with keys in column order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Row(Vec<(&'static str, Cell)>);

impl Row {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Cell>) -> Self {
        self.0.push((key, value.into()));
        self
    }

    pub fn columns(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.0.iter().map(|(k, _)| *k)
    }

    pub fn get(&self, key: &str) -> Option<&Cell> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }
}

impl Serialize for Row {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub parameters: BTreeMap<&'static str, Value>,
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Value>,
}

impl OutputRecord {
    pub fn new(command: &'static str) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            parameters: BTreeMap::new(),
            rows: Vec::new(),
            summary: None,
        }
    }

    pub fn param(mut self, key: &'static str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).expect("parameter values are plain data");
        self.parameters.insert(key, v);
        self
    }

    pub fn row(mut self, row: Row) -> Self {
        debug_assert!(self
            .rows
            .first()
            .is_none_or(|first| first.columns().eq(row.columns())));
        self.rows.push(row);
        self
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("record serializes");
        out.push('\n');
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Some(first) = self.rows.first() {
            let header: Vec<&str> = first.columns().collect();
            let _ = writeln!(out, "{}", header.join(","));
        }
        for row in &self.rows {
            let cells: Vec<String> = row.0.iter().map(|(_, c)| c.csv()).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        OutputRecord::new("demo")
            .param("steps", 2u64)
            .row(
                Row::new()
                    .with("theta_rad", 0.0)
                    .with("label", "a,b")
                    .with("n", 3u64),
            )
            .row(
                Row::new()
                    .with("theta_rad", 2.0 / 3.0)
                    .with("label", "c")
                    .with("n", 4u64),
            )
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "theta_rad,label,n");
        assert_eq!(lines[1], "0.0000000000000000e0,\"a,b\",3");
        assert_eq!(lines[2], "6.6666666666666663e-1,c,4");
    }

    #[test]
    fn csv_floats_round_trip() {
        for v in [2.0 / 3.0, 1e-300, std::f64::consts::PI, 0.1 + 0.2] {
            let s = Cell::Float(v).csv();
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn json_keeps_column_order() {
        let json = sample().to_json();
        let t = json.find("\"theta_rad\"").unwrap();
        let l = json.find("\"label\"").unwrap();
        let n = json.find("\"n\"").unwrap();
        assert!(t < l && l < n);
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert!(v.get("summary").is_none());
    }

    #[test]
    fn null_cells() {
        let row = Row::new()
            .with("x", Option::<f64>::None)
            .with("y", f64::NAN);
        assert_eq!(
            serde_json::to_string(&row).unwrap(),
            r#"{"x":null,"y":null}"#
        );
        let rec = OutputRecord::new("demo").row(row);
        assert_eq!(rec.to_csv().lines().nth(1).unwrap(), ",NaN");
    }
}
