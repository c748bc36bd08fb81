//! Tabular output. A [`Table`] renders to CSV (header, rows, then one
//! `label,value` footer record per summary entry) or to JSON carrying the
//! same fields under a metadata header.

use serde::Serialize;
use serde_json::{json, Map, Value as Json};

use crate::args::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    /// Rendered as an empty CSV field and `null` in JSON.
    Missing,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Self::Num(x)
    }
}

impl From<u64> for Value {
    fn from(k: u64) -> Self {
        Self::Int(k)
    }
}

impl From<usize> for Value {
    fn from(k: usize) -> Self {
        Self::Int(k as u64)
    }
}

impl From<Option<f64>> for Value {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Self::Missing, Self::Num)
    }
}

/// Shortest decimal that parses back to the same `f64`, switching to
/// exponent form outside `[1e-5, 1e16)`.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Self::Num(x) => Some(*x),
            Self::Int(k) => Some(*k as f64),
            Self::Missing => None,
        }
    }

    fn csv(&self) -> String {
        match self {
            Self::Num(x) => format_float(*x),
            Self::Int(k) => k.to_string(),
            Self::Missing => String::new(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Self::Num(x) => json!(x),
            Self::Int(k) => json!(k),
            Self::Missing => Json::Null,
        }
    }
}

/// Run parameters echoed into JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub eps: f64,
    pub gamma: f64,
    pub marked: u64,
    pub algorithm: Option<String>,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub summary: Vec<(&'static str, f64)>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn summarise(&mut self, label: &'static str, value: f64) {
        self.summary.push((label, value));
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Value>> {
        let k = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| &r[k]).collect())
    }

    pub fn render(&self, format: Format, meta: &Metadata) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(meta),
        }
    }

    fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .flexible(true)
            .from_writer(Vec::new());
        let write = |w: &mut csv::Writer<Vec<u8>>, rec: Vec<String>| {
            w.write_record(rec).expect("in-memory write");
        };
        write(&mut w, self.columns.iter().map(|c| c.to_string()).collect());
        for row in &self.rows {
            write(&mut w, row.iter().map(Value::csv).collect());
        }
        for (label, value) in &self.summary {
            let mut rec = vec![label.to_string(), format_float(*value)];
            rec.resize(self.columns.len().max(2), String::new());
            write(&mut w, rec);
        }
        let bytes = w.into_inner().expect("in-memory flush");
        String::from_utf8(bytes).expect("ascii output")
    }

    fn to_json(&self, meta: &Metadata) -> String {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Json> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Json::Object(obj)
            })
            .collect();
        let summary: Map<String, Json> = self
            .summary
            .iter()
            .map(|(l, v)| (l.to_string(), json!(v)))
            .collect();
        let doc = json!({
            "metadata": meta,
            "columns": self.columns,
            "rows": rows,
            "summary": summary,
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("serialisable");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [
            0.0,
            1.0,
            -0.1,
            1.0 / 3.0,
            1e-17,
            6.02e23,
            f64::MIN_POSITIVE,
            12345.678,
        ] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_float(0.125), "0.125");
        assert_eq!(format_float(1e-17), "1e-17");
    }

    #[test]
    fn footer_records_pad_to_width() {
        let mut t = Table::new(&["N", "norm"]);
        t.push(vec![100u64.into(), 0.5.into()]);
        t.summarise("slope", -0.25);
        assert_eq!(t.to_csv(), "N,norm\n100,0.5\nslope,-0.25\n");
    }

    #[test]
    fn missing_values() {
        let mut t = Table::new(&["s", "lhs", "rhs"]);
        t.push(vec![1.0.into(), Value::Missing, None.into()]);
        assert_eq!(t.to_csv(), "s,lhs,rhs\n1,,\n");
    }
}
