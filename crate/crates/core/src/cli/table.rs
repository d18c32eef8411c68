use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use crate::tolerances::OUTPUT_SIGNIFICANT_DIGITS;

/// One output cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Real(f64),
    Bool(bool),
    Text(String),
    /// Not applicable for this row: empty in CSV, `null` in JSON.
    Empty,
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Empty, Into::into)
    }
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Int(i) => Some(*i as f64),
            Value::Real(r) => Some(*r),
            _ => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Real(r) => format_significant(*r),
            Value::Bool(b) => b.to_string(),
            Value::Text(t) => t.clone(),
            Value::Empty => String::new(),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Int(i) => s.serialize_i64(*i),
            Value::Real(r) if r.is_finite() => {
                s.serialize_f64(format_significant(*r).parse().expect("formatted float"))
            }
            Value::Real(r) => s.serialize_str(&format_significant(*r)),
            Value::Bool(b) => s.serialize_bool(*b),
            Value::Text(t) => s.serialize_str(t),
            Value::Empty => s.serialize_none(),
        }
    }
}

/// Formats with 12 significant digits: fixed notation for exponents in
/// `[-5, 12)`, scientific otherwise, trailing zeros removed.
pub fn format_significant(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let digits = OUTPUT_SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let negative = mantissa.starts_with('-');
    let body: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if negative { "-" } else { "" };
    if (-5..digits as i32).contains(&exp) {
        let s = if exp >= 0 {
            let split = exp as usize + 1;
            format!("{}.{}", &body[..split], &body[split..])
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), body)
        };
        let s = s.trim_end_matches('0').trim_end_matches('.');
        format!("{sign}{s}")
    } else {
        let m = format!("{}.{}", &body[..1], &body[1..]);
        let m = m.trim_end_matches('0').trim_end_matches('.');
        format!("{sign}{m}e{exp}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width for table {}",
            self.name
        );
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Cell lookup by row index and column name.
    pub fn get(&self, row: usize, column: &str) -> Option<&Value> {
        self.column_index(column)
            .and_then(|c| self.rows.get(row).map(|r| &r[c]))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub seed: Option<u64>,
    pub version: String,
    /// Reported on stderr only, so output files stay byte-identical.
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub mode: String,
    pub metadata: Metadata,
    pub tables: Vec<Table>,
}

impl ExperimentResult {
    pub fn new(mode: &str, seed: Option<u64>) -> Self {
        ExperimentResult {
            mode: mode.into(),
            metadata: Metadata {
                seed,
                version: env!("CARGO_PKG_VERSION").into(),
                wall_time: Duration::ZERO,
            },
            tables: Vec::new(),
        }
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    /// Header row per table; tables separated by a blank line and preceded by
    /// `# name` when there is more than one.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let labelled = self.tables.len() > 1;
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            if labelled {
                let _ = writeln!(out, "# {}", t.name);
            }
            let header: Vec<String> = t.columns.iter().map(|c| csv_field(c)).collect();
            let _ = writeln!(out, "{}", header.join(","));
            for row in &t.rows {
                let cells: Vec<String> = row.iter().map(|v| csv_field(&v.render())).collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable result");
        s.push('\n');
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Space-separated 1-based indices.
pub fn one_based(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
