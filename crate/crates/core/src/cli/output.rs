//! Tabular reports rendered as CSV or JSON.

use std::io::Write;

use serde_json::{json, Map, Value};

pub const SIG_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(o: Option<T>) -> Self {
        o.map_or(Cell::Empty, Into::into)
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Decimal rendering with [`SIG_DIGITS`] significant digits and trailing
/// zeros removed; scientific notation outside `[1e-5, 1e12)`.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_owned()
    } else {
        let s = format!("{:.*e}", SIG_DIGITS - 1, x);
        let (mantissa, e) = s.split_once('e').expect("scientific format");
        format!("{}e{}", trim_fraction(mantissa), e)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_sig(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(i) => json!(i),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

/// Ordered record of named cells.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Record(pub Vec<(String, Cell)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: &str, cell: impl Into<Cell>) -> &mut Self {
        self.0.push((name.to_owned(), cell.into()));
        self
    }

    pub fn extend(&mut self, other: Record) -> &mut Self {
        self.0.extend(other.0);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Cell> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    fn to_json(&self) -> Value {
        Value::Object(self.0.iter().map(|(k, c)| (k.clone(), c.json())).collect::<Map<_, _>>())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub meta: Map<String, Value>,
    pub rows: Vec<Record>,
    pub summary: Option<Record>,
}

impl Report {
    /// Rows may carry different optional columns; the CSV header is the
    /// union in first-seen order.
    fn columns(&self) -> Vec<String> {
        let mut cols: Vec<String> = Vec::new();
        for row in &self.rows {
            for (name, _) in &row.0 {
                if !cols.contains(name) {
                    cols.push(name.clone());
                }
            }
        }
        cols
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                let cols = self.columns();
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&cols)?;
                for row in &self.rows {
                    let fields = cols.iter().map(|c| row.get(c).map_or(String::new(), Cell::csv));
                    w.write_record(fields)?;
                }
                w.flush()?;
                Ok(())
            }
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("meta".into(), Value::Object(self.meta.clone()));
                doc.insert("rows".into(), Value::Array(self.rows.iter().map(Record::to_json).collect()));
                if let Some(s) = &self.summary {
                    doc.insert("summary".into(), s.to_json());
                }
                serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
                writeln!(out)
            }
        }
    }

    /// Summary as `key=value` pairs for the diagnostic stream.
    pub fn summary_line(&self) -> Option<String> {
        self.summary.as_ref().map(|s| {
            s.0.iter()
                .map(|(k, c)| format!("{k}={}", c.csv()))
                .collect::<Vec<_>>()
                .join(" ")
        })
    }
}
