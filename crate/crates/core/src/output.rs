//! CSV and JSON rendering.
//!
//! Computed values are printed with 12 significant digits, while inputs
//! (momenta, temperatures, μ) keep their shortest round-trip form. A
//! momentum of `+inf` (asymptote rows) is written as `inf`.

use std::io::{self, Write};

use serde_json::{Map, Value};

use crate::grid::OutputRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    /// An input value, printed exactly.
    Input(f64),
    /// A computed value, printed to 12 significant digits.
    Num(f64),
}

fn nonfinite(v: f64) -> Option<&'static str> {
    if v.is_nan() {
        Some("nan")
    } else if v == f64::INFINITY {
        Some("inf")
    } else if v == f64::NEG_INFINITY {
        Some("-inf")
    } else {
        None
    }
}

/// `v` to 12 significant digits in scientific notation.
pub fn format_sig12(v: f64) -> String {
    match nonfinite(v) {
        Some(s) => s.to_string(),
        None => format!("{v:.11e}"),
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Input(v) => nonfinite(*v).map(str::to_string).unwrap_or_else(|| v.to_string()),
            Cell::Num(v) => format_sig12(*v),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(i) => Value::from(*i),
            Cell::Input(v) | Cell::Num(v) if v.is_nan() => Value::Null,
            Cell::Input(v) | Cell::Num(v) if v.is_infinite() => Value::String(nonfinite(*v).unwrap().to_string()),
            Cell::Input(v) => Value::from(*v),
            // Parsing the 12-digit string back keeps CSV and JSON consistent.
            Cell::Num(v) => Value::from(format_sig12(*v).parse::<f64>().unwrap_or(*v)),
        }
    }
}

/// A header plus rows, rendered as CSV or as a JSON array of objects.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write + ?Sized>(&self, w: &mut W) -> io::Result<()> {
        let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        out.write_record(&self.header)?;
        for row in &self.rows {
            out.write_record(row.iter().map(Cell::csv))?;
        }
        out.flush()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        self.header.iter().zip(row).map(|(h, c)| (h.to_string(), c.json())).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn write_json<W: Write + ?Sized>(&self, w: &mut W) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *w, &self.to_json())?;
        writeln!(w)
    }

    pub fn write<W: Write + ?Sized>(&self, w: &mut W, format: Format) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }
}

pub const RECORD_HEADER: [&str; 8] = ["quantity", "k_mev", "T_mev", "mu", "r", "value", "error_bound", "method"];

/// The standard record table.
pub fn records_table(records: &[OutputRecord]) -> Table {
    let mut t = Table::new(RECORD_HEADER.to_vec());
    for r in records {
        t.push(vec![
            Cell::Text(r.quantity.as_str().to_string()),
            Cell::Input(r.k),
            Cell::Input(r.temperature),
            Cell::Input(r.mu),
            Cell::Int(i64::from(r.r)),
            Cell::Num(r.value),
            Cell::Num(r.error_bound),
            Cell::Text(r.method.as_str().to_string()),
        ]);
    }
    t
}
