//! CSV and JSON writers.
//!
//! Every output is a flat table with a fixed column order. CSV follows
//! RFC 4180 quoting with LF line endings; JSON is an array of objects whose
//! keys appear in the same order as the CSV header. Floats are rounded to the
//! requested number of significant digits and then printed in their shortest
//! round-trip form, so identical inputs always give identical bytes.

use std::fmt::Write as _;

use quasispin_core::ThermoPoint;

/// Serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    /// Comma separated values with a header row.
    Csv,
    /// Array of records.
    Json,
}

/// Default number of significant digits.
pub const DEFAULT_PRECISION: usize = 9;
/// Accepted precision range.
pub const PRECISION_RANGE: std::ops::RangeInclusive<usize> = 6..=17;

/// Column names of a temperature-sweep table.
pub const THERMO_COLUMNS: [&str; 10] = [
    "theta",
    "nbar",
    "lambda",
    "varpi",
    "c_abs",
    "f_per_atom",
    "rz_eq10",
    "rz_eq4",
    "phase",
    "variant",
];

/// A table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Floating-point number.
    Num(f64),
    /// Integer.
    Int(u64),
    /// Boolean.
    Bool(bool),
    /// Text.
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

/// Rows sharing one header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Column names.
    pub columns: Vec<String>,
    /// Rows; each has one cell per column.
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    /// Empty table with the given header.
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.as_ref().to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row.
    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Renders the table.
    pub fn render(&self, format: OutputFormat, precision: usize) -> Vec<u8> {
        match format {
            OutputFormat::Csv => self.to_csv(precision),
            OutputFormat::Json => self.to_json(precision).into_bytes(),
        }
    }

    fn to_csv(&self, precision: usize) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .quote_style(csv::QuoteStyle::Necessary)
            .from_writer(Vec::new());
        // writing into a Vec cannot fail
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|c| csv_cell(c, precision)).collect();
            w.write_record(&fields).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }

    fn to_json(&self, precision: usize) -> String {
        let mut out = String::from("[");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(if i == 0 { "\n  {" } else { ",\n  {" });
            for (j, (key, cell)) in self.columns.iter().zip(row).enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                json_string(&mut out, key);
                out.push_str(": ");
                json_cell(&mut out, cell, precision);
            }
            out.push('}');
        }
        out.push_str(if self.rows.is_empty() { "]\n" } else { "\n]\n" });
        out
    }
}

/// Rounds `x` to `precision` significant digits and prints the shortest
/// decimal that reads back to the rounded value.
pub fn format_float(x: f64, precision: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let digits = precision.clamp(1, 17) - 1;
    let rounded: f64 = format!("{x:.digits$e}").parse().expect("valid float");
    if rounded == 0.0 {
        return "0".into();
    }
    let mag = rounded.abs();
    if (1e-5..1e16).contains(&mag) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn csv_cell(cell: &Cell, precision: usize) -> String {
    match cell {
        Cell::Num(x) => format_float(*x, precision),
        Cell::Int(n) => n.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) => s.clone(),
    }
}

fn json_cell(out: &mut String, cell: &Cell, precision: usize) {
    match cell {
        Cell::Num(x) if x.is_finite() => out.push_str(&format_float(*x, precision)),
        Cell::Num(_) => out.push_str("null"),
        Cell::Int(n) => {
            let _ = write!(out, "{n}");
        }
        Cell::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        Cell::Text(s) => json_string(out, s),
    }
}

fn json_string(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// Cells of one sweep row, in [`THERMO_COLUMNS`] order.
pub fn thermo_row(p: &ThermoPoint) -> Vec<Cell> {
    vec![
        p.theta.into(),
        p.nbar.into(),
        p.lambda.into(),
        p.varpi.into(),
        p.c_abs.into(),
        p.free_energy_per_atom.into(),
        p.rz_eq10.into(),
        p.rz_eq4.into(),
        p.phase.as_str().into(),
        p.variant.as_str().into(),
    ]
}

/// Sweep records as a table.
pub fn thermo_table(records: &[ThermoPoint]) -> Table {
    let mut table = Table::new(&THERMO_COLUMNS);
    for p in records {
        table.push(thermo_row(p));
    }
    table
}

/// Serializes sweep records with the fixed sweep header.
pub fn serialize(records: &[ThermoPoint], format: OutputFormat, precision: usize) -> Vec<u8> {
    thermo_table(records).render(format, precision)
}
