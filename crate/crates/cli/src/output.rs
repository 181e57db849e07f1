//! Tabular output shared by every subcommand. A value is rounded to the
//! requested number of significant digits once, and every format prints that
//! same double.

use std::io::{self, Write};

use serde_json::{Map, Number, Value};

use crate::args::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    /// Not defined for this row: empty in csv, null in json.
    Missing,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Missing, Into::into)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// Ordered `(column, value)` pairs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(String, Cell)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Cell>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Cell>) {
        self.0.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Cell> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

/// `x` rounded to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 || digits >= 17 {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

/// `%g`-style rendering for the plain format.
pub fn format_plain(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
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
        let (mantissa, e) = s.split_once('e').unwrap_or((&s, "0"));
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{e}")
    }
}

fn machine_text(cell: &Cell, digits: usize) -> String {
    match cell {
        Cell::Num(x) => format!("{:?}", round_sig(*x, digits)),
        Cell::Int(i) => i.to_string(),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
        Cell::Missing => String::new(),
    }
}

fn plain_text(cell: &Cell, digits: usize) -> String {
    match cell {
        Cell::Num(x) => format_plain(*x, digits),
        Cell::Missing => "-".into(),
        other => machine_text(other, digits),
    }
}

fn json_value(cell: &Cell, digits: usize) -> Value {
    match cell {
        Cell::Num(x) => Number::from_f64(round_sig(*x, digits))
            .map(Value::Number)
            .unwrap_or(Value::Null),
        Cell::Int(i) => Value::from(*i),
        Cell::Text(s) => Value::from(s.clone()),
        Cell::Bool(b) => Value::from(*b),
        Cell::Missing => Value::Null,
    }
}

pub fn record_json(r: &Record, digits: usize) -> Value {
    let mut map = Map::new();
    for (k, v) in &r.0 {
        map.insert(k.clone(), json_value(v, digits));
    }
    Value::Object(map)
}

/// A single record prints as an object (json) or a two-line table (csv).
pub fn write_record(out: &mut dyn Write, r: &Record, format: Format, digits: usize) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &record_json(r, digits))?;
            writeln!(out)
        }
        Format::Csv => write_rows(out, std::slice::from_ref(r), format, digits),
        Format::Plain => {
            let width = r.0.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &r.0 {
                writeln!(out, "{k:<width$}  {}", plain_text(v, digits))?;
            }
            Ok(())
        }
    }
}

/// Rows sharing the first row's columns: csv with a header, a json array of
/// objects, or an aligned plain table.
pub fn write_rows(out: &mut dyn Write, rows: &[Record], format: Format, digits: usize) -> io::Result<()> {
    let header: Vec<&str> = rows
        .first()
        .map(|r| r.0.iter().map(|(k, _)| k.as_str()).collect())
        .unwrap_or_default();
    match format {
        Format::Json => {
            let arr: Vec<Value> = rows.iter().map(|r| record_json(r, digits)).collect();
            serde_json::to_writer_pretty(&mut *out, &arr)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&header)?;
            for r in rows {
                w.write_record(r.0.iter().map(|(_, v)| machine_text(v, digits)))?;
            }
            w.flush()
        }
        Format::Plain => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| r.0.iter().map(|(_, v)| plain_text(v, digits)).collect())
                .collect();
            let widths: Vec<usize> = (0..header.len())
                .map(|i| {
                    cells
                        .iter()
                        .filter_map(|row| row.get(i).map(String::len))
                        .chain(std::iter::once(header[i].len()))
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |items: Vec<&str>| {
                items
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(header.clone()))?;
            for row in &cells {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
            }
            Ok(())
        }
    }
}
