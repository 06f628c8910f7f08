//! CSV and JSON tables. Numbers are printed with 15 significant digits;
//! missing values are empty in CSV and `null` in JSON.

use std::io::Write;

use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::CliError;

pub enum Cell {
    Text(String),
    Num(Option<f64>),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(Some(x)) => format_number(*x),
            Cell::Num(None) => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Num(Some(x)) => format_number(*x)
                .parse::<f64>()
                .ok()
                .and_then(serde_json::Number::from_f64)
                .map_or(Value::Null, Value::Number),
            Cell::Num(None) => Value::Null,
        }
    }
}

pub trait TableRow {
    const HEADER: &'static [&'static str];
    fn cells(&self) -> Vec<Cell>;
}

/// Shortest of fixed and scientific notation at 15 significant digits,
/// trailing zeros removed.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn write_table<R: TableRow, W: Write>(rows: &[R], format: Format, out: W) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(R::HEADER).map_err(csv_error)?;
            for row in rows {
                w.write_record(row.cells().iter().map(Cell::csv)).map_err(csv_error)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = R::HEADER
                        .iter()
                        .zip(row.cells())
                        .map(|(k, c)| (k.to_string(), c.json()))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &list).map_err(|e| CliError::Io(e.into()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(e.into())
}
