use std::io::{self, Write};

use serde::Serialize;
use serde_json::{Map, Value};

pub type Row = Map<String, Value>;

#[derive(Debug, Serialize)]
pub struct Meta {
    pub seed: u64,
    pub tolerances: Row,
    pub version: &'static str,
}

#[derive(Debug, Serialize)]
pub struct ReportEnvelope {
    pub command: &'static str,
    pub inputs: Row,
    pub rows: Vec<Row>,
    pub meta: Meta,
    pub summary: Vec<Row>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Builds a row from `key => value` pairs, keeping their order.
#[macro_export]
macro_rules! row {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut m = $crate::report::Row::new();
        $(m.insert(String::from($k), serde_json::json!($v));)*
        m
    }};
}

/// Plain decimal with at most 12 significant digits.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return String::new();
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if rounded == 0.0 {
        return "0".into();
    }
    format!("{rounded}")
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format_number(x),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write_table<W: Write>(out: &mut csv::Writer<W>, rows: &[Row]) -> csv::Result<()> {
    let Some(first) = rows.first() else {
        return Ok(());
    };
    out.write_record(first.keys())?;
    for row in rows {
        out.write_record(
            first
                .keys()
                .map(|k| row.get(k).map(cell).unwrap_or_default()),
        )?;
    }
    Ok(())
}

impl ReportEnvelope {
    /// JSON: the whole envelope. CSV: the rows table, then a blank line and
    /// the summary table.
    pub fn emit<W: Write>(&self, format: Format, mut w: W) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut w, self)?;
                writeln!(w)
            }
            Format::Csv => {
                let mut out = csv::Writer::from_writer(Vec::new());
                write_table(&mut out, &self.rows)?;
                let mut bytes = out.into_inner().map_err(|e| e.into_error())?;
                if !self.summary.is_empty() {
                    bytes.push(b'\n');
                    let mut out = csv::Writer::from_writer(bytes);
                    write_table(&mut out, &self.summary)?;
                    bytes = out.into_inner().map_err(|e| e.into_error())?;
                }
                w.write_all(&bytes)
            }
        }
    }
}
