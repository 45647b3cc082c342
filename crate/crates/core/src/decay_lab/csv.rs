//! CSV tables with `#` comment headers.

use super::epsilon::SublevelSample;
use super::morse::MorseVerdict;
use super::sweep::DecayReport;
use crate::error::{Error, Result};

/// 17 significant digits; parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub const SWEEP_COLUMNS: &str = "lambda,abs_value,error_estimate,ratio";
pub const SUBLEVEL_COLUMNS: &str = "epsilon,measure,measure_error";
pub const MORSE_COLUMNS: &str = "lambda,inner_measure,inner_ratio,outer_envelope,outer_ratio";

pub fn sweep_csv(report: &DecayReport) -> String {
    let mut s = format!("{SWEEP_COLUMNS}\n");
    for r in &report.samples {
        s += &format!("{},{},{},{}\n", fmt_f64(r.lambda), fmt_f64(r.abs_value), fmt_f64(r.error_estimate), fmt_f64(r.ratio));
    }
    s
}

pub fn sublevel_csv(samples: &[SublevelSample]) -> String {
    let mut s = format!("{SUBLEVEL_COLUMNS}\n");
    for r in samples {
        s += &format!("{},{},{}\n", fmt_f64(r.epsilon), fmt_f64(r.measure), fmt_f64(r.measure_error));
    }
    s
}

pub fn morse_csv(verdict: &MorseVerdict) -> String {
    let mut s = format!("{MORSE_COLUMNS}\n");
    for r in &verdict.rows {
        let cells = [r.lambda, r.inner_measure, r.inner_ratio, r.outer_envelope, r.outer_ratio].map(fmt_f64);
        s += &cells.join(",");
        s.push('\n');
    }
    s
}

/// Comment lines (without the leading `#`) and numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub comments: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Reads a table whose header must equal `columns`.
pub fn parse_csv(text: &str, columns: &str) -> Result<CsvTable> {
    let mut comments = Vec::new();
    let mut rows = Vec::new();
    let mut seen_header = false;
    let width = columns.split(',').count();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
        } else if line.is_empty() {
            continue;
        } else if !seen_header {
            if line != columns {
                return Err(Error::InvalidArgument(format!("line {}: expected header {columns:?}", i + 1)));
            }
            seen_header = true;
        } else {
            let row = line
                .split(',')
                .map(|v| v.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::InvalidArgument(format!("line {}: {e}", i + 1)))?;
            if row.len() != width {
                return Err(Error::InvalidArgument(format!("line {}: expected {width} fields", i + 1)));
            }
            rows.push(row);
        }
    }
    if !seen_header {
        return Err(Error::InvalidArgument(format!("missing header {columns:?}")));
    }
    Ok(CsvTable { comments, rows })
}

pub fn parse_sweep_csv(text: &str) -> Result<CsvTable> {
    parse_csv(text, SWEEP_COLUMNS)
}

pub fn parse_sublevel_csv(text: &str) -> Result<CsvTable> {
    parse_csv(text, SUBLEVEL_COLUMNS)
}
