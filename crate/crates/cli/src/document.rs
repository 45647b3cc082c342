//! CSV documents: `#` header with the command, the resolved config and
//! derived quantities, the table, then the verdict block as trailing
//! comments.
//!
//! ```text
//! # osc-decay sweep
//! # phase = x^2*y^2
//! # h = 2
//! lambda,abs_value,error_estimate,ratio
//! 4.0000000000000000e0,...
//! # verdict=PASS
//! ```

use crate::config::ExperimentConfig;
use osc_decay::decay_lab::{parse_csv, CsvTable};
use std::fmt;

const MAGIC: &str = "osc-decay";

/// Ordered `key=value` lines.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Block(pub Vec<(String, String)>);

impl Block {
    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.0.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.0 {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub command: String,
    pub config: ExperimentConfig,
    /// Non-config `key = value` header lines; keys may repeat.
    pub derived: Vec<(String, String)>,
    pub columns: String,
    pub rows: Vec<Vec<f64>>,
    /// The table as written, header line included.
    pub table: String,
    pub verdict: Block,
}

impl Document {
    pub fn render(&self) -> String {
        let mut s = format!("# {MAGIC} {}\n", self.command);
        for line in self.config.echo() {
            s += &format!("# {line}\n");
        }
        for (k, v) in &self.derived {
            s += &format!("# {k} = {v}\n");
        }
        s += &self.table;
        for (k, v) in &self.verdict.0 {
            s += &format!("# {k}={v}\n");
        }
        s
    }

    pub fn derived(&self, key: &str) -> Option<&str> {
        self.derived.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn derived_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.derived.iter().filter(move |(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Reads a rendered document back; `columns_of` maps the command to
    /// its table header.
    pub fn parse(text: &str, columns_of: impl Fn(&str) -> Option<&'static str>) -> Result<Document, String> {
        let first = text.lines().next().unwrap_or("");
        let command = first
            .strip_prefix('#')
            .map(str::trim)
            .and_then(|l| l.strip_prefix(MAGIC))
            .map(str::trim)
            .filter(|c| !c.is_empty())
            .ok_or_else(|| format!("not an {MAGIC} output: first line {first:?}"))?
            .to_string();
        let columns = columns_of(&command).ok_or_else(|| format!("no table for command {command:?}"))?;
        let CsvTable { comments, rows } = parse_csv(text, columns).map_err(|e| e.to_string())?;
        let mut config = ExperimentConfig::default();
        let mut derived = Vec::new();
        let mut verdict = Block::default();
        for c in comments.iter().skip(1) {
            if let Some((k, v)) = c.split_once(" = ") {
                if ExperimentConfig::is_key(k) {
                    config.set(k, v)?;
                } else {
                    derived.push((k.to_string(), v.to_string()));
                }
            } else if let Some((k, v)) = c.split_once('=') {
                verdict.push(k, v);
            } else {
                return Err(format!("unrecognised comment {c:?}"));
            }
        }
        let table: String = text.lines().filter(|l| !l.trim_start().starts_with('#')).map(|l| format!("{l}\n")).collect();
        Ok(Document { command, config, derived, columns: columns.to_string(), rows, table, verdict })
    }
}
