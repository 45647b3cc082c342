//! The non-degenerate case f = x² ± y², split at λ|f| = M.
//!
//! Inner part: the measure of {λ|f| ≤ M}, compared with 1/λ (sum of squares)
//! or ln λ/λ (saddle). Outer part: the envelope over {λ|f| > M} with the
//! indicator of the square as amplitude, compared with ln λ/λ or ln²λ/λ.

use super::sublevel::{sublevel_measure_with, SublevelConfig};
use super::sweep::{Trend, MAX_SPREAD};
use crate::error::{Error, Result};
use crate::integrator::{integrate_envelope_restricted, QuadConfig};
use crate::par::map_ordered;
use crate::phase_algebra::{parse_phase, Amplitude};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorseSign {
    Plus,
    Minus,
}

impl FromStr for MorseSign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" => Ok(MorseSign::Plus),
            "-" | "minus" => Ok(MorseSign::Minus),
            other => Err(Error::InvalidArgument(format!("sign must be + or -, got {other:?}"))),
        }
    }
}

impl std::fmt::Display for MorseSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MorseSign::Plus => "+",
            MorseSign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorseRow {
    pub lambda: f64,
    pub inner_measure: f64,
    pub inner_ratio: f64,
    pub outer_envelope: f64,
    pub outer_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MorseVerdict {
    pub pass: bool,
    pub sign: MorseSign,
    pub level: f64,
    pub rows: Vec<MorseRow>,
    pub inner: Trend,
    pub outer: Trend,
    /// Trends over the upper half of the grid.
    pub inner_tail: Trend,
    pub outer_tail: Trend,
}

/// Bounded on a finite grid: spread under 20 and no growth over the upper
/// half. Ratios such as ln(λ/M)/ln λ climb towards their limit, so the
/// whole-grid slope is not the right test here.
fn bounded(all: &Trend, tail: &Trend) -> bool {
    all.max_over_min < MAX_SPREAD && tail.non_growing()
}

pub const DEFAULT_LEVEL: f64 = 1.0;

pub fn morse_case_check(sign: MorseSign, grid: &[f64], level: f64, cfg: &QuadConfig) -> Result<MorseVerdict> {
    if !(level > 0.0) || !level.is_finite() {
        return Err(Error::InvalidArgument(format!("M must be positive, got {level}")));
    }
    if grid.len() < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: grid.len() });
    }
    if let Some(&l) = grid.iter().find(|&&l| !(l >= 2.0)) {
        return Err(Error::InvalidArgument(format!("λ must be ≥ 2, got {l}")));
    }
    let f = parse_phase(match sign {
        MorseSign::Plus => "x^2 + y^2",
        MorseSign::Minus => "x^2 - y^2",
    })?;
    let psi = Amplitude::IndicatorSquare { radius: cfg.domain.rho };
    let scfg = SublevelConfig { execution: cfg.execution, ..SublevelConfig::default() };
    let rows = map_ordered(cfg.execution, grid, |&lambda| -> Result<MorseRow> {
        let inner = sublevel_measure_with(&f, cfg.domain, level / lambda, &scfg)?.measure;
        let outer = integrate_envelope_restricted(&f, &psi, lambda, level, cfg)?.value;
        Ok(MorseRow::new(sign, lambda, inner, outer))
    });
    MorseVerdict::from_rows(sign, level, rows.into_iter().collect::<Result<Vec<_>>>()?)
}

impl MorseRow {
    /// Fills in both ratios from the measured values.
    pub fn new(sign: MorseSign, lambda: f64, inner_measure: f64, outer_envelope: f64) -> MorseRow {
        let ln = lambda.ln();
        let (inner_scale, outer_scale) = match sign {
            MorseSign::Plus => (1.0 / lambda, ln / lambda),
            MorseSign::Minus => (ln / lambda, ln * ln / lambda),
        };
        MorseRow {
            lambda,
            inner_measure,
            inner_ratio: inner_measure / inner_scale,
            outer_envelope,
            outer_ratio: outer_envelope / outer_scale,
        }
    }
}

impl MorseVerdict {
    pub fn from_rows(sign: MorseSign, level: f64, rows: Vec<MorseRow>) -> Result<MorseVerdict> {
        if rows.len() < 2 {
            return Err(Error::TooFewSamples { needed: 2, got: rows.len() });
        }
        let inner_pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.lambda, r.inner_ratio)).collect();
        let outer_pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.lambda, r.outer_ratio)).collect();
        let half = (rows.len() / 2).min(rows.len() - 2);
        let (inner, inner_tail) = (Trend::of(&inner_pts)?, Trend::of(&inner_pts[half..])?);
        let (outer, outer_tail) = (Trend::of(&outer_pts)?, Trend::of(&outer_pts[half..])?);
        let pass = bounded(&inner, &inner_tail) && bounded(&outer, &outer_tail);
        Ok(MorseVerdict { pass, sign, level, rows, inner, outer, inner_tail, outer_tail })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decay_lab::geometric_grid;
    use std::f64::consts::PI;

    #[test]
    fn disk_measure_is_pi_over_lambda() {
        let grid = geometric_grid(10.0, 1e4, 4).unwrap();
        let v = morse_case_check(MorseSign::Plus, &grid, 1.0, &QuadConfig::default()).unwrap();
        for r in &v.rows {
            assert!((r.inner_ratio - PI).abs() < 1e-9, "{r:?}");
        }
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn saddle_passes() {
        let grid = geometric_grid(4.0, 1e4, 6).unwrap();
        let v = morse_case_check(MorseSign::Minus, &grid, 1.0, &QuadConfig::default()).unwrap();
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn rejects_bad_sign() {
        assert!("*".parse::<MorseSign>().is_err());
    }
}
