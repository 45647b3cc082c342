//! ε-sweeps of the sublevel measure against ε^δ·|ln ε|^m.

use super::fit::{fit_decay, DecayFit};
use super::sublevel::{sublevel_measure_with, SublevelConfig};
use super::sweep::Trend;
use crate::error::{Error, Result};
use crate::par::map_ordered;
use crate::phase_algebra::{rational_to_f64, PolynomialPhase, Rational, WorkingDomain};
use num_traits::One;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// δ < 1: measure ≲ ε^δ|ln ε|^m.
    DeltaBelowOne,
    /// δ = 1: measure ≲ ε|ln ε|^{m+1}.
    DeltaOne,
    /// δ > 1: measure ≲ ε.
    DeltaAboveOne,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::DeltaBelowOne => "delta<1",
            Regime::DeltaOne => "delta=1",
            Regime::DeltaAboveOne => "delta>1",
        })
    }
}

impl Regime {
    pub fn of_height(h: &Rational) -> Regime {
        // δ = 1/h
        match h.cmp(&Rational::one()) {
            std::cmp::Ordering::Greater => Regime::DeltaBelowOne,
            std::cmp::Ordering::Equal => Regime::DeltaOne,
            std::cmp::Ordering::Less => Regime::DeltaAboveOne,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SublevelSample {
    pub epsilon: f64,
    pub measure: f64,
    pub measure_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SublevelFit {
    pub delta: f64,
    pub log_power: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SublevelReport {
    pub samples: Vec<SublevelSample>,
    /// `None` when fewer than 8 samples have ε ≤ 1/2 and positive measure.
    pub fitted: Option<SublevelFit>,
    pub regime: Regime,
    pub delta: f64,
    pub m: u8,
}

impl SublevelReport {
    /// Fits measure ≈ C·ε^δ·(ln 1/ε)^q, the λ-fit with λ = 1/ε.
    pub fn from_samples(samples: Vec<SublevelSample>, h: &Rational, m: u8) -> Result<SublevelReport> {
        if !(*h > Rational::from_integer(0.into())) {
            return Err(Error::InvalidArgument(format!("height must be positive, got {h}")));
        }
        let pairs: Vec<(f64, f64)> =
            samples.iter().filter(|s| s.epsilon <= MAX_FIT_EPSILON && s.measure > 0.0).map(|s| (1.0 / s.epsilon, s.measure)).collect();
        let fitted = match fit_decay(&pairs) {
            Ok(DecayFit { p, q, residual, .. }) => Some(SublevelFit { delta: p, log_power: q, residual }),
            Err(Error::TooFewSamples { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(SublevelReport { samples, fitted, regime: Regime::of_height(h), delta: 1.0 / rational_to_f64(h), m })
    }
}

/// Largest ε the bound comparison and the fit look at, so ln(1/ε) > 0.
pub const MAX_FIT_EPSILON: f64 = 0.5;

/// Allowed gap between the fitted δ and 1/h when δ < 1.
pub const DELTA_TOLERANCE: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct SublevelVerdict {
    /// `None` when fewer than two samples have ε ≤ 1/2.
    pub pass: Option<bool>,
    pub regime: Regime,
    /// Power of ln(1/ε) in the bound.
    pub log_power: u32,
    /// measure/(ε^δ ln^{log_power}(1/ε)) against 1/ε.
    pub trend: Option<Trend>,
    /// |fitted δ − 1/h| ≤ 0.1, checked for δ < 1 only.
    pub delta_consistent: Option<bool>,
}

impl SublevelReport {
    pub fn log_power(&self) -> u32 {
        match self.regime {
            Regime::DeltaBelowOne => u32::from(self.m),
            Regime::DeltaOne => u32::from(self.m) + 1,
            Regime::DeltaAboveOne => 0,
        }
    }

    /// PASS iff measure over the regime's bound does not grow as ε → 0 and,
    /// for δ < 1, the fitted exponent sits within 0.1 of δ.
    pub fn verdict(&self) -> Result<SublevelVerdict> {
        let q = self.log_power();
        let pts: Vec<(f64, f64)> = self
            .samples
            .iter()
            .filter(|s| s.epsilon <= MAX_FIT_EPSILON && s.measure > 0.0)
            .map(|s| (1.0 / s.epsilon, s.measure / (s.epsilon.powf(self.delta) * (1.0 / s.epsilon).ln().powi(q as i32))))
            .collect();
        let trend = if pts.len() >= 2 { Some(Trend::of(&pts)?) } else { None };
        let delta_consistent = match (self.regime, &self.fitted) {
            (Regime::DeltaBelowOne, Some(fit)) => Some((fit.delta - self.delta).abs() <= DELTA_TOLERANCE),
            _ => None,
        };
        let pass = trend.map(|t| t.non_growing() && delta_consistent.unwrap_or(true));
        Ok(SublevelVerdict { pass, regime: self.regime, log_power: q, trend, delta_consistent })
    }
}

pub fn epsilon_sweep(
    f: &PolynomialPhase,
    domain: WorkingDomain,
    grid: &[f64],
    h: &Rational,
    m: u8,
    cfg: &SublevelConfig,
) -> Result<SublevelReport> {
    let measures = map_ordered(cfg.execution, grid, |&e| sublevel_measure_with(f, domain, e, cfg));
    let mut samples = Vec::with_capacity(grid.len());
    for (r, &epsilon) in measures.into_iter().zip(grid) {
        let r = r?;
        samples.push(SublevelSample { epsilon, measure: r.measure, measure_error: r.error });
    }
    SublevelReport::from_samples(samples, h, m)
}
