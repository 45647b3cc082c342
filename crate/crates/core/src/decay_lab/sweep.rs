//! λ-sweeps of the oscillatory integral and the ratio test against the
//! bound C·λ^{−1/h}·ln^{m'}λ.

use super::fit::{fit_decay, DecayFit};
use super::bound_log_power;
use crate::error::{Error, Result};
use crate::integrator::{integrate_ml, QuadConfig};
use crate::ml_special::MLParams;
use crate::par::map_ordered;
use crate::phase_algebra::{rational_to_f64, Amplitude, PolynomialPhase, Rational};
use num_traits::One;

/// n points from `min` to `max`, equally spaced in ln.
pub fn geometric_grid(min: f64, max: f64, n: usize) -> Result<Vec<f64>> {
    if !(min > 0.0) || !max.is_finite() || max < min || n == 0 {
        return Err(Error::InvalidArgument(format!("bad geometric grid [{min}, {max}] with {n} points")));
    }
    if n == 1 {
        return Ok(vec![min]);
    }
    let step = (max / min).ln() / (n - 1) as f64;
    Ok((0..n).map(|i| if i + 1 == n { max } else { min * (step * i as f64).exp() }).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremBranch {
    /// h > 1: bound λ^{−1/h}·ln^m λ.
    HeightAboveOne,
    /// h = 1: bound λ^{−1}·ln²λ.
    HeightOne,
}

impl std::fmt::Display for TheoremBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TheoremBranch::HeightAboveOne => "h>1",
            TheoremBranch::HeightOne => "h=1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecaySample {
    pub lambda: f64,
    pub abs_value: f64,
    pub error_estimate: f64,
    /// abs_value·λ^{1/h}/ln^{m'}λ.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport {
    pub samples: Vec<DecaySample>,
    /// Samples whose quadrature missed its tolerance, kept out of the fit.
    pub excluded: Vec<DecaySample>,
    /// `None` when there are fewer than 8 usable samples.
    pub fit: Option<DecayFit>,
    pub bound_ratio_max: f64,
    pub h_used: Rational,
    pub m_used: u8,
    pub theorem_branch: TheoremBranch,
}

pub fn bound_ratio(abs_value: f64, lambda: f64, h: &Rational, log_power: u32) -> f64 {
    abs_value * lambda.powf(1.0 / rational_to_f64(h)) / lambda.ln().powi(log_power as i32)
}

impl DecayReport {
    /// Ratios, maximum and fit from (λ, |I|, error) triples.
    pub fn from_values(values: &[(f64, f64, f64)], excluded: &[(f64, f64, f64)], h: &Rational, m: u8) -> Result<DecayReport> {
        if *h < Rational::one() {
            return Err(Error::InvalidArgument(format!("height must be ≥ 1, got {h}")));
        }
        let lp = bound_log_power(h, m);
        let make = |&(lambda, abs_value, error_estimate): &(f64, f64, f64)| -> Result<DecaySample> {
            if !(lambda >= 2.0) {
                return Err(Error::InvalidArgument(format!("sweep needs λ ≥ 2, got {lambda}")));
            }
            Ok(DecaySample { lambda, abs_value, error_estimate, ratio: bound_ratio(abs_value, lambda, h, lp) })
        };
        let samples = values.iter().map(make).collect::<Result<Vec<_>>>()?;
        let excluded = excluded.iter().map(make).collect::<Result<Vec<_>>>()?;
        let pairs: Vec<(f64, f64)> = samples.iter().map(|s| (s.lambda, s.abs_value)).collect();
        let fit = match fit_decay(&pairs) {
            Ok(f) => Some(f),
            Err(Error::TooFewSamples { .. }) => None,
            Err(e) => return Err(e),
        };
        let bound_ratio_max = samples.iter().map(|s| s.ratio).fold(0.0, f64::max);
        let theorem_branch = if *h > Rational::one() { TheoremBranch::HeightAboveOne } else { TheoremBranch::HeightOne };
        Ok(DecayReport { samples, excluded, fit, bound_ratio_max, h_used: h.clone(), m_used: m, theorem_branch })
    }

    pub fn log_power(&self) -> u32 {
        bound_log_power(&self.h_used, self.m_used)
    }
}

/// |I_{α,β}(λ)| over the grid, with h and m from the Newton polyhedron.
pub fn lambda_sweep(
    f: &PolynomialPhase,
    psi: &Amplitude,
    params: MLParams,
    grid: &[f64],
    h: &Rational,
    m: u8,
    cfg: &QuadConfig,
) -> Result<DecayReport> {
    if let Some(&l) = grid.iter().find(|&&l| !(l >= 2.0)) {
        return Err(Error::InvalidArgument(format!("sweep needs λ ≥ 2, got {l}")));
    }
    let results = map_ordered(cfg.execution, grid, |&l| integrate_ml(f, psi, params, l, cfg));
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for (r, &l) in results.into_iter().zip(grid) {
        let r = r?;
        let row = (l, r.value.norm(), r.abs_error_estimate);
        if r.tolerance_met {
            kept.push(row);
        } else {
            dropped.push(row);
        }
    }
    DecayReport::from_values(&kept, &dropped, h, m)
}

/// Growth of a positive sequence along a λ-grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trend {
    /// Least-squares slope of log10(ratio) against log10(λ).
    pub slope_per_decade: f64,
    pub max_over_min: f64,
    pub max: f64,
}

pub const MAX_SLOPE_PER_DECADE: f64 = 0.05;
pub const MAX_SPREAD: f64 = 20.0;

impl Trend {
    pub fn of(points: &[(f64, f64)]) -> Result<Trend> {
        if points.len() < 2 {
            return Err(Error::TooFewSamples { needed: 2, got: points.len() });
        }
        if points.iter().any(|&(l, r)| !(l > 0.0) || !(r > 0.0) || !r.is_finite()) {
            return Err(Error::InvalidArgument("trend needs positive λ and ratios".into()));
        }
        let n = points.len() as f64;
        let xs: Vec<f64> = points.iter().map(|p| p.0.log10()).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.1.log10()).collect();
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        if sxx == 0.0 {
            return Err(Error::SingularDesign);
        }
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let max = points.iter().map(|p| p.1).fold(0.0, f64::max);
        let min = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        Ok(Trend { slope_per_decade: sxy / sxx, max_over_min: max / min, max })
    }

    pub fn non_growing(&self) -> bool {
        self.slope_per_decade <= MAX_SLOPE_PER_DECADE
    }

    /// Non-growing and confined to a band of width 20.
    pub fn bounded(&self) -> bool {
        self.non_growing() && self.max_over_min < MAX_SPREAD
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremVerdict {
    pub pass: bool,
    pub branch: TheoremBranch,
    pub log_power: u32,
    pub bound_ratio_max: f64,
    pub trend: Trend,
    /// On the h = 1 branch, the same test against the single-log bound
    /// λ^{−1}·ln λ.
    pub sharper: Option<Trend>,
}

/// PASS iff the ratio to the bound is non-growing.
pub fn verify_theorem1(report: &DecayReport) -> Result<TheoremVerdict> {
    let pts: Vec<(f64, f64)> = report.samples.iter().map(|s| (s.lambda, s.ratio)).collect();
    let trend = Trend::of(&pts)?;
    let sharper = match report.theorem_branch {
        TheoremBranch::HeightOne => {
            let pts: Vec<(f64, f64)> = report.samples.iter().map(|s| (s.lambda, bound_ratio(s.abs_value, s.lambda, &report.h_used, 1))).collect();
            Some(Trend::of(&pts)?)
        }
        TheoremBranch::HeightAboveOne => None,
    };
    Ok(TheoremVerdict {
        pass: trend.non_growing(),
        branch: report.theorem_branch,
        log_power: report.log_power(),
        bound_ratio_max: report.bound_ratio_max,
        trend,
        sharper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn grid_end_points_are_exact() {
        let g = geometric_grid(4.0, 16384.0, 13).unwrap();
        assert_eq!(g[0], 4.0);
        assert_eq!(g[12], 16384.0);
        assert!((g[6] - 256.0).abs() < 1e-9);
        assert!(geometric_grid(4.0, 2.0, 3).is_err());
    }

    #[test]
    fn synthetic_log_growth_fails() {
        let h = q(2, 1);
        let vals: Vec<_> = geometric_grid(4.0, 1.6e4, 12)
            .unwrap()
            .into_iter()
            .map(|l| (l, l.powf(-0.5) * l.ln().powi(3), 0.0))
            .collect();
        let r = DecayReport::from_values(&vals, &[], &h, 1).unwrap();
        assert!(!verify_theorem1(&r).unwrap().pass);
        let vals: Vec<_> = vals.iter().map(|&(l, _, e)| (l, 5.0 * l.powf(-0.5) * l.ln(), e)).collect();
        let r = DecayReport::from_values(&vals, &[], &h, 1).unwrap();
        let v = verify_theorem1(&r).unwrap();
        assert!(v.pass && v.trend.slope_per_decade.abs() < 1e-12 && v.sharper.is_none());
        assert!((r.fit.unwrap().p - 0.5).abs() < 1e-6);
    }

    #[test]
    fn height_one_uses_squared_log() {
        let vals: Vec<_> = geometric_grid(4.0, 1e4, 8).unwrap().into_iter().map(|l| (l, l.ln() / l, 0.0)).collect();
        let r = DecayReport::from_values(&vals, &[], &q(1, 1), 0).unwrap();
        assert_eq!(r.theorem_branch, TheoremBranch::HeightOne);
        assert_eq!(r.log_power(), 2);
        let v = verify_theorem1(&r).unwrap();
        assert!(v.pass && v.sharper.unwrap().slope_per_decade.abs() < 1e-12);
    }

    #[test]
    fn single_sample_report_has_no_fit() {
        let r = DecayReport::from_values(&[(4.0, 0.3, 0.0)], &[], &q(1, 1), 0).unwrap();
        assert_eq!(r.samples.len(), 1);
        assert!(r.fit.is_none());
        assert!(DecayReport::from_values(&[(1.0, 0.3, 0.0)], &[], &q(1, 1), 0).is_err());
    }
}
