//! Dyadic majorant of the envelope integral over {λ|f| ≥ 1}.
//!
//! On A_k = {2^k ≤ λ|f| ≤ 2^{k+1}} the envelope integrand is at most
//! 2^{−k}‖ψ‖∞, so Σ_k |A_k|·2^{−k}·‖ψ‖∞ dominates the restricted envelope.
//! |A_k| is taken from the upper and lower sublevel measures, so the sum
//! stays an upper bound despite the measures' error bars.

use super::QuadConfig;
use crate::decay_lab::{bound_log_power, sublevel_measure_with, SublevelConfig};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::par::map_ordered;
use crate::phase_algebra::{rational_to_f64, Amplitude, PolynomialPhase, Rational, WorkingDomain};

#[derive(Debug, Clone, PartialEq)]
pub struct DyadicBound {
    pub majorant: f64,
    /// majorant·λ^{1/h}/ln^{m'}λ, where m' = m for h > 1 and 2 for h = 1.
    /// `None` for λ < 2.
    pub ratio: Option<f64>,
    pub levels: u32,
    pub lambda: f64,
    /// Upper bound on |A_k| for k = 0..levels.
    pub shell_measures: Vec<f64>,
}

fn support_square(psi: &Amplitude, domain: WorkingDomain) -> Result<WorkingDomain> {
    WorkingDomain::new(psi.support_half_width(domain))
}

/// λ times an upper bound of |f| on the support square of ψ.
fn scaled_sup(f: &PolynomialPhase, psi: &Amplitude, lambda: f64, domain: WorkingDomain) -> Result<f64> {
    let r = support_square(psi, domain)?.rho;
    let side = Interval::new(-r, r);
    Ok(lambda * f.range_on_box(side, side).mag())
}

/// Smallest K with 2^K ≥ λ·sup|f| on the support square.
pub fn dyadic_levels_needed(f: &PolynomialPhase, psi: &Amplitude, lambda: f64, domain: WorkingDomain) -> Result<u32> {
    let needed = scaled_sup(f, psi, lambda, domain)?;
    Ok(if needed <= 1.0 { 0 } else { needed.log2().ceil() as u32 })
}

pub fn dyadic_envelope_bound(
    f: &PolynomialPhase,
    psi: &Amplitude,
    lambda: f64,
    h: &Rational,
    m: u8,
    levels: u32,
    cfg: &QuadConfig,
) -> Result<DyadicBound> {
    cfg.validate()?;
    psi.check_domain(cfg.domain)?;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!("lambda must be positive and finite, got {lambda}")));
    }
    let hf = rational_to_f64(h);
    if !(hf >= 1.0) {
        return Err(Error::InvalidArgument(format!("height must be ≥ 1, got {h}")));
    }
    let needed = scaled_sup(f, psi, lambda, cfg.domain)?;
    if levels > 1000 || 2f64.powi(levels as i32) < needed {
        return Err(Error::DyadicRange { needed, levels });
    }
    let square = support_square(psi, cfg.domain)?;
    let scfg = SublevelConfig { execution: cfg.execution, ..SublevelConfig::default() };
    let eps: Vec<f64> = (0..=levels).map(|k| 2f64.powi(k as i32) / lambda).collect();
    let measures = map_ordered(cfg.execution, &eps, |&e| sublevel_measure_with(f, square, e, &scfg));
    let measures = measures.into_iter().collect::<Result<Vec<_>>>()?;
    let sup = psi.sup_norm(cfg.domain);
    let mut majorant = 0.0;
    let mut shells = Vec::with_capacity(levels as usize);
    for k in 0..levels as usize {
        let shell = (measures[k + 1].upper() - measures[k].lower()).max(0.0);
        shells.push(shell);
        majorant += shell * 2f64.powi(-(k as i32)) * sup;
    }
    let ratio = (lambda >= 2.0).then(|| majorant * lambda.powf(1.0 / hf) / lambda.ln().powi(bound_log_power(h, m) as i32));
    Ok(DyadicBound { majorant, ratio, levels, lambda, shell_measures: shells })
}
