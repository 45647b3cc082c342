//! Oscillatory integrals I(λ) = ∫ K(λf(x)) ψ(x) dx over the working square,
//! for K = E_{α,β}(i·), K = e^{i·}, and the non-oscillatory envelope
//! K = 1/(1+|·|), plus the dyadic majorant of the envelope.
//!
//! Tolerances are relative to ∫|Kψ|, the scale below which oscillatory
//! cancellation cannot be resolved anyway.

mod dyadic;
mod line;
mod plane;
mod rules;
mod upoly;

pub use dyadic::{dyadic_envelope_bound, dyadic_levels_needed, DyadicBound};

pub(crate) use rules::adaptive_real;
pub(crate) use upoly::UPoly;

use crate::error::{Error, Result};
use crate::ml_special::{ImaginaryAxisKernel, MLParams};
use crate::par::Execution;
use crate::phase_algebra::{Amplitude, PolynomialPhase, WorkingDomain};
use line::LineKernel;
use num_complex::Complex64;
use plane::PlaneProblem;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    /// In [1e-10, 1e-2].
    pub rel_tol: f64,
    /// Cap on 1D rule applications over all lines.
    pub max_cells: usize,
    /// At least 4.
    pub points_per_wavelength: f64,
    /// Kronrod points per panel: 15, 21 or 31.
    pub rule_order: usize,
    pub domain: WorkingDomain,
    pub execution: Execution,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            rel_tol: 1e-6,
            max_cells: 20_000_000,
            points_per_wavelength: 8.0,
            rule_order: 21,
            domain: WorkingDomain::default(),
            execution: Execution::default(),
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1e-10..=1e-2).contains(&self.rel_tol) {
            return Err(Error::InvalidArgument(format!("rel_tol {:e} outside [1e-10, 1e-2]", self.rel_tol)));
        }
        if !(self.points_per_wavelength >= 4.0) || !self.points_per_wavelength.is_finite() {
            return Err(Error::InvalidArgument("points_per_wavelength must be ≥ 4".into()));
        }
        if self.max_cells == 0 {
            return Err(Error::InvalidArgument("max_cells must be positive".into()));
        }
        if !matches!(self.rule_order, 15 | 21 | 31) {
            return Err(Error::InvalidArgument(format!("rule_order must be 15, 21 or 31, got {}", self.rule_order)));
        }
        WorkingDomain::new(self.domain.rho)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub cells_used: usize,
    pub lambda: f64,
    /// False when the cell budget ran out first; `value` is then the best
    /// estimate reached.
    pub tolerance_met: bool,
    /// ∫|Kψ|, the scale the tolerance refers to.
    pub l1_norm: f64,
}

/// Real-valued counterpart for the envelope integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub cells_used: usize,
    pub lambda: f64,
    pub tolerance_met: bool,
}

impl LineKernel for ImaginaryAxisKernel {
    #[inline]
    fn eval(&self, s: f64) -> Complex64 {
        ImaginaryAxisKernel::eval(self, s)
    }
    fn frequency(&self, s_lo: f64, s_hi: f64) -> f64 {
        ImaginaryAxisKernel::frequency(self, s_lo, s_hi)
    }
    fn breakpoints(&self) -> &[f64] {
        &[]
    }
}

/// 1/(1+|s|), zeroed on |s| < threshold.
struct EnvelopeKernel {
    threshold: f64,
    breaks: Vec<f64>,
}

impl EnvelopeKernel {
    fn new(threshold: f64) -> Self {
        let breaks = if threshold > 0.0 { vec![-threshold, threshold] } else { vec![0.0] };
        EnvelopeKernel { threshold, breaks }
    }
}

impl LineKernel for EnvelopeKernel {
    #[inline]
    fn eval(&self, s: f64) -> Complex64 {
        let a = s.abs();
        if a < self.threshold {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(1.0 / (1.0 + a), 0.0)
        }
    }
    fn frequency(&self, s_lo: f64, _: f64) -> f64 {
        1.0 / (1.0 + s_lo)
    }
    fn breakpoints(&self) -> &[f64] {
        &self.breaks
    }
}

fn check_inputs(psi: &Amplitude, lambda: f64, cfg: &QuadConfig) -> Result<()> {
    cfg.validate()?;
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!("lambda must be finite and ≥ 0, got {lambda}")));
    }
    psi.check_domain(cfg.domain)
}

pub(crate) fn integrate_with_kernel(
    f: &PolynomialPhase,
    psi: &Amplitude,
    kernel: &ImaginaryAxisKernel,
    lambda: f64,
    cfg: &QuadConfig,
) -> Result<QuadratureResult> {
    check_inputs(psi, lambda, cfg)?;
    PlaneProblem { f, psi, kernel, lambda, abs_amplitude: false }.integrate(cfg)
}

/// ∫ E_{α,β}(iλf(x)) ψ(x) dx.
pub fn integrate_ml(f: &PolynomialPhase, psi: &Amplitude, params: MLParams, lambda: f64, cfg: &QuadConfig) -> Result<QuadratureResult> {
    check_inputs(psi, lambda, cfg)?;
    let kernel = ImaginaryAxisKernel::new(params)?;
    integrate_with_kernel(f, psi, &kernel, lambda, cfg)
}

/// ∫ e^{iλf(x)} ψ(x) dx.
pub fn integrate_classical(f: &PolynomialPhase, psi: &Amplitude, lambda: f64, cfg: &QuadConfig) -> Result<QuadratureResult> {
    integrate_ml(f, psi, MLParams::EXPONENTIAL, lambda, cfg)
}

fn envelope(f: &PolynomialPhase, psi: &Amplitude, lambda: f64, threshold: f64, cfg: &QuadConfig) -> Result<EnvelopeResult> {
    check_inputs(psi, lambda, cfg)?;
    let kernel = EnvelopeKernel::new(threshold);
    let r = PlaneProblem { f, psi, kernel: &kernel, lambda, abs_amplitude: true }.integrate(cfg)?;
    Ok(EnvelopeResult {
        value: r.value.re,
        abs_error_estimate: r.abs_error_estimate,
        cells_used: r.cells_used,
        lambda,
        tolerance_met: r.tolerance_met,
    })
}

/// ∫ |ψ(x)| / (1 + λ|f(x)|) dx.
pub fn integrate_envelope(f: &PolynomialPhase, psi: &Amplitude, lambda: f64, cfg: &QuadConfig) -> Result<EnvelopeResult> {
    envelope(f, psi, lambda, 0.0, cfg)
}

/// The envelope integral over {λ|f| ≥ m} only.
pub fn integrate_envelope_restricted(
    f: &PolynomialPhase,
    psi: &Amplitude,
    lambda: f64,
    m: f64,
    cfg: &QuadConfig,
) -> Result<EnvelopeResult> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::InvalidArgument(format!("restriction level must be positive, got {m}")));
    }
    envelope(f, psi, lambda, m, cfg)
}
