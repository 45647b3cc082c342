//! Two-parameter Mittag-Leffler function E_{α,β}(z) = Σ z^k / Γ(αk+β).
//!
//! `ml_eval` picks between the power series (summed in double-double so the
//! alternating terms near |z|^{1/α} ≈ 30 still cancel cleanly) and the
//! algebraic expansion −Σ z^{-k}/Γ(β−αk) plus the exponential term when
//! |arg z| < απ. The switch is decided by the expansion's own truncation
//! envelope rather than a fixed radius.

mod dd;
mod expansion;
pub mod gamma;
mod kernel;

pub use kernel::ImaginaryAxisKernel;

pub(crate) use expansion::{asymptotic, series_dd, SeriesCoefficients};

use crate::error::{Error, Result};
use num_complex::Complex64;

pub type ComplexValue = Complex64;

/// (α, β) with 0 < α ≤ 1 and β > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    pub alpha: f64,
    pub beta: f64,
}

impl MLParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let p = MLParams { alpha, beta };
        p.validate()?;
        Ok(p)
    }

    /// The classical kernel E_{1,1}(z) = e^z.
    pub const EXPONENTIAL: MLParams = MLParams { alpha: 1.0, beta: 1.0 };

    pub fn validate(&self) -> Result<()> {
        let ok = self.alpha.is_finite()
            && self.beta.is_finite()
            && self.alpha > 0.0
            && self.alpha <= 1.0
            && self.beta > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedParams { alpha: self.alpha, beta: self.beta })
        }
    }

    pub fn is_exponential(&self) -> bool {
        self.alpha == 1.0 && self.beta == 1.0
    }
}

fn finite(z: Complex64, what: &'static str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Partial sum Σ_{k<n} z^k/Γ(αk+β) in plain `f64`, ascending k.
pub fn ml_series(params: MLParams, z: ComplexValue, n_terms: usize) -> Result<ComplexValue> {
    if n_terms == 0 {
        return Err(Error::InvalidArgument("n_terms must be ≥ 1".into()));
    }
    if params.alpha <= 0.0 || params.beta <= 0.0 || !params.alpha.is_finite() || !params.beta.is_finite() {
        return Err(Error::UnsupportedParams { alpha: params.alpha, beta: params.beta });
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    for k in 0..n_terms {
        let x = params.alpha * k as f64 + params.beta;
        let term = if x < 170.0 {
            zk * gamma::rgamma(x)
        } else if zk.re == 0.0 && zk.im == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            (z.ln() * k as f64 - gamma::ln_gamma(x)).exp()
        };
        if !(zk.re.is_finite() && zk.im.is_finite()) || !(term.re.is_finite() && term.im.is_finite()) {
            return Err(Error::SeriesOverflow);
        }
        sum += term;
        zk *= z;
    }
    if sum.re.is_finite() && sum.im.is_finite() {
        Ok(sum)
    } else {
        Err(Error::SeriesOverflow)
    }
}

pub const MIN_TOL: f64 = 1e-14;
pub const MAX_TOL: f64 = 1e-6;

/// E_{α,β}(z) to relative accuracy `tol` ∈ [1e-14, 1e-6].
///
/// Near the series/expansion crossover (|z|^{1/α} ≈ 35) double-double leaves
/// about 1e-14 relative, so the smallest tolerances are best effort there.
pub fn ml_eval(params: MLParams, z: ComplexValue, tol: f64) -> Result<ComplexValue> {
    params.validate()?;
    if !(MIN_TOL..=MAX_TOL).contains(&tol) {
        return Err(Error::InvalidArgument(format!("tol {tol:e} outside [1e-14, 1e-6]")));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidArgument("non-finite argument".into()));
    }
    // kernel arguments iλf of the classical integral
    if params.is_exponential() && z.re == 0.0 {
        return finite(z.exp(), "exp(z)");
    }
    if let Some(a) = asymptotic(params.alpha, params.beta, z, tol) {
        return finite(a.value, "asymptotic expansion");
    }
    let mut coefs = SeriesCoefficients::new(params.alpha, params.beta);
    finite(series_dd(&mut coefs, z).value, "power series")
}

/// |E_{α,β}(it)|·(1+|t|), bounded in t whenever the imaginary axis lies in
/// the algebraic-decay sector, i.e. for α < 1.
pub fn ml_bound_ratio(params: MLParams, t: f64) -> Result<f64> {
    params.validate()?;
    if params.alpha >= 1.0 {
        return Err(Error::SectorViolated { alpha: params.alpha });
    }
    if !t.is_finite() {
        return Err(Error::InvalidArgument("non-finite t".into()));
    }
    let e = ml_eval(params, Complex64::new(0.0, t), 1e-12)?;
    Ok(e.norm() * (1.0 + t.abs()))
}
