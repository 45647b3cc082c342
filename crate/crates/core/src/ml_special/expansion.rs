//! The two evaluation branches behind `ml_eval`: the defining power series
//! summed in double-double, and the large-argument algebraic expansion with
//! its exponential companion term.

use super::dd::{Dd, DdComplex};
use super::gamma::{ln_gamma, rgamma};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Cached ln Γ(αk+β) in double-double, extended on demand.
pub(crate) struct SeriesCoefficients {
    alpha: f64,
    beta: f64,
    ln_gamma: Vec<Dd>,
}

impl SeriesCoefficients {
    pub fn new(alpha: f64, beta: f64) -> Self {
        SeriesCoefficients { alpha, beta, ln_gamma: Vec::new() }
    }

    fn get(&mut self, k: usize) -> Dd {
        while self.ln_gamma.len() <= k {
            let j = self.ln_gamma.len() as f64;
            // α·k + β held exactly
            let x = Dd::from_prod(self.alpha, j) + Dd::new(self.beta);
            self.ln_gamma.push(super::gamma::ln_gamma_dd(x));
        }
        self.ln_gamma[k]
    }
}

pub(crate) struct SeriesSum {
    pub value: Complex64,
    /// Largest |term| met. Terms come from exp of a double-double exponent, so
    /// each carries ~1e-30 relative error and the sum loses about max_term·1e-30.
    #[cfg_attr(not(test), allow(dead_code))]
    pub max_term: f64,
}

const SERIES_MAX_TERMS: usize = 50_000;

/// Σ z^k / Γ(αk+β) in double-double, terms formed as exp(k ln|z| − ln Γ)·(z/|z|)^k.
pub(crate) fn series_dd(coefs: &mut SeriesCoefficients, z: Complex64) -> SeriesSum {
    if z.re == 0.0 && z.im == 0.0 {
        return SeriesSum { value: Complex64::new(rgamma(coefs.beta), 0.0), max_term: 0.0 };
    }
    let r2 = Dd::from_prod(z.re, z.re) + Dd::from_prod(z.im, z.im);
    let r = r2.sqrt();
    let ln_r = r2.ln().mul_f64(0.5);
    let unit = DdComplex { re: Dd::new(z.re) / r, im: Dd::new(z.im) / r };
    let mut uk = DdComplex { re: Dd::ONE, im: Dd::ZERO };
    let mut sum = DdComplex::default();
    let mut max_mag = 0.0f64;
    let mut prev = f64::INFINITY;
    let mut k = 0;
    loop {
        let mag = (ln_r.mul_f64(k as f64) - coefs.get(k)).exp();
        sum = sum + uk.scale(mag);
        max_mag = max_mag.max(mag.hi);
        let size = sum.re.to_f64().hypot(sum.im.to_f64()).max(max_mag);
        if k > 0 && mag.hi < prev && mag.hi <= 1.9e-34 * size {
            break;
        }
        if k >= SERIES_MAX_TERMS {
            break;
        }
        prev = mag.hi;
        uk = uk * unit;
        k += 1;
    }
    SeriesSum {
        value: Complex64::new(sum.re.to_f64(), sum.im.to_f64()),
        max_term: max_mag,
    }
}

/// Weight of the exponential term (1/α) z^{(1-β)/α} exp(z^{1/α}): present
/// for |arg z| < απ, halved on the ray |arg z| = απ where the pole meets the cut.
pub(crate) fn exponential_weight(alpha: f64, z: Complex64) -> f64 {
    let a = z.arg().abs();
    let edge = alpha * PI;
    if a < edge - 1e-12 {
        1.0
    } else if a <= edge + 1e-12 {
        0.5
    } else {
        0.0
    }
}

pub(crate) fn exponential_term(alpha: f64, beta: f64, z: Complex64) -> Complex64 {
    let w = exponential_weight(alpha, z);
    if w == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let ln_z = z.ln();
    let s = (ln_z / alpha).exp();
    ((ln_z * ((1.0 - beta) / alpha)) + s).exp() * (w / alpha)
}

pub(crate) struct Asymptotic {
    pub value: Complex64,
}

const ASYMPTOTIC_MAX_TERMS: usize = 400;

/// Large-|z| expansion E ≈ [exp term] − Σ_{k≥1} z^{-k}/Γ(β−αk), truncated at
/// the first term whose envelope Γ(αk+1−β)/(π|z|^k) drops under tol·|E|/4.
/// `None` when the envelope turns upward before that (|z| too small).
pub(crate) fn asymptotic(alpha: f64, beta: f64, z: Complex64, tol: f64) -> Option<Asymptotic> {
    let modulus = z.norm();
    if !(modulus >= 1.0) {
        return None;
    }
    let exp_term = exponential_term(alpha, beta, z);
    if !exp_term.re.is_finite() || !exp_term.im.is_finite() {
        return None;
    }
    let ln_mod = modulus.ln();
    let inv = z.inv();
    let mut pw = inv;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut prev_env = f64::INFINITY;
    for k in 1..=ASYMPTOTIC_MAX_TERMS {
        let kf = k as f64;
        let c = rgamma(beta - alpha * kf);
        let x = 1.0 - beta + alpha * kf;
        let env = if x > 0.0 {
            (ln_gamma(x) - kf * ln_mod).exp() / PI
        } else {
            c.abs() * (-kf * ln_mod).exp()
        };
        let scale = (sum + exp_term).norm();
        if k >= 2 && env <= 0.25 * tol * scale {
            return Some(Asymptotic { value: sum + exp_term });
        }
        if x > 0.0 && env > prev_env {
            return None;
        }
        if x > 0.0 {
            prev_env = env;
        }
        sum -= pw * c;
        pw *= inv;
    }
    None
}
