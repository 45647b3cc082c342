//! Two-regressor log fit: ln y ≈ ln C − p·ln λ + q·ln ln λ.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

pub const MIN_FIT_SAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub p: f64,
    pub q: f64,
    pub ln_c: f64,
    /// Root-mean-square residual in ln y.
    pub residual: f64,
}

/// Least squares by QR on the design [1, ln λ, ln ln λ]. Needs at least 8
/// samples, all with λ ≥ 2 and y > 0.
pub fn fit_decay(samples: &[(f64, f64)]) -> Result<DecayFit> {
    if samples.len() < MIN_FIT_SAMPLES {
        return Err(Error::TooFewSamples { needed: MIN_FIT_SAMPLES, got: samples.len() });
    }
    for &(lambda, y) in samples {
        if !(lambda >= 2.0) || !lambda.is_finite() || !(y > 0.0) || !y.is_finite() {
            return Err(Error::InvalidArgument(format!("fit sample ({lambda}, {y}) needs λ ≥ 2 and a positive value")));
        }
    }
    let n = samples.len();
    let a = DMatrix::from_fn(n, 3, |i, j| {
        let l = samples[i].0.ln();
        [1.0, l, l.ln()][j]
    });
    let b = DVector::from_iterator(n, samples.iter().map(|s| s.1.ln()));
    let qr = a.clone().qr();
    let r = qr.r();
    let scale = r.diagonal().amax();
    if r.diagonal().iter().any(|d| d.abs() <= 1e-10 * scale) {
        return Err(Error::SingularDesign);
    }
    let qtb = qr.q().transpose() * &b;
    let x = r.solve_upper_triangular(&qtb).ok_or(Error::SingularDesign)?;
    let res = &a * &x - &b;
    Ok(DecayFit { ln_c: x[0], p: -x[1], q: x[2], residual: (res.norm_squared() / n as f64).sqrt() })
}
