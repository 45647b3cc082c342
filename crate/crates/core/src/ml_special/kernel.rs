//! Fast E_{α,β}(is) for real s, the only arguments the oscillatory integrals
//! need. Below the crossover a piecewise Chebyshev table built from
//! `ml_eval`; above it the algebraic expansion with precomputed 1/Γ(β−αk).

use super::expansion::asymptotic;
use super::gamma::{ln_gamma, rgamma};
use super::{ml_eval, MLParams};
use crate::error::Result;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

const CHEB_N: usize = 18;
const TABLE_TOL: f64 = 1e-13;
const MIN_WIDTH: f64 = 1.0 / 64.0;
const ALG_TERMS: usize = 200;

#[derive(Debug, Clone)]
struct Table {
    switch: f64,
    width: f64,
    pieces: Vec<[Complex64; CHEB_N]>,
    /// (1/Γ(β−αk), bound coefficient for the k-th term), k = 1..
    alg: Vec<(f64, f64)>,
    exp_weight: f64,
    exp_decay: f64,
    exp_freq: f64,
    exp_phase: Complex64,
}

/// s ↦ E_{α,β}(is).
#[derive(Debug, Clone)]
pub struct ImaginaryAxisKernel {
    params: MLParams,
    table: Option<Table>,
}

fn cheb_nodes() -> [f64; CHEB_N] {
    std::array::from_fn(|j| (PI * (j as f64 + 0.5) / CHEB_N as f64).cos())
}

fn cheb_fit(values: &[Complex64; CHEB_N]) -> [Complex64; CHEB_N] {
    let n = CHEB_N as f64;
    std::array::from_fn(|k| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, v) in values.iter().enumerate() {
            acc += v * (PI * k as f64 * (j as f64 + 0.5) / n).cos();
        }
        acc * if k == 0 { 1.0 / n } else { 2.0 / n }
    })
}

fn clenshaw(c: &[Complex64; CHEB_N], x: f64) -> Complex64 {
    let mut b1 = Complex64::new(0.0, 0.0);
    let mut b2 = Complex64::new(0.0, 0.0);
    for &ck in c[1..].iter().rev() {
        let b0 = ck + b1 * (2.0 * x) - b2;
        b2 = b1;
        b1 = b0;
    }
    c[0] + b1 * x - b2
}

impl Table {
    fn build(p: MLParams) -> Result<Table> {
        let (alpha, beta) = (p.alpha, p.beta);
        let mut switch = 0.5f64;
        while asymptotic(alpha, beta, Complex64::new(0.0, switch), 4e-16).is_none() {
            switch *= 1.02;
        }
        let alg = (1..=ALG_TERMS)
            .map(|k| {
                let kf = k as f64;
                let c = rgamma(beta - alpha * kf);
                let x = 1.0 - beta + alpha * kf;
                let env = if x > 0.0 { ln_gamma(x).exp() / PI } else { c.abs() };
                (c, env)
            })
            .collect();
        let on_edge = (alpha - 0.5).abs() < 1e-15;
        let exp_weight = if alpha > 0.5 && !on_edge { 1.0 } else if on_edge { 0.5 } else { 0.0 };
        let mut t = Table {
            switch,
            width: 1.0,
            pieces: Vec::new(),
            alg,
            exp_weight,
            exp_decay: if alpha == 1.0 { 0.0 } else { (FRAC_PI_2 / alpha).cos() },
            exp_freq: if alpha == 1.0 { 1.0 } else { (FRAC_PI_2 / alpha).sin() },
            exp_phase: Complex64::from_polar(1.0, (1.0 - beta) / alpha * FRAC_PI_2),
        };
        let nodes = cheb_nodes();
        let exact = |s: f64| ml_eval(p, Complex64::new(0.0, s), 1e-14);
        'widths: loop {
            let n = (switch / t.width).ceil() as usize;
            t.pieces.clear();
            for i in 0..n {
                let a = i as f64 * t.width;
                let mut vals = [Complex64::new(0.0, 0.0); CHEB_N];
                for (v, &x) in vals.iter_mut().zip(&nodes) {
                    *v = exact(a + 0.5 * t.width * (x + 1.0))?;
                }
                let c = cheb_fit(&vals);
                for probe in [-0.93, -0.41, 0.17, 0.66, 0.99] {
                    let e = exact(a + 0.5 * t.width * (probe + 1.0))?;
                    if (clenshaw(&c, probe) - e).norm() > TABLE_TOL * e.norm().max(0.1) && t.width > MIN_WIDTH {
                        t.width *= 0.5;
                        continue 'widths;
                    }
                }
                t.pieces.push(c);
            }
            return Ok(t);
        }
    }

    /// Modulus and variable phase of the exponential term; the constant
    /// phase (1−β)π/(2α) is applied separately so large s is not rounded.
    fn exp_term(&self, p: MLParams, s: f64) -> (f64, f64) {
        if self.exp_weight == 0.0 {
            return (0.0, 0.0);
        }
        let r = if p.alpha == 1.0 { s } else { s.powf(1.0 / p.alpha) };
        let mag = self.exp_weight / p.alpha * s.powf((1.0 - p.beta) / p.alpha) * (r * self.exp_decay).exp();
        (mag, r * self.exp_freq)
    }

    fn eval(&self, p: MLParams, s: f64) -> Complex64 {
        if s <= self.switch {
            let i = ((s / self.width) as usize).min(self.pieces.len() - 1);
            let x = 2.0 * (s - i as f64 * self.width) / self.width - 1.0;
            return clenshaw(&self.pieces[i], x);
        }
        let (mag, phase) = self.exp_term(p, s);
        let inv = 1.0 / s;
        let mut pw = 1.0;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut prev = f64::INFINITY;
        for (k, &(c, env)) in self.alg.iter().enumerate() {
            pw *= inv;
            let scale = sum.norm().max(mag);
            // the switch guarantees the bound dips below 1e-16 before it turns up
            if k >= 1 && (env * pw <= 1e-16 * scale || env * pw > prev) {
                break;
            }
            if env > 0.0 {
                prev = env * pw;
            }
            // −c (is)^{-k}, (−i)^k cycling
            let t = c * pw;
            sum -= match (k + 1) % 4 {
                1 => Complex64::new(0.0, -t),
                2 => Complex64::new(-t, 0.0),
                3 => Complex64::new(0.0, t),
                _ => Complex64::new(t, 0.0),
            };
        }
        if mag > 1e-18 * sum.norm() {
            sum += Complex64::from_polar(mag, phase) * self.exp_phase;
        }
        sum
    }
}

impl ImaginaryAxisKernel {
    pub fn new(params: MLParams) -> Result<Self> {
        params.validate()?;
        let table = if params.is_exponential() { None } else { Some(Table::build(params)?) };
        Ok(ImaginaryAxisKernel { params, table })
    }

    pub fn params(&self) -> MLParams {
        self.params
    }

    /// E_{α,β}(is).
    #[inline]
    pub fn eval(&self, s: f64) -> Complex64 {
        match &self.table {
            None => Complex64::new(s.cos(), s.sin()),
            Some(t) if s < 0.0 => t.eval(self.params, -s).conj(),
            Some(t) => t.eval(self.params, s),
        }
    }

    /// Upper bound on the local angular frequency of s ↦ E(is) for
    /// |s| ∈ [s_lo, s_hi], counting the algebraic part as 1/(1+|s|).
    pub fn frequency(&self, s_lo: f64, s_hi: f64) -> f64 {
        let Some(t) = &self.table else { return 1.0 };
        let mut w = 1.0 / (1.0 + s_lo);
        if t.exp_weight > 0.0 {
            let (mag, _) = t.exp_term(self.params, s_lo.max(1e-3));
            if mag > 1e-16 / (1.0 + s_lo) {
                let a = self.params.alpha;
                w = w.max(s_hi.max(1.0).powf(1.0 / a - 1.0) * t.exp_freq / a);
            }
        }
        if s_lo < t.switch {
            w = w.max(1.0 / (1.0 + s_lo).min(t.switch));
        }
        w
    }
}
