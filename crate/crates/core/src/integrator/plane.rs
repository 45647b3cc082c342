//! Iterated quadrature over the plane: an outer adaptive rule in θ (polar,
//! for radial amplitudes) or y (Cartesian), each node an adaptive line
//! integral. Outer panels are refined in rounds; node evaluations within a
//! round are independent and collected in order.

use super::line::{phase_budget, LineKernel, LineProblem, LineResult};
use super::rules::Rule;
use super::upoly::UPoly;
use super::{QuadConfig, QuadratureResult};
use crate::interval::Interval;
use crate::par::map_ordered;
use crate::phase_algebra::{eval_amplitude, Amplitude, PolynomialPhase};
use num_complex::Complex64;
use std::f64::consts::PI;

const MAX_ROUNDS: usize = 64;
const INNER_PANEL_CAP: usize = 400_000;

enum Geometry {
    Polar { radius: f64, breaks: Vec<f64> },
    Cartesian { half: f64 },
}

pub(crate) struct PlaneProblem<'a, K: LineKernel> {
    pub f: &'a PolynomialPhase,
    pub psi: &'a Amplitude,
    pub kernel: &'a K,
    pub lambda: f64,
    /// Integrate |ψ| instead of ψ.
    pub abs_amplitude: bool,
}

fn range_terms(terms: &[(u32, u32, f64)], x: Interval, y: Interval) -> Interval {
    terms
        .iter()
        .fold(Interval::point(0.0), |acc, &(j, k, c)| acc + (x.powi(j) * y.powi(k)).scale(c))
}

/// Range of cos (or sin with `shift` = π/2) over [t0, t1].
fn trig_range(t0: f64, t1: f64, shift: f64) -> (f64, f64) {
    let (a, b) = ((t0 - shift).cos(), (t1 - shift).cos());
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let first = ((t0 - shift) / PI).ceil() as i64;
    let last = ((t1 - shift) / PI).floor() as i64;
    for n in first..=last {
        if n % 2 == 0 {
            hi = 1.0;
        } else {
            lo = -1.0;
        }
    }
    (lo, hi)
}

struct OuterPanel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    l1: f64,
    cells: usize,
    converged: bool,
}

impl<K: LineKernel> PlaneProblem<'_, K> {
    fn geometry(&self, cfg: &QuadConfig) -> Geometry {
        match self.psi {
            Amplitude::Bump { sigma } => Geometry::Polar { radius: (2.0 * sigma).min(cfg.domain.rho), breaks: vec![*sigma] },
            Amplitude::IndicatorDisk { radius } => Geometry::Polar { radius: *radius, breaks: Vec::new() },
            _ => Geometry::Cartesian { half: self.psi.support_half_width(cfg.domain) },
        }
    }

    fn line_poly(&self, geo: &Geometry, u: f64) -> UPoly {
        let terms = self.f.float_terms();
        let deg = self.f.degree() as usize;
        let mut c = vec![0.0; deg + 1];
        match geo {
            Geometry::Polar { .. } => {
                let (s, co) = u.sin_cos();
                for &(j, k, v) in terms {
                    c[(j + k) as usize] += v * co.powi(j as i32) * s.powi(k as i32);
                }
            }
            Geometry::Cartesian { .. } => {
                for &(j, k, v) in terms {
                    c[j as usize] += v * u.powi(k as i32);
                }
            }
        }
        UPoly::new(c)
    }

    fn line(&self, geo: &Geometry, u: f64, rule: &Rule, budget: f64, rel: f64) -> LineResult {
        let poly = self.line_poly(geo, u);
        let abs = self.abs_amplitude;
        match geo {
            Geometry::Polar { radius, breaks } => {
                let psi = self.psi;
                let w = move |r: f64| {
                    let v = psi.radial_profile(r) * r;
                    if abs { v.abs() } else { v }
                };
                LineProblem { kernel: self.kernel, lambda: self.lambda, poly, weight: w, a: 0.0, b: *radius, breaks }
                    .integrate(rule, budget, rel, INNER_PANEL_CAP)
            }
            Geometry::Cartesian { half } => {
                let psi = self.psi;
                let w = move |x: f64| {
                    let v = eval_amplitude(psi, x, u);
                    if abs { v.abs() } else { v }
                };
                LineProblem { kernel: self.kernel, lambda: self.lambda, poly, weight: w, a: -half, b: *half, breaks: &[] }
                    .integrate(rule, budget, rel, INNER_PANEL_CAP)
            }
        }
    }

    /// Bounding box of the region swept by outer panel [u0, u1].
    fn panel_box(&self, geo: &Geometry, u0: f64, u1: f64) -> (Interval, Interval) {
        match geo {
            Geometry::Polar { radius, .. } => {
                let (clo, chi) = trig_range(u0, u1, 0.0);
                let (slo, shi) = trig_range(u0, u1, PI / 2.0);
                (
                    Interval::new(radius * clo.min(0.0), radius * chi.max(0.0)),
                    Interval::new(radius * slo.min(0.0), radius * shi.max(0.0)),
                )
            }
            Geometry::Cartesian { half } => (Interval::new(-half, *half), Interval::new(u0, u1)),
        }
    }

    /// Whether the outer integrand may oscillate with λ: boundary terms of
    /// a non-smooth amplitude, or interior stationary curves in Cartesian form.
    fn outer_oscillates(&self, geo: &Geometry) -> bool {
        matches!(geo, Geometry::Cartesian { .. }) || !self.psi.is_smooth()
    }

    fn initial_outer(&self, geo: &Geometry, budget: f64) -> Vec<(f64, f64)> {
        let (lo, hi, n0) = match geo {
            Geometry::Polar { .. } => (0.0, 2.0 * PI, 16),
            Geometry::Cartesian { half } => (-half, *half, 8),
        };
        let h = (hi - lo) / n0 as f64;
        let seeds: Vec<(f64, f64)> = (0..n0).map(|i| (lo + h * i as f64, if i + 1 == n0 { hi } else { lo + h * (i + 1) as f64 })).collect();
        if self.lambda == 0.0 || !self.outer_oscillates(geo) {
            return seeds;
        }
        // ∂f/∂u as float terms: x f_y − y f_x (polar) or f_y (Cartesian)
        let mut du: Vec<(u32, u32, f64)> = Vec::new();
        for &(j, k, c) in self.f.float_terms() {
            match geo {
                Geometry::Polar { .. } => {
                    if k > 0 {
                        du.push((j + 1, k - 1, c * k as f64));
                    }
                    if j > 0 {
                        du.push((j - 1, k + 1, -c * j as f64));
                    }
                }
                Geometry::Cartesian { .. } => {
                    if k > 0 {
                        du.push((j, k - 1, c * k as f64));
                    }
                }
            }
        }
        let min_w = 1e-12 * (hi - lo);
        let mut out = Vec::new();
        let mut stack: Vec<(f64, f64)> = seeds.into_iter().rev().collect();
        while let Some((a, b)) = stack.pop() {
            let (bx, by) = self.panel_box(geo, a, b);
            let fr = range_terms(self.f.float_terms(), bx, by);
            let slope = range_terms(&du, bx, by).mag();
            let w = self.kernel.frequency(self.lambda * fr.mig(), self.lambda * fr.mag());
            if self.lambda * slope * (b - a) * w > budget && b - a > min_w && out.len() + stack.len() < INNER_PANEL_CAP {
                let m = 0.5 * (a + b);
                stack.push((m, b));
                stack.push((a, m));
            } else {
                out.push((a, b));
            }
        }
        out
    }

    pub fn integrate(&self, cfg: &QuadConfig) -> crate::Result<QuadratureResult> {
        let rule = Rule::new(cfg.rule_order)?;
        let budget = phase_budget(cfg.rule_order, cfg.points_per_wavelength);
        let inner_rel = cfg.rel_tol / 10.0;
        let geo = self.geometry(cfg);
        let span = match geo {
            Geometry::Polar { .. } => 2.0 * PI,
            Geometry::Cartesian { half } => 2.0 * half,
        };
        let mut pending: Vec<(f64, f64)> = self.initial_outer(&geo, budget);
        let mut done: Vec<OuterPanel> = Vec::new();
        let mut rounds = 0;
        loop {
            rounds += 1;
            let nodes: Vec<f64> = pending.iter().flat_map(|&(a, b)| rule.nodes(a, b).collect::<Vec<_>>()).collect();
            let lines = map_ordered(cfg.execution, &nodes, |&u| self.line(&geo, u, &rule, budget, inner_rel));
            let n = rule.len();
            for (i, &(a, b)) in pending.iter().enumerate() {
                let chunk = &lines[i * n..(i + 1) * n];
                let vals: Vec<Complex64> = chunk.iter().map(|r| r.value).collect();
                let errs: Vec<f64> = chunk.iter().map(|r| r.err).collect();
                let l1s: Vec<f64> = chunk.iter().map(|r| r.l1).collect();
                let (sum, inner_err) = rule.combine(a, b, &vals, &errs, &l1s);
                done.push(OuterPanel {
                    a,
                    b,
                    value: sum.kronrod,
                    err: (sum.kronrod - sum.gauss).norm() + inner_err,
                    l1: sum.abs,
                    cells: chunk.iter().map(|r| r.panels).sum(),
                    converged: chunk.iter().all(|r| r.converged),
                });
            }
            done.sort_by(|x, y| x.a.total_cmp(&y.a));
            let err: f64 = done.iter().map(|p| p.err).sum();
            let l1: f64 = done.iter().map(|p| p.l1).sum();
            let cells: usize = done.iter().map(|p| p.cells).sum();
            let tau = cfg.rel_tol * l1;
            let finish = |met: bool| {
                let value = done.iter().fold(Complex64::new(0.0, 0.0), |acc, p| acc + p.value);
                QuadratureResult {
                    value,
                    abs_error_estimate: err,
                    cells_used: cells.max(1),
                    lambda: self.lambda,
                    tolerance_met: met && done.iter().all(|p| p.converged),
                    l1_norm: l1,
                }
            };
            if err <= tau {
                return Ok(finish(true));
            }
            if rounds >= MAX_ROUNDS || cells >= cfg.max_cells {
                return Ok(finish(false));
            }
            // bisect the largest contributors until the rest fits in τ/2
            let mut order: Vec<usize> = (0..done.len()).collect();
            order.sort_by(|&i, &j| done[j].err.total_cmp(&done[i].err).then(i.cmp(&j)));
            let mut rest = err;
            let mut chosen = vec![false; done.len()];
            for &i in &order {
                if rest <= 0.5 * tau {
                    break;
                }
                let p = &done[i];
                if p.b - p.a > 1e-12 * span {
                    chosen[i] = true;
                }
                rest -= p.err;
            }
            if !chosen.iter().any(|&c| c) {
                return Ok(finish(false));
            }
            pending.clear();
            let mut keep = Vec::with_capacity(done.len());
            for (p, c) in done.into_iter().zip(chosen) {
                if c {
                    let m = 0.5 * (p.a + p.b);
                    pending.push((p.a, m));
                    pending.push((m, p.b));
                } else {
                    keep.push(p);
                }
            }
            done = keep;
        }
    }
}
