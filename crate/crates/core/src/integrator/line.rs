//! Adaptive integration of s ↦ K(λ p(t)) w(t) along one line.

use super::rules::{Rule, RuleSum};
use super::upoly::UPoly;
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// The kernel as seen by the quadrature: K(s) with s = λ·f(x).
pub(crate) trait LineKernel: Sync {
    fn eval(&self, s: f64) -> Complex64;
    /// Angular-frequency bound for |s| ∈ [s_lo, s_hi].
    fn frequency(&self, s_lo: f64, s_hi: f64) -> f64;
    /// Values of s where K is not smooth.
    fn breakpoints(&self) -> &[f64];
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct LineResult {
    pub value: Complex64,
    pub err: f64,
    pub l1: f64,
    pub panels: usize,
    pub converged: bool,
}

pub(crate) struct LineProblem<'a, K: LineKernel, W: Fn(f64) -> f64> {
    pub kernel: &'a K,
    pub lambda: f64,
    pub poly: UPoly,
    pub weight: W,
    pub a: f64,
    pub b: f64,
    pub breaks: &'a [f64],
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    sum: RuleSum<Complex64>,
    err: f64,
    seq: usize,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err).then(o.seq.cmp(&self.seq))
    }
}

/// Oscillation budget per panel: λ·Δf·ω ≤ 2π·rule_order/ppw.
pub(crate) fn phase_budget(rule_order: usize, ppw: f64) -> f64 {
    2.0 * std::f64::consts::PI * rule_order as f64 / ppw
}

impl<K: LineKernel, W: Fn(f64) -> f64> LineProblem<'_, K, W> {
    fn rule_sum(&self, rule: &Rule, a: f64, b: f64) -> RuleSum<Complex64> {
        rule.apply_complex(a, b, |t| {
            let w = (self.weight)(t);
            if w == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                self.kernel.eval(self.lambda * self.poly.eval(t)) * w
            }
        })
    }

    fn too_wavy(&self, a: f64, b: f64, budget: f64) -> bool {
        if self.lambda == 0.0 {
            return false;
        }
        let var = self.poly.variation(a, b);
        let (lo, hi) = self.poly.abs_range(a, b);
        self.lambda * var * self.kernel.frequency(self.lambda * lo, self.lambda * hi) > budget
    }

    fn split_initial(&self, a: f64, b: f64, budget: f64, min_w: f64, cap: usize, out: &mut Vec<(f64, f64)>) {
        let mut stack = vec![(a, b)];
        while let Some((lo, hi)) = stack.pop() {
            if out.len() + stack.len() < cap && hi - lo > min_w && self.too_wavy(lo, hi, budget) {
                let mid = 0.5 * (lo + hi);
                stack.push((mid, hi));
                stack.push((lo, mid));
            } else {
                out.push((lo, hi));
            }
        }
    }

    pub fn integrate(&self, rule: &Rule, budget: f64, rel_tol: f64, max_panels: usize) -> LineResult {
        let (a, b) = (self.a, self.b);
        if !(b > a) {
            return LineResult { value: Complex64::new(0.0, 0.0), err: 0.0, l1: 0.0, panels: 0, converged: true };
        }
        let mut pts = vec![a, b];
        pts.extend(self.breaks.iter().copied().filter(|&t| t > a && t < b));
        if self.lambda > 0.0 {
            for &s in self.kernel.breakpoints() {
                pts.extend(self.poly.solve_in(s / self.lambda, a, b));
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let min_w = 1e-14 * (b - a);
        let mut init = Vec::new();
        for w in pts.windows(2) {
            if w[1] > w[0] {
                self.split_initial(w[0], w[1], budget, min_w, max_panels, &mut init);
            }
        }
        let mut heap = BinaryHeap::with_capacity(init.len());
        let mut seq = 0;
        let mut err_total = 0.0;
        let mut l1_total = 0.0;
        for (lo, hi) in init {
            let sum = self.rule_sum(rule, lo, hi);
            let err = (sum.kronrod - sum.gauss).norm();
            err_total += err;
            l1_total += sum.abs;
            heap.push(Panel { a: lo, b: hi, sum, err, seq });
            seq += 1;
        }
        let mut converged = true;
        while err_total > rel_tol * l1_total {
            if heap.len() >= max_panels {
                converged = false;
                break;
            }
            let worst = heap.pop().expect("nonempty");
            let mid = 0.5 * (worst.a + worst.b);
            if worst.b - worst.a <= min_w || !(mid > worst.a && mid < worst.b) {
                // cannot split further; accept the panel as it stands
                heap.push(Panel { err: 0.0, ..worst });
                err_total -= worst.err;
                converged = false;
                continue;
            }
            err_total -= worst.err;
            l1_total -= worst.sum.abs;
            for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
                let sum = self.rule_sum(rule, lo, hi);
                let err = (sum.kronrod - sum.gauss).norm();
                err_total += err;
                l1_total += sum.abs;
                heap.push(Panel { a: lo, b: hi, sum, err, seq });
                seq += 1;
            }
        }
        let mut panels = heap.into_vec();
        panels.sort_by(|x, y| x.a.total_cmp(&y.a));
        let mut value = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        let mut l1 = 0.0;
        for p in &panels {
            value += p.sum.kronrod;
            err += (p.sum.kronrod - p.sum.gauss).norm();
            l1 += p.sum.abs;
        }
        LineResult { value, err, l1, panels: panels.len(), converged }
    }
}
