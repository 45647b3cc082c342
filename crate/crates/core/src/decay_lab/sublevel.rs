//! Measure of {x ∈ [−ρ,ρ]² : |f(x)| ≤ ε}.
//!
//! A quadtree over each closed quadrant, so no cell straddles an axis.
//! Interval enclosures settle cells lying wholly inside or outside the set.
//! Where f is monotone along one axis the cell is integrated slice by slice:
//! each slice meets the set in a single interval whose end points are
//! roots of f = ±ε. Cells still undecided at the depth limit count half
//! their area, and that half goes into the error bar.

use crate::error::{Error, Result};
use crate::integrator::{adaptive_real, UPoly};
use crate::interval::Interval;
use crate::par::{map_ordered, Execution};
use crate::phase_algebra::{PolynomialPhase, WorkingDomain};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SublevelConfig {
    pub max_depth: u32,
    /// Integrate monotone cells by slices instead of splitting them.
    pub slicing: bool,
    pub execution: Execution,
}

impl Default for SublevelConfig {
    fn default() -> Self {
        SublevelConfig { max_depth: 12, slicing: true, execution: Execution::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SublevelMeasure {
    pub measure: f64,
    /// Undecided area plus the slice quadrature error estimates.
    pub error: f64,
}

impl SublevelMeasure {
    const ZERO: SublevelMeasure = SublevelMeasure { measure: 0.0, error: 0.0 };

    pub fn lower(&self) -> f64 {
        (self.measure - self.error).max(0.0)
    }

    pub fn upper(&self) -> f64 {
        self.measure + self.error
    }

    fn add(self, o: SublevelMeasure) -> SublevelMeasure {
        SublevelMeasure { measure: self.measure + o.measure, error: self.error + o.error }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellClass {
    Inside,
    Outside,
    Undecided,
}

struct Prepared<'a> {
    f: &'a PolynomialPhase,
    grad: [Option<PolynomialPhase>; 2],
}

const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
const SLICE_PANELS: usize = 4000;

impl<'a> Prepared<'a> {
    fn new(f: &'a PolynomialPhase) -> Self {
        Prepared { f, grad: [f.derivative(0), f.derivative(1)] }
    }

    fn partial(&self, axis: usize, x: Interval, y: Interval) -> Interval {
        self.grad[axis].as_ref().map_or(ZERO, |g| g.range_on_box(x, y))
    }

    /// Natural enclosure intersected with the mean-value form about the centre.
    fn enclosure(&self, x: Interval, y: Interval) -> Interval {
        let natural = self.f.range_on_box(x, y);
        let (cx, cy) = (Interval::point(x.mid()), Interval::point(y.mid()));
        let mv = self.f.range_on_box(cx, cy) + self.partial(0, x, y) * (x - cx) + self.partial(1, x, y) * (y - cy);
        let (lo, hi) = (natural.lo.max(mv.lo), natural.hi.min(mv.hi));
        if lo <= hi {
            Interval::new(lo, hi)
        } else {
            natural
        }
    }

    fn cell(&self, x: Interval, y: Interval, eps: f64, depth: u32, cfg: &SublevelConfig) -> SublevelMeasure {
        let area = x.width() * y.width();
        match classify(self.enclosure(x, y), eps) {
            CellClass::Inside => return SublevelMeasure { measure: area, error: 0.0 },
            CellClass::Outside => return SublevelMeasure::ZERO,
            CellClass::Undecided => {}
        }
        if cfg.slicing {
            for axis in 0..2 {
                let d = self.partial(axis, x, y);
                if d.lo >= 0.0 || d.hi <= 0.0 {
                    return self.slices(axis, d.lo >= 0.0, x, y, eps);
                }
            }
        }
        if depth >= cfg.max_depth {
            return SublevelMeasure { measure: 0.5 * area, error: 0.5 * area };
        }
        let (xm, ym) = (x.mid(), y.mid());
        let xs = [Interval::new(x.lo, xm), Interval::new(xm, x.hi)];
        let ys = [Interval::new(y.lo, ym), Interval::new(ym, y.hi)];
        let mut acc = SublevelMeasure::ZERO;
        for yc in ys {
            for xc in xs {
                acc = acc.add(self.cell(xc, yc, eps, depth + 1, cfg));
            }
        }
        acc
    }

    /// ∫ |{u : |f| ≤ ε}| dv over the cell, u the monotone variable.
    fn slices(&self, axis: usize, increasing: bool, x: Interval, y: Interval, eps: f64) -> SublevelMeasure {
        let (u, v) = if axis == 0 { (x, y) } else { (y, x) };
        let mut breaks = Vec::new();
        for end in [u.lo, u.hi] {
            let edge = restrict(self.f, 1 - axis, end);
            for level in [-eps, eps] {
                breaks.extend(edge.solve_in(level, v.lo, v.hi));
            }
        }
        let len = |t: f64| slice_length(&restrict(self.f, axis, t), u.lo, u.hi, eps, increasing);
        let (coarse, _) = adaptive_real(len, v.lo, v.hi, &breaks, 0.0, 8);
        let tol = 1e-11 * coarse.abs();
        let (value, err) = adaptive_real(len, v.lo, v.hi, &breaks, tol, SLICE_PANELS);
        SublevelMeasure { measure: value.clamp(0.0, u.width() * v.width()), error: err }
    }
}

fn classify(enc: Interval, eps: f64) -> CellClass {
    if enc.lo >= -eps && enc.hi <= eps {
        CellClass::Inside
    } else if enc.lo > eps || enc.hi < -eps {
        CellClass::Outside
    } else {
        CellClass::Undecided
    }
}

/// f with the other coordinate fixed at t, as a polynomial in the `axis`
/// coordinate.
fn restrict(f: &PolynomialPhase, axis: usize, t: f64) -> UPoly {
    let mut c = vec![0.0; f.degree() as usize + 1];
    for &(j, k, a) in f.float_terms() {
        let (p, q) = if axis == 0 { (j, k) } else { (k, j) };
        c[p as usize] += a * t.powi(q as i32);
    }
    UPoly::new(c)
}

/// Length of {s ∈ [a,b] : |g(s)| ≤ ε} for g monotone on [a, b].
fn slice_length(g: &UPoly, a: f64, b: f64, eps: f64, increasing: bool) -> f64 {
    let (ga, gb) = (g.eval(a), g.eval(b));
    let (min, max) = if increasing { (ga, gb) } else { (gb, ga) };
    if min > eps || max < -eps {
        return 0.0;
    }
    let (enter, leave) = if increasing { (-eps, eps) } else { (eps, -eps) };
    let start = if (increasing && ga >= -eps) || (!increasing && ga <= eps) { a } else { crossing(g, a, b, enter) };
    let end = if (increasing && gb <= eps) || (!increasing && gb >= -eps) { b } else { crossing(g, a, b, leave) };
    (end - start).max(0.0)
}

/// Bisection for g(s) = c on [a, b], given g(a) − c and g(b) − c differ in sign.
fn crossing(g: &UPoly, mut a: f64, mut b: f64, c: f64) -> f64 {
    let below_at_a = g.eval(a) < c;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if (g.eval(m) < c) == below_at_a {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Certified classification of the cell X × Y against |f| ≤ ε.
pub fn classify_cell(f: &PolynomialPhase, x: Interval, y: Interval, eps: f64) -> CellClass {
    classify(Prepared::new(f).enclosure(x, y), eps)
}

pub fn sublevel_measure(f: &PolynomialPhase, domain: WorkingDomain, eps: f64) -> Result<SublevelMeasure> {
    sublevel_measure_with(f, domain, eps, &SublevelConfig::default())
}

pub fn sublevel_measure_with(f: &PolynomialPhase, domain: WorkingDomain, eps: f64, cfg: &SublevelConfig) -> Result<SublevelMeasure> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidArgument(format!("epsilon must be positive and finite, got {eps}")));
    }
    let domain = WorkingDomain::new(domain.rho)?;
    let p = Prepared::new(f);
    let r = domain.rho;
    let halves = [Interval::new(-r, 0.0), Interval::new(0.0, r)];
    let quadrants: Vec<(Interval, Interval)> = halves.iter().flat_map(|&y| halves.iter().map(move |&x| (x, y))).collect();
    let parts = map_ordered(cfg.execution, &quadrants, |&(x, y)| p.cell(x, y, eps, 0, cfg));
    Ok(parts.into_iter().fold(SublevelMeasure::ZERO, SublevelMeasure::add))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_algebra::parse_phase;
    use std::f64::consts::PI;

    fn m(f: &str, eps: f64) -> SublevelMeasure {
        sublevel_measure(&parse_phase(f).unwrap(), WorkingDomain::default(), eps).unwrap()
    }

    #[test]
    fn disk() {
        for eps in [1e-8, 1e-4, 0.25, 0.9] {
            let r = m("x^2+y^2", eps);
            assert!((r.measure - PI * eps).abs() < 1e-10 * eps, "ε={eps}: {r:?}");
            assert!(r.error < 1e-9 * eps);
        }
    }

    #[test]
    fn whole_square_when_eps_exceeds_sup() {
        let r = m("x^2*y^2 - x^3", 3.0);
        assert_eq!(r.measure, 4.0);
        let r = m("x^2 - y^2", 1.0);
        assert!((r.measure - 4.0).abs() < 1e-12);
    }

    #[test]
    fn saddle_matches_antiderivative() {
        // {|x² − y²| ≤ ε} in [−1,1]²: 4 ∫_0^1 (min(1, √(y²+ε)) − √max(0, y²−ε)) dy
        let eps: f64 = 1e-3;
        let a = |y: f64| 0.5 * (y * (y * y + eps).sqrt() + eps * (y + (y * y + eps).sqrt()).ln());
        let b = |y: f64| {
            let r = (y * y - eps).max(0.0).sqrt();
            0.5 * (y * r - eps * (y + r).ln())
        };
        let y1 = (1.0 - eps).sqrt();
        let exact = 4.0 * ((a(y1) - a(0.0)) + (1.0 - y1) - (b(1.0) - b(eps.sqrt())));
        let r = m("x^2-y^2", eps);
        assert!((r.measure - exact).abs() < 1e-10 * exact, "{} vs {exact}", r.measure);
    }

    #[test]
    fn quadtree_alone_brackets_the_disk() {
        let cfg = SublevelConfig { slicing: false, max_depth: 8, ..SublevelConfig::default() };
        let r = sublevel_measure_with(&parse_phase("x^2+y^2").unwrap(), WorkingDomain::default(), 0.25, &cfg).unwrap();
        assert!(r.lower() <= PI / 4.0 && PI / 4.0 <= r.upper());
        assert!(r.error < 0.02);
    }

    #[test]
    fn rejects_non_positive_eps() {
        let f = parse_phase("x^2").unwrap();
        assert!(sublevel_measure(&f, WorkingDomain::default(), 0.0).is_err());
    }
}
