//! Real univariate polynomials in `f64`: the phase restricted to a line.

/// Ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct UPoly(pub Vec<f64>);

impl UPoly {
    pub fn new(mut c: Vec<f64>) -> Self {
        while c.last() == Some(&0.0) {
            c.pop();
        }
        UPoly(c)
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.0.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect())
    }

    fn shifted(&self, a: f64) -> Vec<f64> {
        // coefficients of p(a + t), by repeated synthetic division
        let mut d = self.0.clone();
        let n = d.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                d[j] += a * d[j + 1];
            }
        }
        d
    }

    /// Bound on |p(x) − p(a)| for x ∈ [a, b].
    pub fn variation(&self, a: f64, b: f64) -> f64 {
        let d = self.shifted(a);
        let h = b - a;
        let mut pw = 1.0;
        let mut v = 0.0;
        for &c in d.iter().skip(1) {
            pw *= h;
            v += c.abs() * pw;
        }
        v * (1.0 + 1e-12)
    }

    /// Bounds (min |p|, max |p|) over [a, b].
    pub fn abs_range(&self, a: f64, b: f64) -> (f64, f64) {
        let var = self.variation(a, b);
        let (pa, pb) = (self.eval(a).abs(), self.eval(b).abs());
        ((pa.max(pb) - var).max(0.0), pa.min(pb) + var)
    }

    /// Roots of p(t) = v in the open interval (a, b), ascending. Tangential
    /// roots are reported when p − v nearly vanishes at a critical point.
    pub fn solve_in(&self, v: f64, a: f64, b: f64) -> Vec<f64> {
        let mut q = self.clone();
        if q.0.is_empty() {
            q.0.push(0.0);
        }
        q.0[0] -= v;
        let q = UPoly::new(q.0);
        let scale = self.0.iter().map(|c| c.abs()).fold(v.abs(), f64::max).max(f64::MIN_POSITIVE);
        q.roots(a, b, scale)
    }

    fn roots(&self, a: f64, b: f64, scale: f64) -> Vec<f64> {
        match self.degree() {
            0 => return Vec::new(),
            1 if self.0.len() == 2 => {
                let r = -self.0[0] / self.0[1];
                return if r > a && r < b { vec![r] } else { Vec::new() };
            }
            _ => {}
        }
        if self.0.is_empty() {
            return Vec::new();
        }
        let crit = self.derivative().roots(a, b, scale);
        let mut knots = vec![a];
        knots.extend(crit.iter().copied());
        knots.push(b);
        let mut out: Vec<f64> = Vec::new();
        for w in knots.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let (flo, fhi) = (self.eval(lo), self.eval(hi));
            if flo == 0.0 && lo > a {
                out.push(lo);
            } else if flo * fhi < 0.0 {
                out.push(self.bracket(lo, hi, flo));
            }
        }
        // tangential roots at critical points
        for &c in &crit {
            if self.eval(c).abs() <= 1e-13 * scale && !out.iter().any(|&r| (r - c).abs() <= 1e-12 * (b - a)) {
                out.push(c);
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }

    /// Bisection to machine precision on a sign-changing bracket.
    fn bracket(&self, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = self.eval(mid);
            if fm == 0.0 {
                return mid;
            }
            if (fm < 0.0) == (flo < 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_cubic() {
        // (t − 0.2)(t − 0.5)(t + 0.7)
        let p = UPoly::new(vec![0.07, -0.39, 0.0, 1.0]);
        let r = p.solve_in(0.0, -1.0, 1.0);
        let want = [-0.7, 0.2, 0.5];
        assert_eq!(r.len(), 3);
        for (a, b) in r.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
        assert_eq!(p.solve_in(0.0, 0.3, 0.4), Vec::<f64>::new());
    }

    #[test]
    fn tangential_root_is_found() {
        let p = UPoly::new(vec![0.25, -1.0, 1.0]); // (t − 1/2)²
        let r = p.solve_in(0.0, 0.0, 1.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 0.5).abs() < 1e-7);
    }

    #[test]
    fn variation_bounds_the_change() {
        let p = UPoly::new(vec![1.0, -3.0, 0.5, 2.0]);
        let (a, b) = (-0.8, 0.9);
        let v = p.variation(a, b);
        let (lo, hi) = p.abs_range(a, b);
        for i in 0..=100 {
            let x = a + (b - a) * i as f64 / 100.0;
            assert!((p.eval(x) - p.eval(a)).abs() <= v);
            assert!(p.eval(x).abs() >= lo && p.eval(x).abs() <= hi);
        }
    }
}
