//! Dense univariate polynomials over ℚ: Euclidean gcd, Yun's squarefree
//! decomposition and Sturm root counting.

use crate::phase_algebra::Rational;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct QPoly(pub Vec<Rational>);

impl QPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; −1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        QPoly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        let z = Rational::zero();
        QPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z)).collect())
    }

    /// (quotient, remainder).
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dd = d.degree() as usize;
        if self.degree() < d.degree() {
            return (QPoly(Vec::new()), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        let l = d.lead();
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / l;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Sign of p(x) at x = +∞ (`pos = true`) or −∞.
    fn sign_at_infinity(&self, pos: bool) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let s = if self.lead().is_positive() { 1 } else { -1 };
        if pos || self.degree() % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// Number of distinct real roots, by Sturm's theorem.
    pub fn count_real_roots(&self) -> usize {
        if self.degree() < 1 {
            return 0;
        }
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(QPoly(r.0.iter().map(|c| -c).collect()));
        }
        let changes = |pos: bool| {
            let signs: Vec<i32> = seq.iter().map(|p| p.sign_at_infinity(pos)).filter(|&s| s != 0).collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(false) - changes(true)
    }

    /// Yun's algorithm: factors a_1, a_2, … with p = c·Π a_i^i, each a_i
    /// squarefree and pairwise coprime. Entry i−1 holds a_i.
    pub fn squarefree(&self) -> Vec<QPoly> {
        let mut out = Vec::new();
        if self.degree() < 1 {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.div_rem(&a0).0;
        let mut c = d.div_rem(&a0).0;
        let mut dd = c.sub(&b.derivative());
        while b.degree() >= 1 {
            let a = b.gcd(&dd);
            b = b.div_rem(&a).0;
            c = dd.div_rem(&a).0;
            dd = c.sub(&b.derivative());
            out.push(a);
        }
        out
    }

    /// Largest multiplicity of a real root; 0 if there is none.
    pub fn max_real_root_multiplicity(&self) -> u32 {
        self.squarefree()
            .iter()
            .enumerate()
            .filter(|(_, f)| f.count_real_roots() > 0)
            .map(|(i, _)| i as u32 + 1)
            .max()
            .unwrap_or(0)
    }
}

impl One for QPoly {
    fn one() -> Self {
        QPoly(vec![Rational::one()])
    }
}

impl std::ops::Mul for QPoly {
    type Output = QPoly;
    fn mul(self, o: QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly(Vec::new());
        }
        let mut c = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }
}
