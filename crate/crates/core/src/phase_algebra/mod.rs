//! Sparse bivariate polynomials with exact rational coefficients, their text
//! form, and the amplitudes ψ the integrals are weighted with.

mod amplitude;
mod parse;

pub use amplitude::{eval_amplitude, Amplitude, WorkingDomain};

use crate::error::{Error, Result};
use crate::interval::Interval;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Rational = num_rational::BigRational;

/// c·x₁^j·x₂^k with c ≠ 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialTerm {
    pub j: u32,
    pub k: u32,
    pub coeff: Rational,
}

/// f(x₁,x₂) = Σ c_jk x₁^j x₂^k, keyed and iterated in lexicographic (j,k) order.
#[derive(Debug, Clone)]
pub struct PolynomialPhase {
    terms: BTreeMap<(u32, u32), Rational>,
    float_terms: Vec<(u32, u32, f64)>,
}

impl PartialEq for PolynomialPhase {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for PolynomialPhase {}

impl PolynomialPhase {
    /// Builds from a coefficient map; zero coefficients are dropped and an
    /// all-zero map is rejected.
    pub fn from_map(mut terms: BTreeMap<(u32, u32), Rational>) -> Result<Self> {
        terms.retain(|_, c| !c.is_zero());
        if terms.is_empty() {
            return Err(Error::EmptySupport);
        }
        let float_terms = terms.iter().map(|(&(j, k), c)| (j, k, rational_to_f64(c))).collect();
        Ok(PolynomialPhase { terms, float_terms })
    }

    pub fn from_terms<I: IntoIterator<Item = MonomialTerm>>(terms: I) -> Result<Self> {
        let mut map: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for t in terms {
            *map.entry((t.j, t.k)).or_insert_with(Rational::zero) += t.coeff;
        }
        Self::from_map(map)
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Result<Self> {
        Self::from_terms(terms.iter().map(|&(j, k, c)| MonomialTerm {
            j,
            k,
            coeff: Rational::from_integer(BigInt::from(c)),
        }))
    }

    pub fn terms(&self) -> impl Iterator<Item = MonomialTerm> + '_ {
        self.terms.iter().map(|(&(j, k), c)| MonomialTerm { j, k, coeff: c.clone() })
    }

    pub fn coeff(&self, j: u32, k: u32) -> Option<&Rational> {
        self.terms.get(&(j, k))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(j, k)| j + k).max().unwrap_or(0)
    }

    /// Coefficients as `f64`, lexicographic order.
    pub fn float_terms(&self) -> &[(u32, u32, f64)] {
        &self.float_terms
    }

    /// Terms that break f(0)=0, ∇f(0)=0.
    pub fn normalization_warnings(&self) -> Vec<String> {
        self.terms()
            .filter(|t| t.j + t.k <= 1)
            .map(|t| format_term(&t, true))
            .collect()
    }

    pub fn check_normalized(&self) -> Result<()> {
        match self.normalization_warnings().into_iter().next() {
            Some(term) => Err(Error::NotNormalized { term }),
            None => Ok(()),
        }
    }

    /// ∂f/∂x₁ (`wrt = 0`) or ∂f/∂x₂ (`wrt = 1`); `None` if identically zero.
    pub fn derivative(&self, wrt: usize) -> Option<PolynomialPhase> {
        let mut map = BTreeMap::new();
        for (&(j, k), c) in &self.terms {
            let (n, key) = if wrt == 0 { (j, (j.wrapping_sub(1), k)) } else { (k, (j, k.wrapping_sub(1))) };
            if n > 0 {
                map.insert(key, c * Rational::from_integer(BigInt::from(n)));
            }
        }
        PolynomialPhase::from_map(map).ok()
    }

    /// Enclosure of f over the box X × Y.
    pub fn range_on_box(&self, x: Interval, y: Interval) -> Interval {
        let mut acc = Interval::point(0.0);
        for &(j, k, c) in &self.float_terms {
            acc = acc + (x.powi(j) * y.powi(k)).scale(c);
        }
        acc
    }
}

pub fn rational_to_f64(c: &Rational) -> f64 {
    match (c.numer().to_f64(), c.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // huge numerator/denominator: scale down first
            let bits = c.numer().bits().max(c.denom().bits()) as i64 - 1000;
            let shift = bits.max(0) as usize;
            let n = (c.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (c.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

fn format_term(t: &MonomialTerm, leading: bool) -> String {
    let mag = t.coeff.abs();
    let sign = if t.coeff.is_negative() {
        if leading { "-" } else { "- " }
    } else if leading {
        ""
    } else {
        "+ "
    };
    let mut parts: Vec<String> = Vec::new();
    let monomial = t.j + t.k > 0;
    if !mag.is_one() || !monomial {
        parts.push(if mag.denom().is_one() { mag.numer().to_string() } else { format!("{}/{}", mag.numer(), mag.denom()) });
    }
    match t.j {
        0 => {}
        1 => parts.push("x".into()),
        j => parts.push(format!("x^{j}")),
    }
    match t.k {
        0 => {}
        1 => parts.push("y".into()),
        k => parts.push(format!("y^{k}")),
    }
    format!("{sign}{}", parts.join("*"))
}

/// Canonical form: terms sorted by (j,k), coefficients as `p/q`, unit
/// coefficients omitted. Re-parses to the same polynomial.
impl fmt::Display for PolynomialPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pieces: Vec<String> = self.terms().enumerate().map(|(i, t)| format_term(&t, i == 0)).collect();
        write!(f, "{}", pieces.join(" "))
    }
}

impl std::str::FromStr for PolynomialPhase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_phase(s)
    }
}

/// Parses `c`, `c*x^j`, `c*y^k`, `c*x^j*y^k` sums (`x1`/`x2` accepted for
/// `x`/`y`); decimals are read as exact ratios, like terms are combined.
pub fn parse_phase(text: &str) -> Result<PolynomialPhase> {
    parse::parse(text)
}

/// Horner evaluation: x-powers outside, y-Horner per x-power, lexicographic.
pub fn eval_phase(f: &PolynomialPhase, x1: f64, x2: f64) -> f64 {
    let terms = f.float_terms();
    let mut acc = 0.0;
    let mut i = terms.len();
    let mut last_j: Option<u32> = None;
    // walk groups of equal j from the highest down
    while i > 0 {
        let j = terms[i - 1].0;
        let mut inner = 0.0;
        let mut last_k: Option<u32> = None;
        while i > 0 && terms[i - 1].0 == j {
            let (_, k, c) = terms[i - 1];
            if let Some(lk) = last_k {
                inner *= x2.powi((lk - k) as i32);
            }
            inner += c;
            last_k = Some(k);
            i -= 1;
        }
        inner *= x2.powi(last_k.unwrap_or(0) as i32);
        if let Some(lj) = last_j {
            acc *= x1.powi((lj - j) as i32);
        }
        acc += inner;
        last_j = Some(j);
    }
    acc * x1.powi(last_j.unwrap_or(0) as i32)
}

/// Exponent pairs with nonzero coefficient, sorted.
pub fn taylor_support(f: &PolynomialPhase) -> Vec<(u32, u32)> {
    f.terms.keys().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parse_examples() {
        let f = parse_phase("x^2*y^2").unwrap();
        assert_eq!(taylor_support(&f), vec![(2, 2)]);
        assert_eq!(f.coeff(2, 2), Some(&q(1, 1)));

        let f = parse_phase("x^3 + y^3").unwrap();
        assert_eq!(taylor_support(&f), vec![(0, 3), (3, 0)]);

        let f = parse_phase("x^2 - y^2").unwrap();
        assert_eq!(f.coeff(2, 0), Some(&q(1, 1)));
        assert_eq!(f.coeff(0, 2), Some(&q(-1, 1)));
    }

    #[test]
    fn decimals_are_exact() {
        let f = parse_phase("0.25*x^2 + 1/3 y^2 - 1.5e-1 x*y").unwrap();
        assert_eq!(f.coeff(2, 0), Some(&q(1, 4)));
        assert_eq!(f.coeff(0, 2), Some(&q(1, 3)));
        assert_eq!(f.coeff(1, 1), Some(&q(-3, 20)));
    }

    #[test]
    fn aliases_and_like_terms() {
        let f = parse_phase(" x1^2*x2 + 2 x2*x1*x1 - x*x*y ").unwrap();
        assert_eq!(taylor_support(&f), vec![(2, 1)]);
        assert_eq!(f.coeff(2, 1), Some(&q(2, 1)));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse_phase("x^2 + * y") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_phase("x^"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_phase("x y z"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_phase(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_phase("x +"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(parse_phase("x^2 - x^2"), Err(Error::EmptySupport));
    }

    #[test]
    fn low_degree_terms_warn() {
        let f = parse_phase("x + y^2").unwrap();
        assert_eq!(f.normalization_warnings(), vec!["x".to_string()]);
        assert!(f.check_normalized().is_err());
        assert!(parse_phase("x^2*y").unwrap().check_normalized().is_ok());
    }

    #[test]
    fn eval_examples() {
        let f = parse_phase("x^2*y^2").unwrap();
        assert_eq!(eval_phase(&f, 1.0, 1.0), 1.0);
        let g = parse_phase("x^3+y^3").unwrap();
        assert_eq!(eval_phase(&g, 2.0, 1.0), 9.0);
        let h = parse_phase("x^2-y^2").unwrap();
        assert_eq!(eval_phase(&h, 0.5, 0.5), 0.0);
    }

    #[test]
    fn support_examples() {
        let f = parse_phase("x^2 + x*y^3").unwrap();
        assert_eq!(taylor_support(&f), vec![(1, 3), (2, 0)]);
    }

    #[test]
    fn canonical_print() {
        let f = parse_phase("x^2 - y^2 + 3/4 x*y + 2").unwrap();
        assert_eq!(f.to_string(), "2 - y^2 + 3/4*x*y + x^2");
    }

    #[test]
    fn derivatives() {
        let f = parse_phase("x^3*y + 2*y^2").unwrap();
        assert_eq!(f.derivative(0).unwrap(), parse_phase("3*x^2*y").unwrap());
        assert_eq!(f.derivative(1).unwrap(), parse_phase("x^3 + 4*y").unwrap());
        assert!(parse_phase("y^2").unwrap().derivative(0).is_none());
    }
}
