use super::{PolynomialPhase, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, message: message.into() })
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn integer(&mut self) -> Result<u32> {
        self.skip_ws();
        let d = self.digits();
        if d.is_empty() {
            return self.err("expected an integer exponent");
        }
        d.parse::<u32>().or_else(|_| self.err("exponent too large"))
    }

    /// Unsigned decimal such as `12`, `0.25`, `.5`, `3e-2`, read exactly.
    fn decimal(&mut self) -> Result<Rational> {
        self.skip_ws();
        let int_part = self.digits();
        let mut frac_part = "";
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            frac_part = self.digits();
        }
        if int_part.is_empty() && frac_part.is_empty() {
            return self.err("expected a number");
        }
        let mantissa: BigInt = format!("{int_part}{frac_part}").parse().unwrap_or_else(|_| BigInt::zero());
        let mut exp10 = -(frac_part.len() as i64);
        if matches!(self.src.get(self.pos), Some(b'e') | Some(b'E')) {
            self.pos += 1;
            let neg = match self.src.get(self.pos) {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let e = self.digits();
            if e.is_empty() {
                return self.err("expected exponent digits");
            }
            let e: i64 = e.parse().or_else(|_| self.err("exponent too large"))?;
            exp10 += if neg { -e } else { e };
        }
        let ten = BigInt::from(10);
        Ok(if exp10 >= 0 {
            Rational::from_integer(mantissa * num_traits::pow(ten, exp10 as usize))
        } else {
            Rational::new(mantissa, num_traits::pow(ten, (-exp10) as usize))
        })
    }

    /// `x`, `y`, `x1`, `x2`, each optionally raised to `^n`. Returns (dj, dk).
    fn factor(&mut self) -> Result<(u32, u32)> {
        self.skip_ws();
        let base = match self.src.get(self.pos) {
            Some(b'x') => {
                self.pos += 1;
                match self.src.get(self.pos) {
                    Some(b'1') => {
                        self.pos += 1;
                        (1, 0)
                    }
                    Some(b'2') => {
                        self.pos += 1;
                        (0, 1)
                    }
                    _ => (1, 0),
                }
            }
            Some(b'y') => {
                self.pos += 1;
                (0, 1)
            }
            _ => return self.err("expected x or y"),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.integer()?;
            Ok((base.0 * n, base.1 * n))
        } else {
            Ok(base)
        }
    }

    fn term(&mut self) -> Result<(u32, u32, Rational)> {
        let mut coeff = Rational::one();
        let mut j = 0u32;
        let mut k = 0u32;
        let mut first = true;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() || c == b'.' => {
                    let mut v = self.decimal()?;
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let d = self.decimal()?;
                        if d.is_zero() {
                            return self.err("division by zero");
                        }
                        v /= d;
                    }
                    coeff *= v;
                }
                Some(b'x') | Some(b'y') => {
                    let (dj, dk) = self.factor()?;
                    j = j.checked_add(dj).ok_or(Error::Syntax { offset: self.pos, message: "degree overflow".into() })?;
                    k = k.checked_add(dk).ok_or(Error::Syntax { offset: self.pos, message: "degree overflow".into() })?;
                }
                _ => {
                    return if first { self.err("expected a term") } else { self.err("expected a factor after '*'") };
                }
            }
            first = false;
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b'x') | Some(b'y') => {}
                _ => break,
            }
        }
        Ok((j, k, coeff))
    }
}

pub(super) fn parse(text: &str) -> Result<PolynomialPhase> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut acc: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            None if first => return cur.err("empty input"),
            None => return cur.err("dangling sign"),
            Some(b'+') => {
                cur.pos += 1;
            }
            Some(b'-') => {
                cur.pos += 1;
                negative = true;
            }
            Some(_) if first => {}
            Some(_) => return cur.err("expected '+' or '-'"),
        }
        // allow a run of signs such as "- -x"
        while let Some(c @ (b'+' | b'-')) = cur.peek() {
            cur.pos += 1;
            if c == b'-' {
                negative = !negative;
            }
        }
        let (j, k, mut c) = cur.term()?;
        if negative {
            c = -c;
        }
        *acc.entry((j, k)).or_insert_with(Rational::zero) += c;
        first = false;
        if cur.peek().is_none() {
            break;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    PolynomialPhase::from_map(acc)
}
