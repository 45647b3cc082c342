//! Closed real intervals with outward rounding, enough to enclose a
//! polynomial over a box.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

#[inline]
fn down(x: f64) -> f64 {
    if x.is_finite() { x.next_down() } else { x }
}

#[inline]
fn up(x: f64) -> f64 {
    if x.is_finite() { x.next_up() } else { x }
}

/// Rounding error of a + b (two-sum); zero when the sum is exact.
#[inline]
fn add_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
fn add_lo(a: f64, b: f64) -> f64 {
    let s = a + b;
    if add_err(a, b, s) < 0.0 { down(s) } else { s }
}

#[inline]
fn add_hi(a: f64, b: f64) -> f64 {
    let s = a + b;
    if add_err(a, b, s) > 0.0 { up(s) } else { s }
}

#[inline]
fn mul_lo(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() || a.mul_add(b, -p) < 0.0 { down(p) } else { p }
}

#[inline]
fn mul_hi(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() || a.mul_add(b, -p) > 0.0 { up(p) } else { p }
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Smallest |x| over the interval.
    pub fn mig(&self) -> f64 {
        if self.lo > 0.0 {
            self.lo
        } else if self.hi < 0.0 {
            -self.hi
        } else {
            0.0
        }
    }

    /// Largest |x| over the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn abs(self) -> Self {
        Interval { lo: self.mig(), hi: self.mag() }
    }

    pub fn scale(self, c: f64) -> Self {
        if c >= 0.0 {
            Interval { lo: mul_lo(self.lo, c), hi: mul_hi(self.hi, c) }
        } else {
            Interval { lo: mul_lo(self.hi, c), hi: mul_hi(self.lo, c) }
        }
    }

    /// Exact-range power: even powers of a sign-straddling interval start at 0.
    pub fn powi(self, n: u32) -> Self {
        match n {
            0 => Interval::point(1.0),
            1 => self,
            _ => {
                let a = self.lo.abs().powi(n as i32);
                let b = self.hi.abs().powi(n as i32);
                // powi may be off by a few ulps; widen by n ulps each side
                let widen = |x: f64, f: fn(f64) -> f64| (0..n).fold(x, |v, _| f(v));
                if n % 2 == 1 {
                    Interval { lo: widen(self.lo.signum() * a, down), hi: widen(self.hi.signum() * b, up) }
                } else if self.lo >= 0.0 {
                    Interval { lo: widen(a, down).max(0.0), hi: widen(b, up) }
                } else if self.hi <= 0.0 {
                    Interval { lo: widen(b, down).max(0.0), hi: widen(a, up) }
                } else {
                    Interval { lo: 0.0, hi: widen(a.max(b), up) }
                }
            }
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval { lo: add_lo(self.lo, o.lo), hi: add_hi(self.hi, o.hi) }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval { lo: add_lo(self.lo, -o.hi), hi: add_hi(self.hi, -o.lo) }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)];
        let lo = pairs.iter().map(|&(a, b)| mul_lo(a, b)).fold(f64::INFINITY, f64::min);
        let hi = pairs.iter().map(|&(a, b)| mul_hi(a, b)).fold(f64::NEG_INFINITY, f64::max);
        Interval { lo, hi }
    }
}
