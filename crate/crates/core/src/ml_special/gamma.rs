//! Gamma-function helpers: a Lanczos-class reciprocal gamma in `f64` and a
//! Stirling-series log-gamma in double-double for the cancelling series.

use super::dd::{Dd, HALF_LN_2PI};
use std::f64::consts::PI as PI_F64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// sin(πx) with exact argument reduction, so integer x gives exactly 0.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    // r in [-1, 1], exact
    let r = x - 2.0 * (x / 2.0).round();
    let (r, sign) = if r < 0.0 { (-r, -1.0) } else { (r, 1.0) };
    let r = if r > 0.5 { 1.0 - r } else { r };
    sign * (PI_F64 * r).sin()
}

fn lanczos_sum(z: f64) -> f64 {
    // z = x - 1
    let mut a = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    a
}

/// Γ(x) for x ≥ 0.5.
fn gamma_right(x: f64) -> f64 {
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let half = 0.5 * (z + 0.5);
    let p = t.powf(half);
    (2.0 * PI_F64).sqrt() * lanczos_sum(z) * (p * (-t).exp()) * p
}

/// (n-1)! for integer n in 1..=171, exact up to 22!.
fn factorial_gamma(x: f64) -> Option<f64> {
    if x >= 1.0 && x <= 171.0 && x.fract() == 0.0 {
        let mut p = 1.0;
        for i in 2..(x as u32) {
            p *= i as f64;
        }
        Some(p)
    } else {
        None
    }
}

/// Γ(x); ±∞ at the poles.
pub fn gamma(x: f64) -> f64 {
    if let Some(g) = factorial_gamma(x) {
        return g;
    }
    if x < 0.5 {
        let s = sin_pi(x);
        if s == 0.0 {
            return f64::INFINITY;
        }
        PI_F64 / (s * gamma_right(1.0 - x))
    } else {
        gamma_right(x)
    }
}

/// 1/Γ(x), an entire function: exactly 0 at non-positive integers and
/// smoothly underflowing for large x.
pub fn rgamma(x: f64) -> f64 {
    if let Some(g) = factorial_gamma(x) {
        return 1.0 / g;
    }
    if x < 0.5 {
        // 1/Γ(x) = sin(πx) Γ(1-x) / π
        let s = sin_pi(x);
        if s == 0.0 {
            return 0.0;
        }
        let g = gamma_right(1.0 - x);
        if g.is_infinite() {
            return f64::INFINITY.copysign(s);
        }
        s * g / PI_F64
    } else if x > 171.5 {
        (-ln_gamma(x)).exp()
    } else {
        1.0 / gamma_right(x)
    }
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        let s = sin_pi(x).abs();
        if s == 0.0 {
            return f64::INFINITY;
        }
        PI_F64.ln() - s.ln() - ln_gamma(1.0 - x)
    } else {
        let z = x - 1.0;
        let t = z + LANCZOS_G + 0.5;
        0.5 * (2.0 * PI_F64).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
    }
}

/// B_{2j} / (2j (2j-1)) as exact numerator / denominator pairs.
const STIRLING: [(f64, f64); 15] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (1.0, 1188.0),
    (-691.0, 360360.0),
    (1.0, 156.0),
    (-3617.0, 122400.0),
    (43867.0, 244188.0),
    (-174611.0, 125400.0),
    (77683.0, 5796.0),
    (-236364091.0, 1506960.0),
    (657931.0, 300.0),
    (-3392780147.0, 93960.0),
    (1723168255201.0, 2492028.0),
];

/// ln Γ(x) in double-double for x > 0.
pub(crate) fn ln_gamma_dd(x: Dd) -> Dd {
    debug_assert!(x.hi > 0.0);
    // shift up so the asymptotic series converges to ~1e-32
    let mut y = x;
    let mut prod = Dd::ONE;
    let mut shifted = false;
    while y.hi < 26.0 {
        prod = prod * y;
        y = y + Dd::ONE;
        shifted = true;
    }
    let ln_y = y.ln();
    let mut s = (y - Dd::new(0.5)) * ln_y - y + HALF_LN_2PI;
    let inv = Dd::ONE / y;
    let inv2 = inv * inv;
    let mut pw = inv;
    for &(num, den) in STIRLING.iter() {
        s = s + pw * Dd::new(num) / Dd::new(den);
        pw = pw * inv2;
    }
    if shifted {
        s = s - prod.ln();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_known_values() {
        assert!(rel(gamma(0.5), PI_F64.sqrt()) < 1e-14);
        assert!(rel(gamma(5.0), 24.0) < 1e-14);
        assert!(rel(gamma(1.0 / 3.0), 2.678_938_534_707_747_6) < 1e-14);
        assert!(rel(gamma(-0.5), -2.0 * PI_F64.sqrt()) < 1e-14);
        assert!(rel(gamma(171.0), 7.257_415_615_307_998_9e306) < 1e-13);
    }

    #[test]
    fn rgamma_is_zero_at_poles() {
        for n in 0..20 {
            assert_eq!(rgamma(-(n as f64)), 0.0);
        }
        assert!(rel(rgamma(-1.5), 3.0 / (4.0 * PI_F64.sqrt())) < 1e-14);
    }

    #[test]
    fn f64_and_double_double_log_gamma_agree() {
        for &x in &[0.3, 0.5, 1.0, 1.7, 2.5, 7.25, 19.9, 26.0, 55.5, 140.2] {
            let a = ln_gamma(x);
            let b = ln_gamma_dd(Dd::new(x)).to_f64();
            assert!((a - b).abs() <= 2e-14 * a.abs().max(1.0), "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn double_double_log_gamma_factorials() {
        // ln(20!) exactly via a double-double product of integers
        let mut p = Dd::ONE;
        for i in 2..=20 {
            p = p.mul_f64(i as f64);
        }
        let lg = ln_gamma_dd(Dd::new(21.0));
        assert!((lg - p.ln()).to_f64().abs() < 1e-29);
        // the shifted evaluation cancels two values near 62
        assert!(ln_gamma_dd(Dd::ONE).to_f64().abs() < 1e-29);
        assert!(ln_gamma_dd(Dd::new(2.0)).to_f64().abs() < 1e-29);
    }
}
