//! Brute-force Newton polyhedron oracles shared by the integration tests.

#![allow(dead_code)]

use num_traits::One;
use osc_decay::newton_geometry::Point;
use osc_decay::phase_algebra::Rational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Extreme points of the support pushed out by the box, by gift wrapping.
pub fn hull_oracle(support: &[Point]) -> Vec<Point> {
    let b = 2 * support.iter().map(|p| p.0.max(p.1)).max().unwrap() as i64 + 2;
    let mut pts: Vec<(i64, i64)> = Vec::new();
    for &(j, k) in support {
        let (j, k) = (j as i64, k as i64);
        pts.extend([(j, k), (j + b, k), (j, k + b), (j + b, k + b)]);
    }
    pts.sort_unstable();
    pts.dedup();
    let cross = |o: (i64, i64), a: (i64, i64), c: (i64, i64)| (a.0 - o.0) * (c.1 - o.1) - (a.1 - o.1) * (c.0 - o.0);
    let dist2 = |a: (i64, i64), c: (i64, i64)| (a.0 - c.0).pow(2) + (a.1 - c.1).pow(2);
    let start = *pts.iter().min_by_key(|p| (p.1, p.0)).unwrap();
    let mut hull = vec![start];
    let mut cur = start;
    loop {
        let mut next = if pts[0] == cur { pts[1] } else { pts[0] };
        for &p in &pts {
            if p == cur {
                continue;
            }
            let c = cross(cur, next, p);
            if c < 0 || (c == 0 && dist2(cur, p) > dist2(cur, next)) {
                next = p;
            }
        }
        if next == start {
            break;
        }
        hull.push(next);
        cur = next;
    }
    let mut v: Vec<Point> = hull
        .into_iter()
        .filter(|p| support.contains(&(p.0 as u32, p.1 as u32)))
        .map(|p| (p.0 as u32, p.1 as u32))
        .collect();
    v.sort_unstable();
    v
}

/// min over points and pairs of the smallest t with (t,t) above a convex
/// combination.
pub fn distance_oracle(support: &[Point]) -> Rational {
    let mut best: Option<Rational> = None;
    let mut offer = |t: Rational| {
        if best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
    };
    for &(j, k) in support {
        offer(rat(j.max(k) as i64));
    }
    for &p in support {
        for &q in support {
            // s·p + (1−s)·q; the two coordinates cross where they are equal
            let (dp, dq) = (p.0 as i64 - p.1 as i64, q.0 as i64 - q.1 as i64);
            if dp * dq < 0 {
                let s = Rational::new((-dq).into(), (dp - dq).into());
                let t = &s * rat(p.0 as i64) + (Rational::one() - &s) * rat(q.0 as i64);
                offer(t);
            }
        }
    }
    best.unwrap()
}
