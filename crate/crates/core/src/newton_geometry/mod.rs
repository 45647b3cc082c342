//! Newton polyhedron of a polynomial phase at the origin and the invariants
//! read off it: distance, principal face and part, root order ν and the
//! multiplicity m. Everything is exact.

mod qpoly;

use crate::error::{Error, Result};
use crate::phase_algebra::{taylor_support, PolynomialPhase, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use qpoly::QPoly;
use std::collections::BTreeMap;
use std::fmt;

pub type Point = (u32, u32);

/// A face of the polyhedron. The two rays are the unbounded faces leaving
/// the first and last vertex parallel to the axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Face {
    Vertex(Point),
    /// Endpoints with the smaller j first.
    Edge(Point, Point),
    /// {(j, k + s) : s ≥ 0}.
    VerticalRay(Point),
    /// {(j + s, k) : s ≥ 0}.
    HorizontalRay(Point),
}

impl Face {
    pub fn is_compact(&self) -> bool {
        matches!(self, Face::Vertex(_) | Face::Edge(..))
    }

    /// Does the lattice point lie on the face?
    pub fn contains(&self, (j, k): Point) -> bool {
        match *self {
            Face::Vertex(v) => v == (j, k),
            Face::Edge(p, q) => {
                let (a, b, c) = edge_line(p, q);
                a * j as i64 + b * k as i64 == c && p.0 <= j && j <= q.0
            }
            Face::VerticalRay(p) => j == p.0 && k >= p.1,
            Face::HorizontalRay(p) => k == p.1 && j >= p.0,
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Face::Vertex((j, k)) => write!(f, "vertex ({j},{k})"),
            Face::Edge((a, b), (c, d)) => write!(f, "edge [({a},{b}),({c},{d})]"),
            Face::VerticalRay((j, k)) => write!(f, "ray ({j},{k})+s(0,1)"),
            Face::HorizontalRay((j, k)) => write!(f, "ray ({j},{k})+s(1,0)"),
        }
    }
}

/// Supporting line a·j + b·k = c of the edge p–q (p left of q), a, b > 0.
fn edge_line(p: Point, q: Point) -> (i64, i64, i64) {
    let a = p.1 as i64 - q.1 as i64;
    let b = q.0 as i64 - p.0 as i64;
    (a, b, a * p.0 as i64 + b * p.1 as i64)
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// conv(∪ (j,k)+ℝ₊²). The recession cone is always ℝ₊², so the vertices
/// determine it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    /// Extreme points, j ascending (and so k descending).
    pub vertices: Vec<Point>,
}

/// Dominance filter (staircase minima) followed by the lower-left convex chain.
pub fn newton_polyhedron(support: &[Point]) -> Result<NewtonPolyhedron> {
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let mut pts = support.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let mut stair: Vec<Point> = Vec::new();
    for p in pts {
        // p has j ≥ every earlier j; keep it only if it strictly lowers k
        if stair.last().is_none_or(|s| p.1 < s.1) {
            stair.push(p);
        }
    }
    let cross = |o: Point, a: Point, b: Point| {
        let (ax, ay) = (a.0 as i64 - o.0 as i64, a.1 as i64 - o.1 as i64);
        let (bx, by) = (b.0 as i64 - o.0 as i64, b.1 as i64 - o.1 as i64);
        ax * by - ay * bx
    };
    let mut hull: Vec<Point> = Vec::new();
    for p in stair {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    Ok(NewtonPolyhedron { vertices: hull })
}

impl NewtonPolyhedron {
    pub fn edges(&self) -> Vec<Face> {
        self.vertices.windows(2).map(|w| Face::Edge(w[0], w[1])).collect()
    }

    /// The Newton diagram: compact edges followed by all vertices.
    pub fn compact_faces(&self) -> Vec<Face> {
        let mut faces = self.edges();
        faces.extend(self.vertices.iter().map(|&v| Face::Vertex(v)));
        faces
    }

    /// Where the bisectrix t₁ = t₂ leaves the polyhedron.
    pub fn distance(&self) -> Rational {
        let first = self.vertices[0];
        let last = *self.vertices.last().unwrap();
        let mut d = rat(first.0 as i64).max(rat(last.1 as i64));
        for w in self.vertices.windows(2) {
            let (a, b, c) = edge_line(w[0], w[1]);
            d = d.max(Rational::new(c.into(), (a + b).into()));
        }
        d
    }

    /// The minimal face holding (d,d).
    pub fn principal_face(&self, d: &Rational) -> Face {
        if d.is_integer() {
            let n = d.to_integer();
            if let Some(&v) = self.vertices.iter().find(|v| BigInt::from(v.0) == n && BigInt::from(v.1) == n) {
                return Face::Vertex(v);
            }
        }
        for w in self.vertices.windows(2) {
            let (a, b, c) = edge_line(w[0], w[1]);
            if d * rat(a + b) == rat(c) && rat(w[0].0 as i64) < *d && *d < rat(w[1].0 as i64) {
                return Face::Edge(w[0], w[1]);
            }
        }
        let first = self.vertices[0];
        if rat(first.0 as i64) == *d {
            return Face::VerticalRay(first);
        }
        Face::HorizontalRay(*self.vertices.last().unwrap())
    }
}

/// Sub-polynomial of `f` on the face.
pub fn principal_part(f: &PolynomialPhase, face: &Face) -> Result<PolynomialPhase> {
    if !face.is_compact() {
        return Err(Error::UnboundedPrincipalFace);
    }
    let map: BTreeMap<Point, Rational> = f
        .terms()
        .filter(|t| face.contains((t.j, t.k)))
        .map(|t| ((t.j, t.k), t.coeff))
        .collect();
    PolynomialPhase::from_map(map)
}

/// Maximal order of the zeros of a weighted-homogeneous f_π on the unit circle.
pub fn root_order_on_circle(f_pi: &PolynomialPhase) -> Result<u32> {
    if f_pi.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let support = taylor_support(f_pi);
    let axis_x2 = support.iter().map(|p| p.1).min().unwrap();
    let axis_x1 = support.iter().map(|p| p.0).min().unwrap();
    let mut nu = axis_x1.max(axis_x2);
    for sign in [1i64, -1] {
        let deg = support.iter().map(|p| p.1).max().unwrap() as usize;
        let mut c = vec![Rational::zero(); deg + 1];
        for t in f_pi.terms() {
            let s = if sign < 0 && t.j % 2 == 1 { -t.coeff } else { t.coeff };
            c[t.k as usize] += s;
        }
        let g = QPoly::new(c);
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        nu = nu.max(g.max_real_root_multiplicity());
    }
    Ok(nu)
}

/// m together with whether it rests on unverified adaptedness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Multiplicity {
    pub m: u8,
    /// Set when the coordinates were not declared adapted.
    pub provisional: bool,
}

/// m = 1 iff ν = d, in the given coordinates.
pub fn newton_multiplicity(nu: u32, d: &Rational, adapted_declared: bool) -> Multiplicity {
    let m = u8::from(rat(nu as i64) == *d);
    Multiplicity { m, provisional: !adapted_declared }
}

pub const PROVISIONAL_NOTE: &str = "m provisional: coordinates not certified adapted";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonInvariants {
    pub hull_vertices: Vec<Point>,
    pub compact_faces: Vec<Face>,
    pub distance_d: Rational,
    pub principal_face: Face,
    pub principal_part: PolynomialPhase,
    pub nu: u32,
    pub multiplicity_m: u8,
    /// d in the given coordinates; equals the height only for adapted ones.
    pub height_in_coords: Rational,
    pub adapted_declared: bool,
}

impl NewtonInvariants {
    pub fn m_provisional(&self) -> bool {
        !self.adapted_declared
    }

    /// Bound branch: h > 1 or h = 1 (h < 1 cannot occur for normalized f).
    pub fn height_exceeds_one(&self) -> bool {
        self.height_in_coords > Rational::one()
    }
}

/// Full analysis of a normalized phase.
pub fn analyze(f: &PolynomialPhase, adapted_declared: bool) -> Result<NewtonInvariants> {
    f.check_normalized()?;
    let poly = newton_polyhedron(&taylor_support(f))?;
    let d = poly.distance();
    let face = poly.principal_face(&d);
    let f_pi = principal_part(f, &face)?;
    let nu = root_order_on_circle(&f_pi)?;
    let m = newton_multiplicity(nu, &d, adapted_declared);
    Ok(NewtonInvariants {
        compact_faces: poly.compact_faces(),
        hull_vertices: poly.vertices,
        distance_d: d.clone(),
        principal_face: face,
        principal_part: f_pi,
        nu,
        multiplicity_m: m.m,
        height_in_coords: d,
        adapted_declared,
    })
}

/// `p/q`, or `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_algebra::parse_phase;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn inv(s: &str) -> NewtonInvariants {
        analyze(&parse_phase(s).unwrap(), true).unwrap()
    }

    #[test]
    fn polyhedron_examples() {
        assert_eq!(newton_polyhedron(&[(2, 2)]).unwrap().vertices, vec![(2, 2)]);
        assert_eq!(newton_polyhedron(&[(3, 0), (0, 3)]).unwrap().vertices, vec![(0, 3), (3, 0)]);
        assert_eq!(
            newton_polyhedron(&[(5, 0), (2, 2), (0, 5)]).unwrap().vertices,
            vec![(0, 5), (2, 2), (5, 0)]
        );
        // dominated and collinear points drop out
        assert_eq!(
            newton_polyhedron(&[(0, 4), (2, 2), (4, 0), (3, 3), (1, 3)]).unwrap().vertices,
            vec![(0, 4), (4, 0)]
        );
        assert!(newton_polyhedron(&[]).is_err());
    }

    #[test]
    fn diagram_examples() {
        assert_eq!(inv("x^2*y^2").compact_faces, vec![Face::Vertex((2, 2))]);
        assert_eq!(
            inv("x^3+y^3").compact_faces,
            vec![Face::Edge((0, 3), (3, 0)), Face::Vertex((0, 3)), Face::Vertex((3, 0))]
        );
        let f = inv("x^5+x^2*y^2+y^5");
        assert_eq!(&f.compact_faces[..2], &[Face::Edge((0, 5), (2, 2)), Face::Edge((2, 2), (5, 0))]);
        assert_eq!(f.compact_faces.len(), 5);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(inv("x^2+y^2").distance_d, q(1, 1));
        assert_eq!(inv("x^3+y^3").distance_d, q(3, 2));
        assert_eq!(inv("x^2*y^2").distance_d, q(2, 1));
        assert_eq!(inv("x^2*y+y^4").distance_d, q(8, 5));
    }

    #[test]
    fn principal_face_examples() {
        assert_eq!(inv("x^2*y^2").principal_face, Face::Vertex((2, 2)));
        assert_eq!(inv("x^3+y^3").principal_face, Face::Edge((0, 3), (3, 0)));
        assert_eq!(inv("x^2*y^2+x^5").principal_face, Face::Vertex((2, 2)));
    }

    #[test]
    fn principal_part_examples() {
        assert_eq!(inv("x^3+y^3+x^2*y^2").principal_part, parse_phase("x^3+y^3").unwrap());
        assert_eq!(inv("x^2*y^2").principal_part, parse_phase("x^2*y^2").unwrap());
        assert_eq!(inv("x^2-y^2+x^4").principal_part, parse_phase("x^2-y^2").unwrap());
    }

    #[test]
    fn root_order_examples() {
        let nu = |s: &str| root_order_on_circle(&parse_phase(s).unwrap()).unwrap();
        assert_eq!(nu("x^2*y^2"), 2);
        assert_eq!(nu("x^2+y^2"), 0);
        assert_eq!(nu("x^2-y^2"), 1);
        assert_eq!(nu("x^3+y^3"), 1);
        assert_eq!(nu("x^2 - 2*x*y + y^2"), 2);
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(newton_multiplicity(2, &q(2, 1), true).m, 1);
        assert_eq!(newton_multiplicity(0, &q(1, 1), true).m, 0);
        assert_eq!(newton_multiplicity(1, &q(3, 2), true).m, 0);
        assert!(newton_multiplicity(1, &q(3, 2), false).provisional);
    }

    #[test]
    fn analyze_examples() {
        let a = inv("x^2*y^2");
        assert_eq!((a.distance_d.clone(), a.nu, a.multiplicity_m), (q(2, 1), 2, 1));
        assert_eq!(a.height_in_coords, q(2, 1));
        let b = inv("x^3+y^3");
        assert_eq!((b.distance_d.clone(), b.nu, b.multiplicity_m), (q(3, 2), 1, 0));
        let c = inv("x^2+y^2");
        assert_eq!((c.distance_d.clone(), c.nu, c.multiplicity_m), (q(1, 1), 0, 0));
        let e = inv("x^2*y+y^4");
        assert_eq!((e.distance_d.clone(), e.nu, e.multiplicity_m), (q(8, 5), 1, 0));
    }

    #[test]
    fn unbounded_and_unnormalized_are_refused() {
        // support {(3,0)}: the bisectrix meets the vertical ray above (3,0)
        let f = parse_phase("x^3").unwrap();
        assert_eq!(analyze(&f, true), Err(Error::UnboundedPrincipalFace));
        let p = newton_polyhedron(&taylor_support(&f)).unwrap();
        assert_eq!(p.principal_face(&p.distance()), Face::VerticalRay((3, 0)));
        let g = parse_phase("x^2*y^5 + y^3").unwrap();
        let pg = newton_polyhedron(&taylor_support(&g)).unwrap();
        assert_eq!(pg.principal_face(&pg.distance()), Face::HorizontalRay((0, 3)));
        assert!(matches!(analyze(&parse_phase("x").unwrap(), true), Err(Error::NotNormalized { .. })));
    }
}
