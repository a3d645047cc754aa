//! Exact rational scalars and small lattice-geometry primitives.
//!
//! Everything here is exact. Coordinates of curve points are [`Rational`],
//! exponent vectors and edge directions are [`IntVec2`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, TropError};

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `num/den`, also for integers. Used in JSON.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `n`, `-n`, `n/d` (and tolerates surrounding whitespace).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || TropError::InvalidRational(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Decimal rendering with a fixed number of fractional digits (round half away from zero).
pub fn to_decimal(r: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * Rational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let abs = rounded.abs();
    let (whole, frac) = abs.div_rem(&scale);
    let frac = frac.to_string();
    let pad = "0".repeat(digits as usize - frac.len());
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{pad}{frac}")
    }
}

/// Serde adapter: a [`Rational`] as a `"num/den"` string.
pub mod serde_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a list of [`Rational`]s as `"num/den"` strings.
pub mod serde_rational_seq {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Parses `"x,y"` where each coordinate is an integer or `num/den`.
pub fn parse_point(s: &str) -> Result<Point2> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (x, y) = t
        .split_once(',')
        .ok_or_else(|| TropError::Syntax { pos: 0, msg: format!("expected x,y in {s:?}") })?;
    Ok(Point2::new(parse_rational(x)?, parse_rational(y)?))
}

/// A point of the affine plane with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point2 {
    #[serde(with = "serde_rational")]
    pub x: Rational,
    #[serde(with = "serde_rational")]
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2 { x: int(x), y: int(y) }
    }

    pub fn origin() -> Self {
        Point2::from_ints(0, 0)
    }

    /// `self + t * v`
    pub fn offset(&self, v: IntVec2, t: &Rational) -> Point2 {
        Point2 {
            x: &self.x + t * int(v.x),
            y: &self.y + t * int(v.y),
        }
    }

    pub fn sub(&self, other: &Point2) -> Point2 {
        Point2 {
            x: &self.x - &other.x,
            y: &self.y - &other.y,
        }
    }

    pub fn add(&self, other: &Point2) -> Point2 {
        Point2 {
            x: &self.x + &other.x,
            y: &self.y + &other.y,
        }
    }

    pub fn scale(&self, t: &Rational) -> Point2 {
        Point2 {
            x: &self.x * t,
            y: &self.y * t,
        }
    }

    /// Dot product with an integer vector.
    pub fn dot(&self, v: IntVec2) -> Rational {
        &self.x * int(v.x) + &self.y * int(v.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Integer vector in Z². Used both for exponent vectors and for edge directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntVec2 {
    pub x: i64,
    pub y: i64,
}

impl IntVec2 {
    pub const ZERO: IntVec2 = IntVec2 { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        IntVec2 { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn dot(self, o: IntVec2) -> i64 {
        self.x * o.x + self.y * o.y
    }

    /// Rotation by +90 degrees.
    pub fn perp(self) -> IntVec2 {
        IntVec2::new(-self.y, self.x)
    }

    pub fn is_primitive(self) -> bool {
        !self.is_zero() && self.x.gcd(&self.y) == 1
    }

    /// Splits `self` into `k * p` with `p` primitive and `k >= 1`.
    pub fn primitive(self) -> Result<(IntVec2, i64)> {
        if self.is_zero() {
            return Err(TropError::ZeroDirection);
        }
        let k = self.x.gcd(&self.y);
        Ok((IntVec2::new(self.x / k, self.y / k), k))
    }

    pub fn to_point(self) -> Point2 {
        Point2::from_ints(self.x, self.y)
    }
}

impl Add for IntVec2 {
    type Output = IntVec2;
    fn add(self, o: IntVec2) -> IntVec2 {
        IntVec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for IntVec2 {
    type Output = IntVec2;
    fn sub(self, o: IntVec2) -> IntVec2 {
        IntVec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for IntVec2 {
    type Output = IntVec2;
    fn neg(self) -> IntVec2 {
        IntVec2::new(-self.x, -self.y)
    }
}

impl Mul<IntVec2> for i64 {
    type Output = IntVec2;
    fn mul(self, v: IntVec2) -> IntVec2 {
        IntVec2::new(self * v.x, self * v.y)
    }
}

impl fmt::Display for IntVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Free-function form of [`IntVec2::primitive`].
pub fn primitive(v: IntVec2) -> Result<(IntVec2, i64)> {
    v.primitive()
}

/// `u.x * v.y - u.y * v.x`
pub fn det2(u: IntVec2, v: IntVec2) -> i64 {
    u.x * v.y - u.y * v.x
}

/// Cross product of `b - a` and `c - a`; positive for a left turn.
fn orient(a: IntVec2, b: IntVec2, c: IntVec2) -> i64 {
    det2(b - a, c - a)
}

/// Convex lattice polygon, vertices counter-clockwise starting at the
/// lowest-then-leftmost vertex, with no collinear triples.
///
/// A point has one vertex and a segment two; see [`LatticePolygon::dimension`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePolygon {
    pub vertices: Vec<IntVec2>,
}

impl LatticePolygon {
    /// 0 for a point, 1 for a segment, 2 otherwise.
    pub fn dimension(&self) -> usize {
        match self.vertices.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    /// The triangle with vertices (0,0), (d,0), (0,d).
    pub fn standard_triangle(d: i64) -> LatticePolygon {
        convex_hull(&[IntVec2::new(0, 0), IntVec2::new(d, 0), IntVec2::new(0, d)])
            .expect("nonempty")
    }

    pub fn translate(&self, t: IntVec2) -> LatticePolygon {
        LatticePolygon {
            vertices: self.vertices.iter().map(|&v| v + t).collect(),
        }
    }

    /// Boundary edges as (from, to), counter-clockwise. A segment yields both
    /// orientations, a point yields none.
    pub fn edges(&self) -> Vec<(IntVec2, IntVec2)> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n)
            .map(|i| (self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    /// Closed containment test.
    pub fn contains(&self, p: IntVec2) -> bool {
        match self.dimension() {
            0 => self.vertices[0] == p,
            1 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                orient(a, b, p) == 0 && (p - a).dot(b - a) >= 0 && (p - b).dot(a - b) >= 0
            }
            _ => self.edges().iter().all(|&(a, b)| orient(a, b, p) >= 0),
        }
    }

    /// Point strictly inside a two-dimensional polygon.
    pub fn contains_interior(&self, p: IntVec2) -> bool {
        self.dimension() == 2 && self.edges().iter().all(|&(a, b)| orient(a, b, p) > 0)
    }

    /// All lattice points in the closed polygon.
    pub fn lattice_points(&self) -> Vec<IntVec2> {
        let xmin = self.vertices.iter().map(|v| v.x).min().unwrap();
        let xmax = self.vertices.iter().map(|v| v.x).max().unwrap();
        let ymin = self.vertices.iter().map(|v| v.y).min().unwrap();
        let ymax = self.vertices.iter().map(|v| v.y).max().unwrap();
        let mut out = Vec::new();
        for y in ymin..=ymax {
            for x in xmin..=xmax {
                let p = IntVec2::new(x, y);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }
}

/// Counter-clockwise convex hull (monotone chain), collinear points dropped.
pub fn convex_hull(points: &[IntVec2]) -> Result<LatticePolygon> {
    if points.is_empty() {
        return Err(TropError::EmptyInput);
    }
    // sort by (y, x) so the first vertex is the lowest, then leftmost
    let mut pts: Vec<IntVec2> = points.to_vec();
    pts.sort_by_key(|p| (p.y, p.x));
    pts.dedup();
    if pts.len() <= 2 {
        return Ok(LatticePolygon { vertices: pts });
    }
    let chain = |iter: &mut dyn Iterator<Item = IntVec2>| {
        let mut h: Vec<IntVec2> = Vec::new();
        for p in iter {
            while h.len() >= 2 && orient(h[h.len() - 2], h[h.len() - 1], p) <= 0 {
                h.pop();
            }
            h.push(p);
        }
        h
    };
    let mut lower = chain(&mut pts.iter().copied());
    let mut upper = chain(&mut pts.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.extend(upper);
    // all collinear: chain collapses to the two extremes
    Ok(LatticePolygon { vertices: lower })
}

/// Exact shoelace area; zero for points and segments.
pub fn polygon_area(p: &LatticePolygon) -> Rational {
    if p.dimension() < 2 {
        return Rational::zero();
    }
    let twice: i64 = p.edges().iter().map(|&(a, b)| det2(a, b)).sum();
    rat(twice, 2)
}

/// Half-plane index used for angular sorting: 0 for angles in [0, pi), 1 otherwise.
fn half(v: IntVec2) -> u8 {
    if v.y > 0 || (v.y == 0 && v.x > 0) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: IntVec2, b: IntVec2) -> Ordering {
    half(a)
        .cmp(&half(b))
        .then_with(|| 0.cmp(&det2(a, b)))
}

/// Minkowski sum by merging the boundary edge sequences in angular order.
pub fn minkowski_sum(r: &LatticePolygon, s: &LatticePolygon) -> LatticePolygon {
    let edge_vectors = |p: &LatticePolygon| -> Vec<IntVec2> {
        p.edges().iter().map(|&(a, b)| b - a).collect()
    };
    // vertices[0] is lowest-then-leftmost, so edges already start at angle >= 0
    let mut edges = edge_vectors(r);
    edges.extend(edge_vectors(s));
    edges.sort_by(|&a, &b| angle_cmp(a, b));
    let start = r.vertices[0] + s.vertices[0];
    let mut pts = vec![start];
    let mut cur = start;
    for e in edges {
        cur = cur + e;
        pts.push(cur);
    }
    convex_hull(&pts).expect("nonempty")
}

/// Lattice length of the segment AB: the `t` with `B - A = t * p`, `p` primitive.
pub fn segment_lattice_length(a: &Point2, b: &Point2) -> Rational {
    lattice_direction(a, b).map(|(_, t)| t).unwrap_or_else(Rational::zero)
}

/// Primitive integer direction and lattice length of AB, or `None` if `A == B`.
pub fn lattice_direction(a: &Point2, b: &Point2) -> Option<(IntVec2, Rational)> {
    let d = b.sub(a);
    if d.x.is_zero() && d.y.is_zero() {
        return None;
    }
    let m = d.x.denom().lcm(d.y.denom());
    let ix = (&d.x * Rational::from_integer(m.clone())).to_integer();
    let iy = (&d.y * Rational::from_integer(m.clone())).to_integer();
    let k = ix.gcd(&iy);
    let p = IntVec2::new(
        (&ix / &k).to_i64().expect("direction fits in i64"),
        (&iy / &k).to_i64().expect("direction fits in i64"),
    );
    Some((p, Rational::new(k, m)))
}

/// Solves `a * s + b * t = rhs` for integer column vectors `a`, `b` (Cramer).
pub fn solve2(a: IntVec2, b: IntVec2, rhs: &Point2) -> Option<(Rational, Rational)> {
    let det = det2(a, b);
    if det == 0 {
        return None;
    }
    let d = int(det);
    let s = (&rhs.x * int(b.y) - &rhs.y * int(b.x)) / &d;
    let t = (&rhs.y * int(a.x) - &rhs.x * int(a.y)) / &d;
    Some((s, t))
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> IntVec2 {
        IntVec2::new(x, y)
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(v(4, -6)).unwrap(), (v(2, -3), 2));
        assert_eq!(primitive(v(1, 1)).unwrap(), (v(1, 1), 1));
        assert_eq!(primitive(v(0, 5)).unwrap(), (v(0, 1), 5));
        assert_eq!(primitive(v(0, 0)), Err(TropError::ZeroDirection));
        assert_eq!(TropError::ZeroDirection.to_string(), "zero direction");
    }

    #[test]
    fn det2_examples() {
        assert_eq!(det2(v(1, 2), v(2, 1)), -3);
        assert_eq!(det2(v(-1, 0), v(0, -1)), 1);
        assert_eq!(det2(v(1, 0), v(2, 0)), 0);
    }

    #[test]
    fn hull_examples() {
        let tri = convex_hull(&[v(0, 0), v(1, 0), v(0, 1)]).unwrap();
        assert_eq!(tri.vertices, vec![v(0, 0), v(1, 0), v(0, 1)]);
        assert_eq!(tri.dimension(), 2);
        let seg = convex_hull(&[v(2, 0), v(0, 1)]).unwrap();
        assert_eq!(seg.dimension(), 1);
        let pt = convex_hull(&[v(1, 1)]).unwrap();
        assert_eq!(pt.dimension(), 0);
        assert_eq!(convex_hull(&[]), Err(TropError::EmptyInput));
        let collinear = convex_hull(&[v(0, 0), v(1, 1), v(3, 3), v(2, 2)]).unwrap();
        assert_eq!(collinear.vertices, vec![v(0, 0), v(3, 3)]);
        let with_inner = convex_hull(&[v(0, 0), v(2, 0), v(1, 0), v(0, 2), v(1, 1), v(0, 1)]).unwrap();
        assert_eq!(with_inner.vertices, vec![v(0, 0), v(2, 0), v(0, 2)]);
    }

    #[test]
    fn area_examples() {
        assert_eq!(polygon_area(&LatticePolygon::standard_triangle(1)), rat(1, 2));
        assert_eq!(polygon_area(&LatticePolygon::standard_triangle(3)), rat(9, 2));
        let seg = convex_hull(&[v(0, 0), v(1, 0)]).unwrap();
        assert_eq!(polygon_area(&seg), zero());
    }

    #[test]
    fn minkowski_examples() {
        let g1 = LatticePolygon::standard_triangle(1);
        assert_eq!(minkowski_sum(&g1, &g1), LatticePolygon::standard_triangle(2));
        let p = convex_hull(&[v(3, -2)]).unwrap();
        let sq = convex_hull(&[v(0, 0), v(2, 0), v(2, 1), v(0, 1)]).unwrap();
        assert_eq!(minkowski_sum(&p, &sq), sq.translate(v(3, -2)));
        let sx = convex_hull(&[v(0, 0), v(1, 0)]).unwrap();
        let sy = convex_hull(&[v(0, 0), v(0, 1)]).unwrap();
        let unit = convex_hull(&[v(0, 0), v(1, 0), v(1, 1), v(0, 1)]).unwrap();
        assert_eq!(minkowski_sum(&sx, &sy), unit);
        // parallel segments stay a segment
        let sx2 = convex_hull(&[v(0, 0), v(2, 0)]).unwrap();
        assert_eq!(minkowski_sum(&sx, &sx2).vertices, vec![v(0, 0), v(3, 0)]);
    }

    #[test]
    fn lattice_length_examples() {
        let o = Point2::origin();
        assert_eq!(segment_lattice_length(&o, &Point2::from_ints(2, 4)), int(2));
        assert_eq!(segment_lattice_length(&o, &Point2::from_ints(3, 0)), int(3));
        assert_eq!(
            segment_lattice_length(&o, &Point2::new(rat(1, 2), rat(1, 2))),
            rat(1, 2)
        );
        assert_eq!(segment_lattice_length(&o, &o), zero());
        let (dir, t) = lattice_direction(&Point2::new(rat(1, 3), rat(0, 1)), &Point2::new(rat(1, 2), rat(1, 4))).unwrap();
        // difference (1/6, 1/4) = 1/12 * (2, 3)
        assert_eq!(dir, v(2, 3));
        assert_eq!(t, rat(1, 12));
    }

    #[test]
    fn rational_text() {
        assert_eq!(fmt_rational(&int(3)), "3/1");
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(to_decimal(&rat(-1, 3), 6), "-0.333333");
        assert_eq!(to_decimal(&rat(2, 3), 6), "0.666667");
        assert_eq!(to_decimal(&int(5), 2), "5.00");
        assert_eq!(to_decimal(&rat(-1, 200000000), 6), "0.000000");
    }
}
