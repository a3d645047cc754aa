//! Group law on tropical elliptic curves.
//!
//! A smooth cubic of genus 1 has a unique cycle. Points of the cycle are
//! addressed by edge index and lattice-length parameter; the cycle is measured
//! in lattice length only, so no square roots ever appear. With a base point
//! `O`, the map `lambda` sends a point to its counter-clockwise lattice distance
//! from `O` divided by the total length `L`, and addition is addition of
//! `lambda` values mod 1.
//!
//! Tentacle points (points off the cycle) are retracted to the cycle vertex
//! their tentacle hangs from when a divisor is reduced. Equivalence of points on
//! one tentacle is proven for tropical elliptic curves; equivalence with the
//! attachment vertex is the limiting case of that argument.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::curve::{build_curve, Piece, TropicalCurve};
use crate::error::{Result, TropError};
use crate::exact::{
    int, lattice_direction, parse_point, serde_rational, solve2, IntVec2, Point2, Rational,
};
use crate::intersect::{stable_intersection, IntersectionMultiset};
use crate::poly::TropicalPolynomial;

/// Primitive ray directions of a tropical line.
pub const LINE_RAYS: [IntVec2; 3] = [IntVec2::new(-1, 0), IntVec2::new(0, -1), IntVec2::new(1, 1)];

/// Denominator of the fallback step `j * L / FALLBACK_DENOMINATOR`.
pub const FALLBACK_DENOMINATOR: i64 = 1009;

/// A point of the cycle: `V_edge + t * dir(E_edge)` with `0 <= t < len(E_edge)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclePoint {
    pub edge: usize,
    #[serde(with = "serde_rational")]
    pub t: Rational,
}

impl CyclePoint {
    pub fn new(edge: usize, t: Rational) -> Self {
        CyclePoint { edge, t }
    }
}

/// The cycle of an elliptic curve with a chosen base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleModel {
    pub curve: TropicalCurve,
    /// Curve vertex ids of `V_1 .. V_n`, counter-clockwise.
    pub vertex_ids: Vec<usize>,
    pub vertices: Vec<Point2>,
    /// Primitive direction of `E_i = [V_i, V_{i+1}]`.
    pub directions: Vec<IntVec2>,
    /// Lattice length of `E_i`.
    pub lengths: Vec<Rational>,
    pub total_length: Rational,
    /// Base point; either `(0, 0)` (a vertex) or a point inside the last edge.
    pub origin: CyclePoint,
    prefix: Vec<Rational>,
}

/// A connected component of the curve minus its cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tentacle {
    /// Index `i` of the cycle vertex `V_{i+1}` the tentacle hangs from.
    pub attachment: usize,
    pub attachment_point: Point2,
    /// Curve vertices of the tentacle (not including the attachment vertex).
    pub vertices: Vec<usize>,
    pub bounded_edges: Vec<usize>,
    pub rays: Vec<usize>,
}

/// Where a curve point sits relative to the cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveLocation {
    Cycle(CyclePoint),
    Tentacle(usize),
}

/// Finite formal sum of curve points.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Divisor {
    pub terms: Vec<(Point2, i64)>,
}

impl Divisor {
    pub fn new(terms: Vec<(Point2, i64)>) -> Self {
        Divisor { terms }
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(_, c)| c).sum()
    }
}

/// Parses sums like `(5/2,2) + (4,10/3) - 2*O`; `O` stands for `origin`.
pub fn parse_divisor(text: &str, origin: &Point2) -> Result<Divisor> {
    let src = text.as_bytes();
    let err = |pos: usize, msg: &str| TropError::Syntax { pos, msg: msg.to_string() };
    let mut terms: Vec<(Point2, i64)> = Vec::new();
    let mut pos = 0;
    let skip = |pos: &mut usize| {
        while *pos < src.len() && src[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip(&mut pos);
    if pos == src.len() {
        return Err(TropError::EmptyInput);
    }
    let mut first = true;
    while pos < src.len() {
        let mut sign = 1;
        match src[pos] {
            b'+' => pos += 1,
            b'-' => {
                sign = -1;
                pos += 1;
            }
            _ if first => {}
            _ => return Err(err(pos, "expected + or -")),
        }
        first = false;
        skip(&mut pos);
        let start = pos;
        while pos < src.len() && src[pos].is_ascii_digit() {
            pos += 1;
        }
        let coeff: i64 = if pos > start {
            let k = text[start..pos].parse().map_err(|_| err(start, "coefficient too large"))?;
            skip(&mut pos);
            if pos < src.len() && src[pos] == b'*' {
                pos += 1;
                skip(&mut pos);
            }
            k
        } else {
            1
        };
        let point = match src.get(pos) {
            Some(b'O') => {
                pos += 1;
                origin.clone()
            }
            Some(b'(') => {
                let close = text[pos..].find(')').ok_or_else(|| err(pos, "unclosed ("))? + pos;
                let p = parse_point(&text[pos + 1..close]).map_err(|e| match e {
                    TropError::InvalidRational(_) => err(pos + 1, "invalid coordinate"),
                    other => other,
                })?;
                pos = close + 1;
                p
            }
            _ => return Err(err(pos, "expected a point (x,y) or O")),
        };
        terms.push((point, sign * coeff));
        skip(&mut pos);
    }
    Ok(Divisor::new(terms))
}

fn ensure_elliptic(c: &TropicalCurve) -> Result<()> {
    if !c.is_smooth() {
        return Err(TropError::NotElliptic("curve is not smooth".into()));
    }
    let degree = c.degree();
    if degree != 3 {
        return Err(TropError::NotElliptic(format!("degree {degree}, expected 3")));
    }
    let genus = c.genus()?;
    if genus != 1 {
        return Err(TropError::NotElliptic(format!("genus {genus}, expected 1")));
    }
    Ok(())
}

fn signed_area2(pts: &[Point2]) -> Rational {
    let n = pts.len();
    (0..n)
        .map(|i| {
            let (a, b) = (&pts[i], &pts[(i + 1) % n]);
            &a.x * &b.y - &a.y * &b.x
        })
        .sum()
}

/// Unique cycle of a tropical elliptic curve, counter-clockwise, starting at the
/// lexicographically smallest vertex, which is also the initial base point.
pub fn extract_cycle(c: &TropicalCurve) -> Result<CycleModel> {
    ensure_elliptic(c)?;
    let n = c.vertices.len();
    let mut alive: Vec<bool> = vec![true; c.bounded_edges.len()];
    let mut degree = vec![0usize; n];
    for e in &c.bounded_edges {
        degree[e.from] += 1;
        degree[e.to] += 1;
    }
    // prune leaves of the bounded graph until only the cycle remains
    loop {
        let mut changed = false;
        for (i, e) in c.bounded_edges.iter().enumerate() {
            if alive[i] && (degree[e.from] == 1 || degree[e.to] == 1) {
                alive[i] = false;
                degree[e.from] -= 1;
                degree[e.to] -= 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, e) in c.bounded_edges.iter().enumerate() {
        if alive[i] {
            adj.entry(e.from).or_default().push(e.to);
            adj.entry(e.to).or_default().push(e.from);
        }
    }
    if adj.is_empty() || adj.values().any(|nb| nb.len() != 2) {
        return Err(TropError::NotElliptic("bounded graph has no simple cycle".into()));
    }
    let start = *adj
        .keys()
        .min_by(|&&a, &&b| c.vertices[a].point.cmp(&c.vertices[b].point))
        .unwrap();
    let mut ids = vec![start];
    let mut prev = start;
    let mut cur = adj[&start][0];
    while cur != start {
        ids.push(cur);
        let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
        prev = cur;
        cur = next;
    }
    if ids.len() != adj.len() {
        return Err(TropError::NotElliptic("bounded graph has more than one cycle".into()));
    }
    let pts: Vec<Point2> = ids.iter().map(|&i| c.vertices[i].point.clone()).collect();
    if signed_area2(&pts).is_negative() {
        ids[1..].reverse();
    }
    Ok(CycleModel::from_ids(c.clone(), ids, None))
}

impl CycleModel {
    fn from_ids(curve: TropicalCurve, vertex_ids: Vec<usize>, origin: Option<CyclePoint>) -> Self {
        let vertices: Vec<Point2> = vertex_ids
            .iter()
            .map(|&i| curve.vertices[i].point.clone())
            .collect();
        let n = vertices.len();
        let mut directions = Vec::with_capacity(n);
        let mut lengths = Vec::with_capacity(n);
        for i in 0..n {
            let (d, len) = lattice_direction(&vertices[i], &vertices[(i + 1) % n])
                .expect("distinct cycle vertices");
            directions.push(d);
            lengths.push(len);
        }
        let mut prefix = Vec::with_capacity(n);
        let mut acc = Rational::zero();
        for len in &lengths {
            prefix.push(acc.clone());
            acc += len;
        }
        CycleModel {
            curve,
            vertex_ids,
            vertices,
            directions,
            lengths,
            total_length: acc,
            origin: origin.unwrap_or_else(|| CyclePoint::new(0, Rational::zero())),
            prefix,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Counter-clockwise lattice distance from `V_1` to `p`.
    pub fn arc(&self, p: &CyclePoint) -> Rational {
        &self.prefix[p.edge] + &p.t
    }

    fn reduce_mod_total(&self, s: Rational) -> Rational {
        let l = &self.total_length;
        let k = (&s / l).floor();
        s - k * l
    }

    /// Cycle point at arc position `s` (taken mod `L`).
    pub fn point_at_arc(&self, s: Rational) -> CyclePoint {
        let s = self.reduce_mod_total(s);
        let i = self.prefix.partition_point(|p| p <= &s) - 1;
        CyclePoint::new(i, s - &self.prefix[i])
    }

    /// Moves `p` by lattice distance `delta` (counter-clockwise for positive `delta`).
    pub fn shift(&self, p: &CyclePoint, delta: &Rational) -> CyclePoint {
        self.point_at_arc(self.arc(p) + delta)
    }

    pub fn vertex(&self, i: usize) -> CyclePoint {
        CyclePoint::new(i % self.len(), Rational::zero())
    }

    pub fn embed(&self, p: &CyclePoint) -> Point2 {
        self.vertices[p.edge].offset(self.directions[p.edge], &p.t)
    }

    /// Cycle point at a plane point, if it lies on the cycle.
    pub fn locate(&self, p: &Point2) -> Option<CyclePoint> {
        (0..self.len()).find_map(|i| {
            let piece = Piece {
                origin: self.vertices[i].clone(),
                direction: self.directions[i],
                extent: crate::curve::Extent::Segment(self.lengths[i].clone()),
                weight: 1,
            };
            piece
                .param_of(p)
                .filter(|t| !t.is_negative() && t < &self.lengths[i])
                .map(|t| CyclePoint::new(i, t))
        })
    }

    /// Re-indexes so that `V_1 = O` if `O` is a vertex, else `O` lies inside `E_n`.
    pub fn set_origin(&self, o: &Point2) -> Result<CycleModel> {
        let at = self.locate(o).ok_or(TropError::NotOnCycle)?;
        let n = self.len();
        let (first, origin) = if at.t.is_zero() {
            (at.edge, CyclePoint::new(0, Rational::zero()))
        } else {
            ((at.edge + 1) % n, CyclePoint::new(n - 1, at.t))
        };
        let ids: Vec<usize> = (0..n).map(|k| self.vertex_ids[(first + k) % n]).collect();
        Ok(CycleModel::from_ids(self.curve.clone(), ids, Some(origin)))
    }

    /// Converts a point of another model of the same cycle into this model's indexing.
    pub fn reindex(&self, other: &CycleModel, p: &CyclePoint) -> Result<CyclePoint> {
        self.locate(&other.embed(p)).ok_or(TropError::NotOnCycle)
    }

    pub fn origin_point(&self) -> Point2 {
        self.embed(&self.origin)
    }

    /// Position in `R/Z`, as a representative in `[0, 1)`.
    pub fn lambda(&self, p: &CyclePoint) -> Rational {
        self.reduce_mod_total(self.arc(p) - self.arc(&self.origin)) / &self.total_length
    }

    /// `L * (lambda(Q) - lambda(P))` in `R / LZ`, representative in `[0, L)`.
    pub fn lattice_distance(&self, p: &CyclePoint, q: &CyclePoint) -> Rational {
        self.reduce_mod_total(self.arc(q) - self.arc(p))
    }

    pub fn group_add(&self, p: &CyclePoint, q: &CyclePoint) -> CyclePoint {
        let o = self.arc(&self.origin);
        self.point_at_arc(self.arc(p) + self.arc(q) - o)
    }

    pub fn group_neg(&self, p: &CyclePoint) -> CyclePoint {
        let o = self.arc(&self.origin);
        self.point_at_arc(int(2) * o - self.arc(p))
    }

    /// `k * P` in the group.
    pub fn group_mul(&self, k: i64, p: &CyclePoint) -> CyclePoint {
        let o = self.arc(&self.origin);
        self.point_at_arc(&o + int(k) * (self.arc(p) - &o))
    }

    /// `P + Q ~ P2 + Q2`, decided by `d(P, P2) = -d(Q, Q2)` mod `L`.
    pub fn linear_equiv_pairs(
        &self,
        p: &CyclePoint,
        q: &CyclePoint,
        p2: &CyclePoint,
        q2: &CyclePoint,
    ) -> bool {
        let s = self.lattice_distance(p, p2) + self.lattice_distance(q, q2);
        self.reduce_mod_total(s).is_zero()
    }

    /// Components of the curve minus the cycle, one per attachment vertex.
    pub fn tentacles(&self) -> Vec<Tentacle> {
        let c = &self.curve;
        let on_cycle: BTreeMap<usize, usize> = self
            .vertex_ids
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let n = self.len();
        let cycle_edges: BTreeSet<(usize, usize)> = (0..n)
            .map(|i| {
                let (a, b) = (self.vertex_ids[i], self.vertex_ids[(i + 1) % n]);
                (a.min(b), a.max(b))
            })
            .collect();
        // union-find over curve vertices not on the cycle
        let mut parent: Vec<usize> = (0..c.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let tentacle_edges: Vec<usize> = c
            .bounded_edges
            .iter()
            .enumerate()
            .filter(|(_, e)| !cycle_edges.contains(&(e.from.min(e.to), e.from.max(e.to))))
            .map(|(i, _)| i)
            .collect();
        for &i in &tentacle_edges {
            let e = &c.bounded_edges[i];
            if !on_cycle.contains_key(&e.from) && !on_cycle.contains_key(&e.to) {
                let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
                parent[a] = b;
            }
        }
        // a component is keyed by its attachment cycle index
        let mut attach_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        for &i in &tentacle_edges {
            let e = &c.bounded_edges[i];
            for (x, y) in [(e.from, e.to), (e.to, e.from)] {
                if let (Some(&ci), false) = (on_cycle.get(&x), on_cycle.contains_key(&y)) {
                    attach_of_root.insert(find(&mut parent, y), ci);
                }
            }
        }
        let mut out: BTreeMap<usize, Tentacle> = BTreeMap::new();
        let blank = |ci: usize| Tentacle {
            attachment: ci,
            attachment_point: self.vertices[ci].clone(),
            vertices: Vec::new(),
            bounded_edges: Vec::new(),
            rays: Vec::new(),
        };
        for v in 0..c.vertices.len() {
            if !on_cycle.contains_key(&v) {
                let root = find(&mut parent, v);
                let ci = attach_of_root[&root];
                out.entry(ci).or_insert_with(|| blank(ci)).vertices.push(v);
            }
        }
        for &i in &tentacle_edges {
            let e = &c.bounded_edges[i];
            let outer = if on_cycle.contains_key(&e.from) { e.to } else { e.from };
            let root = find(&mut parent, outer);
            let ci = attach_of_root[&root];
            out.entry(ci).or_insert_with(|| blank(ci)).bounded_edges.push(i);
        }
        for (i, r) in c.rays.iter().enumerate() {
            let ci = match on_cycle.get(&r.vertex) {
                Some(&ci) => ci,
                None => attach_of_root[&find(&mut parent, r.vertex)],
            };
            out.entry(ci).or_insert_with(|| blank(ci)).rays.push(i);
        }
        out.into_values().collect()
    }

    /// Locates a curve point on the cycle or on a tentacle (index into [`CycleModel::tentacles`]).
    pub fn locate_on_curve(&self, p: &Point2) -> Result<CurveLocation> {
        if let Some(cp) = self.locate(p) {
            return Ok(CurveLocation::Cycle(cp));
        }
        let c = &self.curve;
        let pieces = c.pieces();
        let nb = c.bounded_edges.len();
        for (k, t) in self.tentacles().iter().enumerate() {
            let hit_vertex = t.vertices.iter().any(|&v| &c.vertices[v].point == p);
            let hit_edge = t.bounded_edges.iter().any(|&i| pieces[i].contains(p));
            let hit_ray = t.rays.iter().any(|&i| pieces[nb + i].contains(p));
            if hit_vertex || hit_edge || hit_ray {
                return Ok(CurveLocation::Tentacle(k));
            }
        }
        Err(TropError::NotOnCurve)
    }

    /// Cycle point equivalent to a curve point: itself, or its tentacle's attachment vertex.
    pub fn retract(&self, p: &Point2) -> Result<CyclePoint> {
        match self.locate_on_curve(p)? {
            CurveLocation::Cycle(cp) => Ok(cp),
            CurveLocation::Tentacle(k) => Ok(self.vertex(self.tentacles()[k].attachment)),
        }
    }

    /// Reduces a degree-0 divisor to the unique `P` with `D ~ P - O`.
    pub fn reduce_divisor(&self, d: &Divisor) -> Result<CyclePoint> {
        let degree = d.degree();
        if degree != 0 {
            return Err(TropError::NonZeroDegree(degree));
        }
        let mut pos: Vec<CyclePoint> = Vec::new();
        let mut neg: Vec<CyclePoint> = Vec::new();
        for (p, k) in &d.terms {
            let cp = self.retract(p)?;
            let bucket = if *k > 0 { &mut pos } else { &mut neg };
            for _ in 0..k.unsigned_abs() {
                bucket.push(cp.clone());
            }
        }
        // P1 + P2 ~ O + P12 on both sides until one point remains on each
        while pos.len() > 1 {
            let (a, b) = (pos.pop().unwrap(), pos.pop().unwrap());
            pos.push(self.group_add(&a, &b));
            let (a, b) = (neg.pop().unwrap(), neg.pop().unwrap());
            neg.push(self.group_add(&a, &b));
        }
        match (pos.pop(), neg.pop()) {
            // P1 - Q1 ~ P - O with d(P, P1) = d(O, Q1)
            (Some(p1), Some(q1)) => {
                let shift = self.lattice_distance(&self.origin, &q1);
                Ok(self.point_at_arc(self.arc(&p1) - shift))
            }
            _ => Ok(self.origin.clone()),
        }
    }

    /// Stable intersection of a tropical line with the curve.
    pub fn line_divisor(&self, line: &TropicalCurve) -> IntersectionMultiset {
        stable_intersection(line, &self.curve)
    }

    /// `(P, Q)` is good if the stable line through them meets the curve stably in both.
    pub fn is_good_pair(&self, p: &CyclePoint, q: &CyclePoint) -> bool {
        self.good_pair_third(p, q).is_some()
    }

    /// For a good pair, the line and the third stable intersection point.
    pub fn good_pair_third(&self, p: &CyclePoint, q: &CyclePoint) -> Option<(Point2, Point2)> {
        if p == q {
            return None;
        }
        let (pp, qp) = (self.embed(p), self.embed(q));
        let center = stable_line_center(&pp, &qp).ok()?;
        let line = tropical_line(&center);
        let meet = self.line_divisor(&line);
        let mut rest: BTreeMap<Point2, i64> = meet
            .entries
            .iter()
            .map(|e| (e.point.clone(), e.multiplicity))
            .collect();
        for x in [&pp, &qp] {
            match rest.get_mut(x) {
                Some(m) if *m > 0 => *m -= 1,
                _ => return None,
            }
        }
        let third: Vec<&Point2> = rest.iter().filter(|(_, &m)| m > 0).map(|(p, _)| p).collect();
        assert_eq!(meet.total, 3, "a line meets a cubic in three points");
        Some((center, third[0].clone()))
    }

    /// Searches `(P + delta_j, Q - delta_j)`, `j = 0, 1, ...`, for a good pair whose
    /// third point lies on the cycle.
    fn line_step(&self, p: &CyclePoint, q: &CyclePoint) -> Result<LineStep> {
        let step = &self.total_length / int(FALLBACK_DENOMINATOR);
        for j in 0..FALLBACK_DENOMINATOR {
            let delta = &step * int(j);
            let (a, b) = (self.shift(p, &delta), self.shift(q, &-&delta));
            if let Some((center, third)) = self.good_pair_third(&a, &b) {
                if let Some(r) = self.locate(&third) {
                    return Ok(LineStep {
                        first: a,
                        second: b,
                        center,
                        third: r,
                        fallback_steps: j as usize,
                    });
                }
            }
        }
        Err(TropError::NoGoodConfiguration)
    }

    /// Addition by two line constructions: `R` third on the line through `P, Q`,
    /// then the sum is third on the line through `R, O`.
    pub fn geometric_add(&self, p: &CyclePoint, q: &CyclePoint) -> Result<CyclePoint> {
        Ok(self.geometric_add_traced(p, q)?.sum)
    }

    pub fn geometric_add_traced(&self, p: &CyclePoint, q: &CyclePoint) -> Result<GeometricSum> {
        let first = self.line_step(p, q)?;
        let second = self.line_step(&first.third, &self.origin)?;
        Ok(GeometricSum { sum: second.third.clone(), first, second })
    }
}

/// One line construction of the geometric addition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineStep {
    pub first: CyclePoint,
    pub second: CyclePoint,
    pub center: Point2,
    pub third: CyclePoint,
    /// Number of fallback moves `j` before a good pair was found (0 if none were needed).
    pub fallback_steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricSum {
    pub sum: CyclePoint,
    pub first: LineStep,
    pub second: LineStep,
}

impl GeometricSum {
    pub fn used_fallback(&self) -> bool {
        self.first.fallback_steps > 0 || self.second.fallback_steps > 0
    }
}

/// The tropical line `max(0, x - cx, y - cy)` centered at `c`.
pub fn tropical_line(center: &Point2) -> TropicalCurve {
    let f = TropicalPolynomial::affine([
        (IntVec2::new(0, 0), Rational::zero()),
        (IntVec2::new(1, 0), -center.x.clone()),
        (IntVec2::new(0, 1), -center.y.clone()),
    ])
    .expect("three terms");
    build_curve(&f).expect("a line is never empty")
}

/// Perturbation used to pick the stable line when several lines pass through both points.
const LINE_PERTURBATION: IntVec2 = IntVec2::new(1, 2);

/// Center of the stable tropical line through `P` and `Q`.
///
/// Each candidate puts `P` on ray `k` and `Q` on ray `l != k`. `Q` is replaced by
/// `Q + eps * (1, 2)`; a candidate is kept when both ray parameters are
/// nonnegative for all small `eps > 0`, and the center is its limit at `eps = 0`.
pub fn stable_line_center(p: &Point2, q: &Point2) -> Result<Point2> {
    if p == q {
        return Err(TropError::CoincidentPoints);
    }
    let diff = p.sub(q);
    let pert = LINE_PERTURBATION.to_point().scale(&int(-1));
    let nonneg = |a: &Rational, b: &Rational| a.is_positive() || (a.is_zero() && !b.is_negative());
    let mut centers: Vec<Point2> = Vec::new();
    for (k, &pk) in LINE_RAYS.iter().enumerate() {
        for (l, &pl) in LINE_RAYS.iter().enumerate() {
            if k == l {
                continue;
            }
            // s * pk - t * pl = P - Q(eps)
            let (s0, t0) = solve2(pk, -pl, &diff).expect("line rays are independent");
            let (s1, t1) = solve2(pk, -pl, &pert).expect("line rays are independent");
            if nonneg(&s0, &s1) && nonneg(&t0, &t1) {
                centers.push(p.offset(pk, &-s0));
            }
        }
    }
    centers.dedup();
    assert!(
        centers.windows(2).all(|w| w[0] == w[1]),
        "stable line is not unique"
    );
    centers.pop().ok_or(TropError::CoincidentPoints)
}

/// The stable tropical line through two distinct points.
pub fn stable_line_through(p: &Point2, q: &Point2) -> Result<TropicalCurve> {
    Ok(tropical_line(&stable_line_center(p, q)?))
}

/// Random cycle point with `t = len * k / m`, `m <= 64`.
pub fn random_cycle_point<R: rand::Rng>(model: &CycleModel, rng: &mut R) -> CyclePoint {
    let edge = rng.gen_range(0..model.len());
    let m: i64 = rng.gen_range(1..=64);
    let k: i64 = rng.gen_range(0..m);
    let t = &model.lengths[edge] * Rational::new(k.into(), m.into());
    CyclePoint::new(edge, t)
}

/// One failed check of [`verify_group_axioms`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomFailure {
    pub trial: usize,
    pub axiom: String,
    pub points: Vec<CyclePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub trials: usize,
    pub seed: u64,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.failures {
            out.push_str(&format!("group-axioms trial={} FAIL {} {:?}\n", f.trial, f.axiom, f.points));
        }
        out.push_str(&format!(
            "group-axioms trials={} seed={} failures={} {}\n",
            self.trials,
            self.seed,
            self.failures.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Checks associativity, commutativity, identity, inverses and the `lambda`
/// homomorphism on seeded random rational cycle points.
pub fn verify_group_axioms(model: &CycleModel, trials: usize, seed: u64) -> AxiomReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let one = Rational::from_integer(1.into());
    let frac = |r: Rational| {
        let k = r.floor();
        r - k
    };
    for trial in 0..trials {
        let p = random_cycle_point(model, &mut rng);
        let q = random_cycle_point(model, &mut rng);
        let r = random_cycle_point(model, &mut rng);
        let o = &model.origin;
        let pq = model.group_add(&p, &q);
        let checks = [
            ("associativity", model.group_add(&pq, &r) == model.group_add(&p, &model.group_add(&q, &r))),
            ("commutativity", pq == model.group_add(&q, &p)),
            ("identity", model.group_add(&p, o) == p && model.group_add(o, &p) == p),
            ("inverse", model.group_add(&p, &model.group_neg(&p)) == *o),
            (
                "lambda-homomorphism",
                model.lambda(&pq) == frac(model.lambda(&p) + model.lambda(&q)) && model.lambda(&pq) < one,
            ),
        ];
        for (axiom, ok) in checks {
            if !ok {
                failures.push(AxiomFailure {
                    trial,
                    axiom: axiom.to_string(),
                    points: vec![p.clone(), q.clone(), r.clone()],
                });
            }
        }
    }
    AxiomReport { trials, seed, failures }
}

/// Polynomial of the reference cubic: all of the degree-3 triangle, coefficient `-(i^2 + ij + j^2)`.
pub fn reference_cubic() -> TropicalPolynomial {
    let terms = crate::intersect::full_support(3)
        .into_iter()
        .map(|a| (a, int(-(a.x * a.x + a.x * a.y + a.y * a.y))));
    TropicalPolynomial::affine(terms).expect("ten terms")
}
