//! The tropical curve `V(f)` as a weighted planar graph dual to the subdivision.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, TropError};
use crate::exact::{det2, int, lattice_direction, solve2, IntVec2, Point2, Rational};
use crate::poly::TropicalPolynomial;
use crate::subdiv::{dual_subdivision, DualSubdivision, EdgeKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveVertex {
    pub point: Point2,
    /// Index of the dual 2-cell in the subdivision.
    pub cell: usize,
}

/// A bounded edge from `from` to `to`; `direction` is primitive and points from `from` to `to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedEdge {
    pub from: usize,
    pub to: usize,
    pub direction: IntVec2,
    pub weight: i64,
    pub dual: (IntVec2, IntVec2),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub vertex: usize,
    pub direction: IntVec2,
    pub weight: i64,
    pub dual: (IntVec2, IntVec2),
}

/// A whole line without vertices, as produced by a one-dimensional Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullLine {
    pub point: Point2,
    pub direction: IntVec2,
    pub weight: i64,
    pub dual: (IntVec2, IntVec2),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCurve {
    pub polynomial: TropicalPolynomial,
    pub subdivision: DualSubdivision,
    pub vertices: Vec<CurveVertex>,
    pub bounded_edges: Vec<BoundedEdge>,
    pub rays: Vec<Ray>,
    pub lines: Vec<FullLine>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexReport {
    pub valence: usize,
    pub multiplicity: Option<i64>,
}

/// How far a [`Piece`] extends from its origin along its direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extent {
    /// Parameter range `[0, len]` in lattice units.
    Segment(Rational),
    /// `[0, inf)`
    Ray,
    /// `(-inf, inf)`
    Line,
}

/// A straight piece of a curve: `origin + t * direction` over the extent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub origin: Point2,
    pub direction: IntVec2,
    pub extent: Extent,
    pub weight: i64,
}

impl Piece {
    pub fn param_in_range(&self, t: &Rational) -> bool {
        match &self.extent {
            Extent::Segment(len) => !t.is_negative() && t <= len,
            Extent::Ray => !t.is_negative(),
            Extent::Line => true,
        }
    }

    pub fn point_at(&self, t: &Rational) -> Point2 {
        self.origin.offset(self.direction, t)
    }

    /// Parameter of `p` along the supporting line, or `None` if `p` is off that line.
    pub fn param_of(&self, p: &Point2) -> Option<Rational> {
        let d = p.sub(&self.origin);
        let cross = &d.x * int(self.direction.y) - &d.y * int(self.direction.x);
        if !cross.is_zero() {
            return None;
        }
        if self.direction.x != 0 {
            Some(d.x / int(self.direction.x))
        } else {
            Some(d.y / int(self.direction.y))
        }
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.param_of(p).is_some_and(|t| self.param_in_range(&t))
    }
}

/// Builds `V(f)`. Homogeneous input is dehomogenized first.
pub fn build_curve(f: &TropicalPolynomial) -> Result<TropicalCurve> {
    let f = f.to_affine();
    let subdivision = dual_subdivision(&f);
    if subdivision.dimension == 0 {
        return Err(TropError::EmptyVariety);
    }
    let coeff = |a: IntVec2| f.coefficient(a).expect("subdivision vertex is in the support").clone();

    let mut vertices = Vec::with_capacity(subdivision.cells.len());
    for (ci, cell) in subdivision.cells.iter().enumerate() {
        let (c0, c1, c2) = (cell[0], cell[1], cell[2]);
        let (l0, l1, l2) = (coeff(c0), coeff(c1), coeff(c2));
        // (c1 - c0) . p = l0 - l1 and (c2 - c0) . p = l0 - l2
        let (u, w) = (c1 - c0, c2 - c0);
        let rhs = Point2::new(&l0 - &l1, &l0 - &l2);
        let (x, y) = solve2(IntVec2::new(u.x, w.x), IntVec2::new(u.y, w.y), &rhs)
            .expect("cell corners are not collinear");
        let point = Point2::new(x, y);
        let value = TropicalPolynomial::term_value(&l0, c0, &point);
        assert_eq!(f.evaluate(&point), value, "cell plane is not an upper face");
        for &c in cell {
            assert_eq!(
                TropicalPolynomial::term_value(&coeff(c), c, &point),
                value,
                "inconsistent tie system in cell {ci}"
            );
        }
        vertices.push(CurveVertex { point, cell: ci });
    }

    let mut bounded_edges = Vec::new();
    let mut rays = Vec::new();
    let mut lines = Vec::new();
    for e in &subdivision.edges {
        let (_, weight) = (e.b - e.a).primitive()?;
        let dual = (e.a, e.b);
        match (subdivision.dimension, e.kind) {
            (1, _) => {
                let n = e.b - e.a;
                // n . p = l_a - l_b, take p on the line through the origin spanned by n
                let t = (coeff(e.a) - coeff(e.b)) / int(n.dot(n));
                let point = Point2::new(&t * int(n.x), &t * int(n.y));
                let (direction, _) = n.perp().primitive()?;
                lines.push(FullLine { point, direction, weight, dual });
            }
            (_, EdgeKind::Interior) => {
                let (from, to) = (e.cells[0], e.cells[1]);
                let (direction, _) = lattice_direction(&vertices[from].point, &vertices[to].point)
                    .expect("distinct cells have distinct dual vertices");
                bounded_edges.push(BoundedEdge { from, to, direction, weight, dual });
            }
            (_, EdgeKind::Boundary) => {
                let vertex = e.cells[0];
                let (perp, _) = (e.b - e.a).perp().primitive()?;
                let base = &vertices[vertex].point;
                let step = |d: IntVec2| base.offset(d, &int(1));
                let dominates = |d: IntVec2| {
                    let q = step(d);
                    let best = f.evaluate(&q);
                    TropicalPolynomial::term_value(&coeff(e.a), e.a, &q) == best
                        && TropicalPolynomial::term_value(&coeff(e.b), e.b, &q) == best
                };
                let direction = if dominates(perp) {
                    perp
                } else {
                    assert!(dominates(-perp), "no ray orientation keeps the dual terms maximal");
                    -perp
                };
                rays.push(Ray { vertex, direction, weight, dual });
            }
        }
    }

    Ok(TropicalCurve {
        polynomial: f,
        subdivision,
        vertices,
        bounded_edges,
        rays,
        lines,
    })
}

impl TropicalCurve {
    pub fn from_text(text: &str) -> Result<TropicalCurve> {
        build_curve(&TropicalPolynomial::parse(text)?)
    }

    /// Outgoing `(primitive direction, weight)` pairs at a vertex.
    pub fn incident(&self, v: usize) -> Vec<(IntVec2, i64)> {
        let mut out = Vec::new();
        for e in &self.bounded_edges {
            if e.from == v {
                out.push((e.direction, e.weight));
            }
            if e.to == v {
                out.push((-e.direction, e.weight));
            }
        }
        for r in &self.rays {
            if r.vertex == v {
                out.push((r.direction, r.weight));
            }
        }
        out
    }

    pub fn valence(&self, v: usize) -> usize {
        self.incident(v).len()
    }

    /// Weighted primitive directions sum to zero at every vertex.
    pub fn check_balancing(&self) -> bool {
        (0..self.vertices.len()).all(|v| {
            self.incident(v)
                .into_iter()
                .fold(IntVec2::ZERO, |acc, (d, m)| acc + m * d)
                .is_zero()
        })
    }

    /// `m_i m_j |det(v_i, v_j)|` for a 3-valent vertex.
    pub fn vertex_multiplicity(&self, v: usize) -> Result<i64> {
        let inc = self.incident(v);
        if inc.len() != 3 {
            return Err(TropError::NotThreeValent(inc.len()));
        }
        let pair = |i: usize, j: usize| inc[i].1 * inc[j].1 * det2(inc[i].0, inc[j].0).abs();
        let m = pair(0, 1);
        assert!(
            m == pair(1, 2) && m == pair(0, 2),
            "vertex multiplicity depends on the chosen pair"
        );
        Ok(m)
    }

    pub fn vertex_report(&self, v: usize) -> VertexReport {
        VertexReport {
            valence: self.valence(v),
            multiplicity: self.vertex_multiplicity(v).ok(),
        }
    }

    /// At least one vertex, and every vertex 3-valent of multiplicity 1.
    pub fn is_smooth(&self) -> bool {
        !self.vertices.is_empty()
            && (0..self.vertices.len()).all(|v| self.vertex_multiplicity(v) == Ok(1))
    }

    /// Number of independent cycles of the graph formed by vertices and bounded edges.
    pub fn cycle_rank(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = n;
        for e in &self.bounded_edges {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        self.bounded_edges.len() + components - n
    }

    /// Interior lattice points of the subdivision; smooth curves only.
    pub fn genus(&self) -> Result<usize> {
        if !self.is_smooth() {
            return Err(TropError::NotSmooth);
        }
        let g = self.subdivision.interior_lattice_vertex_count();
        assert_eq!(g, self.cycle_rank(), "genus disagrees with the cycle rank");
        Ok(g)
    }

    /// Membership by the tie criterion: at least two terms attain the maximum.
    pub fn contains(&self, p: &Point2) -> bool {
        self.polynomial.vanishes_at(p)
    }

    /// Membership by geometry: `p` lies on some vertex, edge, ray or line.
    pub fn on_graph(&self, p: &Point2) -> bool {
        self.pieces().iter().any(|piece| piece.contains(p))
    }

    pub fn is_vertex(&self, p: &Point2) -> bool {
        self.vertices.iter().any(|v| &v.point == p)
    }

    /// All edges, rays and lines as pieces; bounded edges are parametrized in lattice length.
    pub fn pieces(&self) -> Vec<Piece> {
        let mut out = Vec::new();
        for e in &self.bounded_edges {
            let a = &self.vertices[e.from].point;
            let b = &self.vertices[e.to].point;
            let (_, len) = lattice_direction(a, b).expect("nondegenerate edge");
            out.push(Piece {
                origin: a.clone(),
                direction: e.direction,
                extent: Extent::Segment(len),
                weight: e.weight,
            });
        }
        for r in &self.rays {
            out.push(Piece {
                origin: self.vertices[r.vertex].point.clone(),
                direction: r.direction,
                extent: Extent::Ray,
                weight: r.weight,
            });
        }
        for l in &self.lines {
            out.push(Piece {
                origin: l.point.clone(),
                direction: l.direction,
                extent: Extent::Line,
                weight: l.weight,
            });
        }
        out
    }

    /// Translated copy (the polynomial is re-parametrized so `V(f)` moves by `shift`).
    pub fn translate(&self, shift: &Point2) -> TropicalCurve {
        // f(p - s) has coefficients lambda_a - a . s
        let poly = TropicalPolynomial::affine(
            self.polynomial
                .affine_terms()
                .map(|(a, c)| (a, c - shift.dot(a))),
        )
        .expect("same support");
        let mut out = self.clone();
        out.polynomial = poly;
        for v in &mut out.vertices {
            v.point = v.point.add(shift);
        }
        for l in &mut out.lines {
            l.point = l.point.add(shift);
        }
        out
    }

    pub fn degree(&self) -> i64 {
        self.polynomial.curve_degree().degree
    }
}

/// Free-function form of [`TropicalCurve::check_balancing`].
pub fn check_balancing(c: &TropicalCurve) -> bool {
    c.check_balancing()
}

/// Free-function form of [`TropicalCurve::contains`].
pub fn curve_contains(c: &TropicalCurve, p: &Point2) -> bool {
    c.contains(p)
}
