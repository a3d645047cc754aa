//! Regular subdivision of the Newton polygon induced by the coefficients.
//!
//! Each support point `(a, b)` is lifted to `(a, b, lambda_ab)`; the upper faces
//! of the lifted hull project to the cells of the subdivision.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{convex_hull, det2, int, polygon_area, rat, IntVec2, LatticePolygon, Rational};
use crate::poly::TropicalPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Interior,
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivEdge {
    pub a: IntVec2,
    pub b: IntVec2,
    pub kind: EdgeKind,
    /// Indices of the 2-cells containing the edge (empty for 1-dimensional subdivisions).
    pub cells: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualSubdivision {
    /// 0, 1 or 2, the dimension of the Newton polygon.
    pub dimension: usize,
    pub newton: LatticePolygon,
    /// Counter-clockwise corner lists of the 2-cells.
    pub cells: Vec<Vec<IntVec2>>,
    pub edges: Vec<SubdivEdge>,
    /// Sorted corners of all cells and edges.
    pub vertices: Vec<IntVec2>,
}

struct Lifted {
    p: IntVec2,
    h: Rational,
}

/// Sign of `n . (q - p)` for the upward normal `n` of the plane through `a, b, c`.
/// Positive means `q` lies above the plane.
fn above_plane(a: &Lifted, b: &Lifted, c: &Lifted, q: &Lifted) -> Rational {
    let (u, v) = (b.p - a.p, c.p - a.p);
    let (uh, vh) = (&b.h - &a.h, &c.h - &a.h);
    // n = (u, uh) x (v, vh)
    let nx = int(u.y) * &vh - &uh * int(v.y);
    let ny = &uh * int(v.x) - int(u.x) * &vh;
    let nz = det2(u, v);
    let w = q.p - a.p;
    let val = nx * int(w.x) + ny * int(w.y) + int(nz) * (&q.h - &a.h);
    if nz > 0 {
        val
    } else {
        -val
    }
}

/// Computes the subdivision of `f`'s Newton polygon (homogeneous input is dehomogenized).
pub fn dual_subdivision(f: &TropicalPolynomial) -> DualSubdivision {
    let f = f.to_affine();
    let pts: Vec<Lifted> = f
        .affine_terms()
        .map(|(p, h)| Lifted { p, h: h.clone() })
        .collect();
    let newton = f.newton_polygon();
    match newton.dimension() {
        0 => DualSubdivision {
            dimension: 0,
            vertices: vec![pts[0].p],
            newton,
            cells: Vec::new(),
            edges: Vec::new(),
        },
        1 => subdivide_segment(&pts, newton),
        _ => subdivide_polygon(&pts, newton),
    }
}

fn subdivide_segment(pts: &[Lifted], newton: LatticePolygon) -> DualSubdivision {
    let a = newton.vertices[0];
    let (dir, _) = (newton.vertices[1] - a).primitive().expect("segment");
    // position along the segment in lattice steps
    let tau = |p: IntVec2| -> i64 {
        let d = p - a;
        if dir.x != 0 {
            d.x / dir.x
        } else {
            d.y / dir.y
        }
    };
    let mut sorted: Vec<(i64, &Lifted)> = pts.iter().map(|l| (tau(l.p), l)).collect();
    sorted.sort_by_key(|(t, _)| *t);
    // upper hull of (tau, h); collinear middle points are not corners
    let mut hull: Vec<(i64, &Lifted)> = Vec::new();
    for item in sorted {
        while hull.len() >= 2 {
            let (t1, l1) = hull[hull.len() - 2];
            let (t2, l2) = hull[hull.len() - 1];
            let (t3, l3) = item;
            let cross = int(t2 - t1) * (&l3.h - &l1.h) - int(t3 - t1) * (&l2.h - &l1.h);
            if cross >= Rational::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(item);
    }
    let edges = hull
        .windows(2)
        .map(|w| SubdivEdge {
            a: w[0].1.p,
            b: w[1].1.p,
            kind: EdgeKind::Boundary,
            cells: Vec::new(),
        })
        .collect();
    let mut vertices: Vec<IntVec2> = hull.iter().map(|(_, l)| l.p).collect();
    vertices.sort();
    DualSubdivision {
        dimension: 1,
        newton,
        cells: Vec::new(),
        edges,
        vertices,
    }
}

fn subdivide_polygon(pts: &[Lifted], newton: LatticePolygon) -> DualSubdivision {
    let n = pts.len();
    let mut cells: Vec<Vec<IntVec2>> = Vec::new();
    let mut faces: Vec<BTreeSet<usize>> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                if det2(pts[j].p - pts[i].p, pts[k].p - pts[i].p) == 0 {
                    continue;
                }
                if faces.iter().any(|f| f.contains(&i) && f.contains(&j) && f.contains(&k)) {
                    continue;
                }
                let mut on_plane = BTreeSet::new();
                let mut upper = true;
                for m in 0..n {
                    let s = above_plane(&pts[i], &pts[j], &pts[k], &pts[m]);
                    if s.is_positive() {
                        upper = false;
                        break;
                    }
                    if s.is_zero() {
                        on_plane.insert(m);
                    }
                }
                if !upper {
                    continue;
                }
                let proj: Vec<IntVec2> = on_plane.iter().map(|&m| pts[m].p).collect();
                let hull = convex_hull(&proj).expect("nonempty");
                cells.push(hull.vertices);
                faces.push(on_plane);
            }
        }
    }
    cells.sort();

    let mut edge_cells: BTreeMap<(IntVec2, IntVec2), Vec<usize>> = BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        let m = cell.len();
        for t in 0..m {
            let (a, b) = (cell[t], cell[(t + 1) % m]);
            let key = if a < b { (a, b) } else { (b, a) };
            edge_cells.entry(key).or_default().push(ci);
        }
    }
    let edges = edge_cells
        .into_iter()
        .map(|((a, b), cs)| SubdivEdge {
            a,
            b,
            kind: if cs.len() == 2 { EdgeKind::Interior } else { EdgeKind::Boundary },
            cells: cs,
        })
        .collect();
    let vertices: BTreeSet<IntVec2> = cells.iter().flatten().copied().collect();
    DualSubdivision {
        dimension: 2,
        newton,
        cells,
        edges,
        vertices: vertices.into_iter().collect(),
    }
}

impl DualSubdivision {
    pub fn cell_polygon(&self, i: usize) -> LatticePolygon {
        LatticePolygon { vertices: self.cells[i].clone() }
    }

    pub fn boundary_edges(&self) -> impl Iterator<Item = &SubdivEdge> {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Boundary)
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = &SubdivEdge> {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Interior)
    }

    /// Every cell is a triangle of area 1/2. Degenerate subdivisions are never unimodular.
    pub fn is_unimodular_triangulation(&self) -> bool {
        self.dimension == 2
            && self
                .cells
                .iter()
                .all(|c| c.len() == 3 && polygon_area(&LatticePolygon { vertices: c.clone() }) == rat(1, 2))
    }

    /// Subdivision vertices strictly inside the Newton polygon.
    pub fn interior_lattice_vertex_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|&&v| self.newton.contains_interior(v))
            .count()
    }

    pub fn total_cell_area(&self) -> Rational {
        (0..self.cells.len())
            .map(|i| polygon_area(&self.cell_polygon(i)))
            .sum()
    }
}

/// Free-function form of [`DualSubdivision::is_unimodular_triangulation`].
pub fn is_unimodular_triangulation(s: &DualSubdivision) -> bool {
    s.is_unimodular_triangulation()
}

/// Free-function form of [`DualSubdivision::interior_lattice_vertex_count`].
pub fn interior_lattice_vertex_count(s: &DualSubdivision) -> usize {
    s.interior_lattice_vertex_count()
}
