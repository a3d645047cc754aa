//! Transversal and stable intersections, mixed area, and Bezout/Bernstein checks.
//!
//! The stable intersection translates the second curve by `eps * w` for a
//! direction `w` parallel to no edge of either curve. Every crossing point is an
//! affine function of `eps`; the combinatorics stay fixed on `(0, threshold]`,
//! where the threshold is half the smallest positive `eps` at which a crossing
//! parameter reaches an edge endpoint or two parallel edges become collinear.
//! Limits at `eps = 0` are then read off exactly.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{build_curve, Extent, Piece, TropicalCurve};
use crate::error::{Result, TropError};
use crate::exact::{
    det2, fmt_rational, int, minkowski_sum, polygon_area, serde_rational, solve2, IntVec2,
    LatticePolygon, Point2, Rational,
};
use crate::poly::TropicalPolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionPoint {
    pub point: Point2,
    pub multiplicity: i64,
}

/// Points with multiplicities, sorted by point.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct IntersectionMultiset {
    pub entries: Vec<IntersectionPoint>,
    pub total: i64,
}

impl IntersectionMultiset {
    fn from_map(map: BTreeMap<Point2, i64>) -> Self {
        let total = map.values().sum();
        IntersectionMultiset {
            entries: map
                .into_iter()
                .map(|(point, multiplicity)| IntersectionPoint { point, multiplicity })
                .collect(),
            total,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity_at(&self, p: &Point2) -> i64 {
        self.entries
            .iter()
            .find(|e| &e.point == p)
            .map_or(0, |e| e.multiplicity)
    }

    pub fn points(&self) -> impl Iterator<Item = &Point2> {
        self.entries.iter().map(|e| &e.point)
    }
}

/// Direction and step size under which a translated copy meets the other curve transversally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbationCertificate {
    pub direction: IntVec2,
    #[serde(with = "serde_rational")]
    pub epsilon_threshold: Rational,
}

fn cross_point(p: &Point2, d: IntVec2) -> Rational {
    &p.x * int(d.y) - &p.y * int(d.x)
}

/// Both pieces are full lines on the same supporting line.
fn lines_overlap(a: &Piece, b: &Piece) -> bool {
    matches!((&a.extent, &b.extent), (Extent::Line, Extent::Line))
        && det2(a.direction, b.direction) == 0
        && a.param_of(&b.origin).is_some()
}

/// No vertex of either curve lies on the other, and no two vertex-free lines coincide.
pub fn is_transversal(c: &TropicalCurve, d: &TropicalCurve) -> bool {
    if c.vertices.iter().any(|v| d.contains(&v.point)) {
        return false;
    }
    if d.vertices.iter().any(|v| c.contains(&v.point)) {
        return false;
    }
    let (pc, pd) = (c.pieces(), d.pieces());
    !pc.iter().any(|a| pd.iter().any(|b| lines_overlap(a, b)))
}

/// Crossing parameters `(s, t)` of `a.origin + s a.dir = b.origin + t b.dir`.
fn crossing_params(a: &Piece, b: &Piece, rhs: &Point2) -> Option<(Rational, Rational)> {
    solve2(a.direction, -b.direction, rhs)
}

fn crossing_multiplicity(a: &Piece, b: &Piece) -> i64 {
    a.weight * b.weight * det2(a.direction, b.direction).abs()
}

/// Intersection points of transversal curves with multiplicities `m1 m2 |det|`.
pub fn transversal_intersections(
    c: &TropicalCurve,
    d: &TropicalCurve,
) -> Result<IntersectionMultiset> {
    if !is_transversal(c, d) {
        return Err(TropError::NotTransversal);
    }
    let mut map: BTreeMap<Point2, i64> = BTreeMap::new();
    for a in &c.pieces() {
        for b in &d.pieces() {
            let delta = b.origin.sub(&a.origin);
            if let Some((s, t)) = crossing_params(a, b, &delta) {
                if a.param_in_range(&s) && b.param_in_range(&t) {
                    *map.entry(a.point_at(&s)).or_insert(0) += crossing_multiplicity(a, b);
                }
            }
        }
    }
    Ok(IntersectionMultiset::from_map(map))
}

/// Parameter endpoints of a piece (none for lines, `0` for rays).
fn endpoints(p: &Piece) -> Vec<Rational> {
    match &p.extent {
        Extent::Segment(len) => vec![Rational::zero(), len.clone()],
        Extent::Ray => vec![Rational::zero()],
        Extent::Line => Vec::new(),
    }
}

/// Certificate for translating `d` along `w`, or `None` if `w` is parallel to some piece.
pub fn perturbation_certificate(
    c: &TropicalCurve,
    d: &TropicalCurve,
    w: IntVec2,
) -> Option<PerturbationCertificate> {
    let (pc, pd) = (c.pieces(), d.pieces());
    if pc.iter().chain(pd.iter()).any(|p| det2(p.direction, w) == 0) {
        return None;
    }
    let wp = w.to_point();
    let mut min_event: Option<Rational> = None;
    let mut note = |eps: Rational| {
        if eps.is_positive() && min_event.as_ref().is_none_or(|m| &eps < m) {
            min_event = Some(eps);
        }
    };
    for a in &pc {
        for b in &pd {
            let delta = b.origin.sub(&a.origin);
            match crossing_params(a, b, &delta) {
                Some((s0, t0)) => {
                    let (s1, t1) = crossing_params(a, b, &wp).expect("nonparallel");
                    for e in endpoints(a) {
                        note((e - &s0) / &s1);
                    }
                    for e in endpoints(b) {
                        note((e - &t0) / &t1);
                    }
                }
                None => {
                    // parallel: supporting lines coincide when (delta + eps w) x dir = 0
                    let num = cross_point(&delta, a.direction);
                    let den = cross_point(&wp, a.direction);
                    note(-num / den);
                }
            }
        }
    }
    let epsilon_threshold = match min_event {
        Some(m) => m / int(2),
        None => Rational::one(),
    };
    Some(PerturbationCertificate { direction: w, epsilon_threshold })
}

/// Generic directions `(1, N)` for `N = 2, 3, 5, 7, ...` (primes).
pub fn candidate_directions() -> impl Iterator<Item = IntVec2> {
    (2i64..)
        .filter(|&n| (2..n).take_while(|k| k * k <= n).all(|k| n % k != 0))
        .map(|n| IntVec2::new(1, n))
}

/// Sign of `x0 + eps * x1` for all small `eps > 0`.
fn lex_sign(x0: &Rational, x1: &Rational) -> Ordering {
    match x0.cmp(&Rational::zero()) {
        Ordering::Equal => x1.cmp(&Rational::zero()),
        o => o,
    }
}

/// `t0 + eps * t1` lies in the piece's range for all small `eps > 0`.
fn in_range_eventually(p: &Piece, t0: &Rational, t1: &Rational) -> bool {
    let lower = || lex_sign(t0, t1) != Ordering::Less;
    match &p.extent {
        Extent::Segment(len) => lower() && lex_sign(&(len - t0), &-t1) != Ordering::Less,
        Extent::Ray => lower(),
        Extent::Line => true,
    }
}

/// Limit multiset of `c . (d + eps w)` as `eps -> 0+`, or `None` if `w` is parallel to a piece.
fn stable_limit(c: &TropicalCurve, d: &TropicalCurve, w: IntVec2) -> Option<IntersectionMultiset> {
    let (pc, pd) = (c.pieces(), d.pieces());
    if pc.iter().chain(pd.iter()).any(|p| det2(p.direction, w) == 0) {
        return None;
    }
    let wp = w.to_point();
    let mut map: BTreeMap<Point2, i64> = BTreeMap::new();
    for a in &pc {
        for b in &pd {
            let delta = b.origin.sub(&a.origin);
            // parallel pieces separate under a nonparallel translation
            let Some((s0, t0)) = crossing_params(a, b, &delta) else {
                continue;
            };
            let (s1, t1) = crossing_params(a, b, &wp).expect("nonparallel");
            if in_range_eventually(a, &s0, &s1) && in_range_eventually(b, &t0, &t1) {
                *map.entry(a.point_at(&s0)).or_insert(0) += crossing_multiplicity(a, b);
            }
        }
    }
    Some(IntersectionMultiset::from_map(map))
}

/// Stable intersection computed with translation direction `w`, evaluated at the
/// certified `epsilon_threshold`.
pub fn stable_intersection_along(
    c: &TropicalCurve,
    d: &TropicalCurve,
    w: IntVec2,
) -> Result<(IntersectionMultiset, PerturbationCertificate)> {
    let cert = perturbation_certificate(c, d, w).ok_or(TropError::NoGenericDirection)?;
    let eps = &cert.epsilon_threshold;
    let wp = w.to_point();
    let mut map: BTreeMap<Point2, i64> = BTreeMap::new();
    for a in &c.pieces() {
        for b in &d.pieces() {
            let delta = b.origin.sub(&a.origin);
            let Some((s0, t0)) = crossing_params(a, b, &delta) else {
                continue;
            };
            let (s1, t1) = crossing_params(a, b, &wp).expect("nonparallel");
            let s = &s0 + eps * &s1;
            let t = &t0 + eps * &t1;
            if a.param_in_range(&s) && b.param_in_range(&t) {
                *map.entry(a.point_at(&s0)).or_insert(0) += crossing_multiplicity(a, b);
            }
        }
    }
    Ok((IntersectionMultiset::from_map(map), cert))
}

/// Stable intersection with the first generic direction.
pub fn stable_intersection_certified(
    c: &TropicalCurve,
    d: &TropicalCurve,
) -> (IntersectionMultiset, PerturbationCertificate) {
    for w in candidate_directions() {
        if let Ok(out) = stable_intersection_along(c, d, w) {
            return out;
        }
    }
    unreachable!("only finitely many directions are parallel to a piece")
}

/// Stable intersection, evaluated symbolically in the perturbation parameter.
pub fn stable_intersection(c: &TropicalCurve, d: &TropicalCurve) -> IntersectionMultiset {
    candidate_directions()
        .find_map(|w| stable_limit(c, d, w))
        .expect("only finitely many directions are parallel to a piece")
}

/// `Area(R + S) - Area(R) - Area(S)`
pub fn mixed_area(r: &LatticePolygon, s: &LatticePolygon) -> Rational {
    polygon_area(&minkowski_sum(r, s)) - polygon_area(r) - polygon_area(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupportMode {
    BothFull,
    OneFull,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub f: String,
    pub g: String,
    pub expected: String,
    pub total: i64,
    pub balanced: bool,
    pub passed: bool,
}

/// Outcome of a batch of verification trials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub check: String,
    pub trials: Vec<TrialRecord>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.trials.iter().filter(|t| !t.passed).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// One line per trial plus a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.trials {
            let _ = writeln!(
                out,
                "{} trial={} seed={} expected={} total={} balanced={} {}",
                self.check,
                t.trial,
                t.seed,
                t.expected,
                t.total,
                t.balanced,
                if t.passed { "PASS" } else { "FAIL" }
            );
        }
        let _ = writeln!(
            out,
            "{}: {} trials, {} failures",
            self.check,
            self.trials.len(),
            self.failures()
        );
        out
    }
}

pub const COEFF_BOUND: i64 = 1_000_000;

fn random_coeff(rng: &mut ChaCha8Rng) -> Rational {
    int(rng.gen_range(-COEFF_BOUND..=COEFF_BOUND))
}

/// Random integer coefficients on the given support.
pub fn random_polynomial(rng: &mut ChaCha8Rng, support: &[IntVec2]) -> TropicalPolynomial {
    TropicalPolynomial::affine(support.iter().map(|&a| (a, random_coeff(rng)))).expect("nonempty")
}

/// All lattice points of the standard triangle of size `d`.
pub fn full_support(d: i64) -> Vec<IntVec2> {
    LatticePolygon::standard_triangle(d).lattice_points()
}

/// Lattice points of the standard triangle with triangular corners of sizes
/// `cuts = [k0, k1, k2]` removed at `(0,0)`, `(d,0)`, `(0,d)`. Keeps degree `d`
/// when the pairwise sums of the cut sizes are at most `d`.
pub fn corner_cut_support(d: i64, cuts: [i64; 3]) -> Vec<IntVec2> {
    let [k0, k1, k2] = cuts;
    full_support(d)
        .into_iter()
        .filter(|p| p.x + p.y >= k0 && p.x <= d - k1 && p.y <= d - k2)
        .collect()
}

/// Random corner cuts with at least one nonzero cut when `d >= 2`.
pub fn random_cuts(rng: &mut ChaCha8Rng, d: i64) -> [i64; 3] {
    if d < 2 {
        return [0, 0, 0];
    }
    loop {
        let cuts = [
            rng.gen_range(0..d),
            rng.gen_range(0..d),
            rng.gen_range(0..d),
        ];
        let ok = cuts[0] + cuts[1] <= d && cuts[0] + cuts[2] <= d && cuts[1] + cuts[2] <= d;
        if ok && cuts.iter().any(|&k| k > 0) {
            return cuts;
        }
    }
}

/// Draws random curves of degrees `cdeg`, `ddeg` and checks that the stable
/// intersection has total `cdeg * ddeg` in every trial.
pub fn verify_bezout(
    cdeg: i64,
    ddeg: i64,
    trials: usize,
    seed: u64,
    mode: SupportMode,
) -> VerifyReport {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(trials);
    for trial in 0..trials {
        let trial_seed: u64 = master.gen();
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        let f = random_polynomial(&mut rng, &full_support(cdeg));
        let g_support = match mode {
            SupportMode::BothFull => full_support(ddeg),
            SupportMode::OneFull => {
                let cuts = random_cuts(&mut rng, ddeg);
                corner_cut_support(ddeg, cuts)
            }
        };
        let g = random_polynomial(&mut rng, &g_support);
        let expected = cdeg * ddeg;
        let (c, d) = (build_curve(&f), build_curve(&g));
        let (total, balanced, degrees_ok) = match (&c, &d) {
            (Ok(c), Ok(d)) => (
                stable_intersection(c, d).total,
                c.check_balancing() && d.check_balancing(),
                c.degree() == cdeg && d.degree() == ddeg,
            ),
            _ => (-1, false, false),
        };
        records.push(TrialRecord {
            trial,
            seed: trial_seed,
            f: f.to_string(),
            g: g.to_string(),
            expected: expected.to_string(),
            total,
            balanced,
            passed: balanced && degrees_ok && total == expected,
        });
    }
    let name = match mode {
        SupportMode::BothFull => format!("bezout({cdeg},{ddeg})"),
        SupportMode::OneFull => format!("strong-bezout({cdeg},{ddeg})"),
    };
    VerifyReport { check: name, trials: records }
}

/// Result of comparing the transversal count with the mixed area.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernsteinCheck {
    pub total: i64,
    pub mixed_area: Rational,
    pub intersections: IntersectionMultiset,
}

impl BernsteinCheck {
    pub fn holds(&self) -> bool {
        int(self.total) == self.mixed_area
    }
}

/// Transversal intersection count against the mixed area of the Newton polygons.
pub fn verify_bernstein(f: &TropicalPolynomial, g: &TropicalPolynomial) -> Result<BernsteinCheck> {
    let (c, d) = (build_curve(f)?, build_curve(g)?);
    let intersections = transversal_intersections(&c, &d)?;
    Ok(BernsteinCheck {
        total: intersections.total,
        mixed_area: mixed_area(&f.newton_polygon(), &g.newton_polygon()),
        intersections,
    })
}

/// Random support of 2..=6 distinct points in `[0, side]^2`.
pub fn random_support(rng: &mut ChaCha8Rng, side: i64) -> Vec<IntVec2> {
    let count = rng.gen_range(2..=6);
    let mut pts: Vec<IntVec2> = Vec::new();
    while pts.len() < count {
        let p = IntVec2::new(rng.gen_range(0..=side), rng.gen_range(0..=side));
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

/// Random transversal pairs with arbitrary small supports, checked against the mixed area.
pub fn verify_bernstein_random(trials: usize, seed: u64) -> VerifyReport {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(trials);
    for trial in 0..trials {
        let trial_seed: u64 = master.gen();
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        // redraw until the pair is transversal; genericity makes this rare
        let (f, g, c, d) = loop {
            let fs = random_support(&mut rng, 3);
            let f = random_polynomial(&mut rng, &fs);
            let gs = random_support(&mut rng, 3);
            let g = random_polynomial(&mut rng, &gs);
            if let (Ok(c), Ok(d)) = (build_curve(&f), build_curve(&g)) {
                if is_transversal(&c, &d) {
                    break (f, g, c, d);
                }
            }
        };
        let total = transversal_intersections(&c, &d).expect("transversal").total;
        let area = mixed_area(&f.newton_polygon(), &g.newton_polygon());
        let balanced = c.check_balancing() && d.check_balancing();
        records.push(TrialRecord {
            trial,
            seed: trial_seed,
            f: f.to_string(),
            g: g.to_string(),
            expected: fmt_rational(&area),
            total,
            balanced,
            passed: balanced && int(total) == area,
        });
    }
    VerifyReport { check: "bernstein".into(), trials: records }
}
