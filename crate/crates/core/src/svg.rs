//! Deterministic SVG rendering.
//!
//! Geometry is clipped exactly against the viewport and converted to decimals
//! only when written, with six fractional digits.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::curve::{Extent, Piece, TropicalCurve};
use crate::elliptic::{tropical_line, CycleModel, GeometricSum};
use crate::error::{Result, TropError};
use crate::exact::{int, parse_rational, rat, to_decimal, IntVec2, Point2, Rational};
use crate::intersect::IntersectionMultiset;
use crate::subdiv::DualSubdivision;

const PLOT_SIZE: i64 = 600;
const MARGIN: i64 = 20;
const INSET_SIZE: i64 = 160;

const CURVE_COLOR: &str = "#222222";
const CYCLE_COLOR: &str = "#d62728";
const SECOND_COLOR: &str = "#1f77b4";
const POINT_COLOR: &str = "#ff7f0e";
const CONSTRUCTION_COLOR: &str = "#2ca02c";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Viewport {
    pub x_min: Rational,
    pub y_min: Rational,
    pub x_max: Rational,
    pub y_max: Rational,
}

impl Viewport {
    pub fn new(x_min: Rational, y_min: Rational, x_max: Rational, y_max: Rational) -> Result<Self> {
        if x_min >= x_max || y_min >= y_max {
            return Err(TropError::InvalidViewport("need x_min < x_max and y_min < y_max".into()));
        }
        Ok(Viewport { x_min, y_min, x_max, y_max })
    }

    /// Parses `x_min,y_min,x_max,y_max`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(TropError::InvalidViewport(format!("expected four numbers in {s:?}")));
        }
        let v = parts.iter().map(|p| parse_rational(p)).collect::<Result<Vec<_>>>()?;
        let [a, b, c, d]: [Rational; 4] = v.try_into().expect("four parts");
        Viewport::new(a, b, c, d)
    }

    /// Bounding box of `points`, padded by a quarter of the span and at least 1.
    pub fn fit<'a>(points: impl IntoIterator<Item = &'a Point2>) -> Viewport {
        let pts: Vec<&Point2> = points.into_iter().collect();
        let origin = Point2::origin();
        let first = pts.first().copied().unwrap_or(&origin);
        let (mut x0, mut y0, mut x1, mut y1) =
            (first.x.clone(), first.y.clone(), first.x.clone(), first.y.clone());
        for p in &pts {
            x0 = x0.min(p.x.clone());
            y0 = y0.min(p.y.clone());
            x1 = x1.max(p.x.clone());
            y1 = y1.max(p.y.clone());
        }
        let pad = |lo: &Rational, hi: &Rational| (hi - lo) / int(4) + int(1);
        let (px, py) = (pad(&x0, &x1), pad(&y0, &y1));
        Viewport { x_min: x0 - &px, y_min: y0 - &py, x_max: x1 + px, y_max: y1 + py }
    }

    /// Default viewport for a curve: its vertices, or a point of each line.
    pub fn for_curve(c: &TropicalCurve) -> Viewport {
        let pts: Vec<Point2> = c
            .vertices
            .iter()
            .map(|v| v.point.clone())
            .chain(c.lines.iter().map(|l| l.point.clone()))
            .collect();
        Viewport::fit(&pts)
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.x_min <= p.x && p.x <= self.x_max && self.y_min <= p.y && p.y <= self.y_max
    }

    fn scale(&self) -> Rational {
        let span = (&self.x_max - &self.x_min).max(&self.y_max - &self.y_min);
        int(PLOT_SIZE) / span
    }

    fn width(&self) -> Rational {
        (&self.x_max - &self.x_min) * self.scale()
    }

    fn height(&self) -> Rational {
        (&self.y_max - &self.y_min) * self.scale()
    }
}

/// Visible part of a piece: the clipped segment's endpoints, or `None`.
pub fn clip_piece(p: &Piece, vp: &Viewport) -> Option<(Point2, Point2)> {
    let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = match &p.extent {
        Extent::Segment(len) => (Some(Rational::zero()), Some(len.clone())),
        Extent::Ray => (Some(Rational::zero()), None),
        Extent::Line => (None, None),
    };
    let axes = [
        (&p.origin.x, p.direction.x, &vp.x_min, &vp.x_max),
        (&p.origin.y, p.direction.y, &vp.y_min, &vp.y_max),
    ];
    for (o, d, min, max) in axes {
        if d == 0 {
            if o < min || o > max {
                return None;
            }
            continue;
        }
        let (a, b) = ((min - o) / int(d), (max - o) / int(d));
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        lo = Some(lo.map_or(a.clone(), |l| l.max(a)));
        hi = Some(hi.map_or(b.clone(), |h| h.min(b)));
    }
    let (lo, hi) = (lo?, hi?);
    (lo < hi).then(|| (p.point_at(&lo), p.point_at(&hi)))
}

struct Canvas {
    vp: Viewport,
    scale: Rational,
    body: String,
}

fn dec(r: &Rational) -> String {
    to_decimal(r, 6)
}

impl Canvas {
    fn px(&self, p: &Point2) -> (String, String) {
        let x = (&p.x - &self.vp.x_min) * &self.scale + int(MARGIN);
        let y = (&self.vp.y_max - &p.y) * &self.scale + int(MARGIN);
        (dec(&x), dec(&y))
    }

    fn segment(&mut self, a: &Point2, b: &Point2, color: &str, width: i64, dashed: bool) {
        let ((x1, y1), (x2, y2)) = (self.px(a), self.px(b));
        let dash = if dashed { " stroke-dasharray=\"6 4\"" } else { "" };
        let _ = writeln!(
            self.body,
            "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{color}\" stroke-width=\"{width}\"{dash}/>"
        );
    }

    fn dot(&mut self, p: &Point2, color: &str, r: i64) {
        if !self.vp.contains(p) {
            return;
        }
        let (x, y) = self.px(p);
        let _ = writeln!(self.body, "<circle cx=\"{x}\" cy=\"{y}\" r=\"{r}\" fill=\"{color}\"/>");
    }

    fn label(&mut self, p: &Point2, text: &str, color: &str) {
        if !self.vp.contains(p) {
            return;
        }
        let (x, y) = self.px(p);
        let _ = writeln!(
            self.body,
            "<text x=\"{x}\" y=\"{y}\" dx=\"5\" dy=\"-5\" font-family=\"sans-serif\" font-size=\"12\" fill=\"{color}\">{text}</text>"
        );
    }

    fn curve(&mut self, c: &TropicalCurve, color: &str) {
        for piece in c.pieces() {
            if let Some((a, b)) = clip_piece(&piece, &self.vp) {
                self.segment(&a, &b, color, 2, false);
                if piece.weight > 1 {
                    let mid = a.add(&b).scale(&rat(1, 2));
                    self.label(&mid, &piece.weight.to_string(), color);
                }
            }
        }
    }

    fn line_through(&mut self, center: &Point2) {
        let line = tropical_line(center);
        for piece in line.pieces() {
            if let Some((a, b)) = clip_piece(&piece, &self.vp) {
                self.segment(&a, &b, CONSTRUCTION_COLOR, 1, true);
            }
        }
    }
}

/// Extra layers drawn on top of the curve.
#[derive(Clone, Debug, Default)]
pub struct Overlays<'a> {
    pub subdivision: bool,
    pub cycle: Option<&'a CycleModel>,
    pub intersection: Option<(&'a TropicalCurve, &'a IntersectionMultiset)>,
    pub addition: Option<&'a GeometricSum>,
}

fn inset(out: &mut String, s: &DualSubdivision, left: i64, top: i64) {
    let pts = &s.newton.vertices;
    let max_x = pts.iter().map(|p| p.x).max().unwrap_or(0);
    let min_x = pts.iter().map(|p| p.x).min().unwrap_or(0);
    let max_y = pts.iter().map(|p| p.y).max().unwrap_or(0);
    let min_y = pts.iter().map(|p| p.y).min().unwrap_or(0);
    let span = (max_x - min_x).max(max_y - min_y).max(1);
    let unit = rat(INSET_SIZE - 20, span);
    let at = |p: IntVec2| {
        let x = int(left + 10) + int(p.x - min_x) * &unit;
        let y = int(top + INSET_SIZE - 10) - int(p.y - min_y) * &unit;
        (dec(&x), dec(&y))
    };
    let _ = writeln!(
        out,
        "<rect x=\"{left}\" y=\"{top}\" width=\"{INSET_SIZE}\" height=\"{INSET_SIZE}\" fill=\"#f7f7f7\" stroke=\"#999999\"/>"
    );
    for cell in &s.cells {
        let path: Vec<String> = cell
            .iter()
            .map(|&p| {
                let (x, y) = at(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            out,
            "<polygon points=\"{}\" fill=\"none\" stroke=\"{CURVE_COLOR}\" stroke-width=\"1\"/>",
            path.join(" ")
        );
    }
    if s.cells.is_empty() {
        for e in &s.edges {
            let ((x1, y1), (x2, y2)) = (at(e.a), at(e.b));
            let _ = writeln!(
                out,
                "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{CURVE_COLOR}\" stroke-width=\"1\"/>"
            );
        }
    }
    for &p in &s.vertices {
        let (x, y) = at(p);
        let _ = writeln!(out, "<circle cx=\"{x}\" cy=\"{y}\" r=\"2\" fill=\"{CURVE_COLOR}\"/>");
    }
}

/// Renders `c` with the given overlays. Identical input gives identical bytes.
pub fn render(c: &TropicalCurve, vp: &Viewport, overlays: &Overlays) -> String {
    let scale = vp.scale();
    let mut canvas = Canvas { vp: vp.clone(), scale, body: String::new() };
    canvas.curve(c, CURVE_COLOR);
    if let Some(m) = overlays.cycle {
        for i in 0..m.len() {
            let piece = Piece {
                origin: m.vertices[i].clone(),
                direction: m.directions[i],
                extent: Extent::Segment(m.lengths[i].clone()),
                weight: 1,
            };
            if let Some((p, q)) = clip_piece(&piece, vp) {
                canvas.segment(&p, &q, CYCLE_COLOR, 4, false);
            }
        }
    }
    for v in &c.vertices {
        canvas.dot(&v.point, CURVE_COLOR, 3);
    }
    if let Some((g, meet)) = overlays.intersection {
        canvas.curve(g, SECOND_COLOR);
        for e in &meet.entries {
            canvas.dot(&e.point, POINT_COLOR, 5);
            if e.multiplicity > 1 {
                canvas.label(&e.point, &e.multiplicity.to_string(), POINT_COLOR);
            }
        }
    }
    if let (Some(sum), Some(m)) = (overlays.addition, overlays.cycle) {
        canvas.line_through(&sum.first.center);
        canvas.line_through(&sum.second.center);
        let marks = [
            (&sum.first.first, "P"),
            (&sum.first.second, "Q"),
            (&sum.first.third, "R"),
            (&m.origin, "O"),
            (&sum.sum, "P+Q"),
        ];
        for (p, name) in marks {
            let e = m.embed(p);
            canvas.dot(&e, CONSTRUCTION_COLOR, 5);
            canvas.label(&e, name, CONSTRUCTION_COLOR);
        }
    }

    let w = vp.width() + int(2 * MARGIN);
    let h = vp.height() + int(2 * MARGIN);
    let inset_w = if overlays.subdivision { int(INSET_SIZE + MARGIN) } else { Rational::zero() };
    let total_w = &w + &inset_w;
    let total_h = if overlays.subdivision { h.clone().max(int(INSET_SIZE + 2 * MARGIN)) } else { h.clone() };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">",
        dec(&total_w),
        dec(&total_h)
    );
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>",
        dec(&total_w),
        dec(&total_h)
    );
    out.push_str(&canvas.body);
    if overlays.subdivision {
        let left = w.ceil().to_integer().try_into().unwrap_or(i64::MAX);
        inset(&mut out, &c.subdivision, left, MARGIN);
    }
    out.push_str("</svg>\n");
    out
}

/// Writes `svg` to `path`.
pub fn write_svg(path: &std::path::Path, svg: &str) -> Result<()> {
    std::fs::write(path, svg).map_err(|e| TropError::Io(format!("{}: {e}", path.display())))
}
