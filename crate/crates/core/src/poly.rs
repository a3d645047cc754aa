//! Max-plus polynomials: parsing, printing, evaluation, Newton polygon and degree.
//!
//! `+` is the tropical sum (max) and `*` the tropical product (classical
//! addition), so `"(-3)*x^2*y"` is the affine function `-3 + 2x + y` and
//! `"0 + x + y"` is `max(0, x, y)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, TropError};
use crate::exact::{convex_hull, int, IntVec2, LatticePolygon, Point2, Rational};

/// Whether a polynomial lives in two affine or three homogeneous variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arity {
    Affine,
    Homogeneous,
}

/// Exponent vector `(x, y, z)`; `z` is always 0 for affine polynomials.
pub type Exponent = [i64; 3];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalPolynomial {
    arity: Arity,
    terms: BTreeMap<Exponent, Rational>,
}

impl TropicalPolynomial {
    /// Builds an affine polynomial from `(exponent, coefficient)` pairs.
    /// Repeated exponents keep the larger coefficient.
    pub fn affine<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (IntVec2, Rational)>,
    {
        let terms = terms.into_iter().map(|(e, c)| ([e.x, e.y, 0], c));
        Self::from_terms(Arity::Affine, terms)
    }

    pub fn from_terms<I>(arity: Arity, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut map: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if arity == Arity::Affine && e[2] != 0 {
                return Err(TropError::MixedArity(
                    "z exponent in an affine polynomial".into(),
                ));
            }
            match map.get_mut(&e) {
                Some(old) => {
                    if c > *old {
                        *old = c;
                    }
                }
                None => {
                    map.insert(e, c);
                }
            }
        }
        if map.is_empty() {
            return Err(TropError::EmptyInput);
        }
        if arity == Arity::Homogeneous {
            let mut sums = map.keys().map(|e| e[0] + e[1] + e[2]);
            let first = sums.next().unwrap();
            if sums.any(|s| s != first) {
                return Err(TropError::MixedArity(
                    "homogeneous polynomial with unequal exponent sums".into(),
                ));
            }
        }
        Ok(TropicalPolynomial { arity, terms: map })
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Affine support `(a, b)`; homogeneous exponents drop their `z` part.
    pub fn support(&self) -> Vec<IntVec2> {
        self.terms.keys().map(|e| IntVec2::new(e[0], e[1])).collect()
    }

    /// Terms keyed by affine exponent. Only meaningful for affine polynomials
    /// or after [`TropicalPolynomial::dehomogenize`].
    pub fn affine_terms(&self) -> impl Iterator<Item = (IntVec2, &Rational)> {
        self.terms.iter().map(|(e, c)| (IntVec2::new(e[0], e[1]), c))
    }

    pub fn coefficient(&self, a: IntVec2) -> Option<&Rational> {
        self.terms.get(&[a.x, a.y, 0])
    }

    /// Value `lambda_a + a . p` of one affine term.
    pub fn term_value(coeff: &Rational, a: IntVec2, p: &Point2) -> Rational {
        coeff + p.dot(a)
    }

    /// `max_a (lambda_a + a . p)`; homogeneous polynomials are evaluated at `z = 0`.
    pub fn evaluate(&self, p: &Point2) -> Rational {
        self.affine_terms()
            .map(|(a, c)| Self::term_value(c, a, p))
            .max()
            .expect("at least one term")
    }

    /// Homogeneous evaluation at `(x, y, z)`.
    pub fn evaluate3(&self, x: &Rational, y: &Rational, z: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| c + x * int(e[0]) + y * int(e[1]) + z * int(e[2]))
            .max()
            .expect("at least one term")
    }

    /// Exponents whose terms attain the maximum at `p`.
    pub fn argmax_terms(&self, p: &Point2) -> Vec<IntVec2> {
        let best = self.evaluate(p);
        self.affine_terms()
            .filter(|(a, c)| Self::term_value(c, *a, p) == best)
            .map(|(a, _)| a)
            .collect()
    }

    /// Point lies on `V(f)`: at least two terms attain the maximum.
    pub fn vanishes_at(&self, p: &Point2) -> bool {
        self.argmax_terms(p).len() >= 2
    }

    pub fn newton_polygon(&self) -> LatticePolygon {
        convex_hull(&self.support()).expect("nonempty support")
    }

    /// Degree of the curve, computed on the Newton polygon translated so that it
    /// touches both coordinate axes.
    pub fn curve_degree(&self) -> DegreeReport {
        let support = self.support();
        let mx = support.iter().map(|a| a.x).min().unwrap();
        let my = support.iter().map(|a| a.y).min().unwrap();
        let shift = IntVec2::new(-mx, -my);
        let normalized = self.newton_polygon().translate(shift);
        let degree = normalized.vertices.iter().map(|v| v.x + v.y).max().unwrap();
        let full_support = normalized == LatticePolygon::standard_triangle(degree);
        DegreeReport {
            degree,
            full_support,
            normalized_polygon: normalized,
            translation_used: shift,
        }
    }

    /// `f(x, y) = F(x, y, 0)`.
    pub fn dehomogenize(&self) -> Result<TropicalPolynomial> {
        if self.arity != Arity::Homogeneous {
            return Err(TropError::MixedArity("dehomogenize needs a homogeneous polynomial".into()));
        }
        TropicalPolynomial::from_terms(
            Arity::Affine,
            self.terms.iter().map(|(e, c)| ([e[0], e[1], 0], c.clone())),
        )
    }

    /// Pads every term with `z^(d - i - j)`.
    pub fn homogenize(&self, d: i64) -> Result<TropicalPolynomial> {
        if self.arity != Arity::Affine {
            return Err(TropError::MixedArity("homogenize needs an affine polynomial".into()));
        }
        let needed = self.terms.keys().map(|e| e[0] + e[1]).max().unwrap();
        if d < needed {
            return Err(TropError::DegreeTooSmall { target: d, needed });
        }
        TropicalPolynomial::from_terms(
            Arity::Homogeneous,
            self.terms.iter().map(|(e, c)| ([e[0], e[1], d - e[0] - e[1]], c.clone())),
        )
    }

    /// Same polynomial as an affine one (dehomogenizing if needed).
    pub fn to_affine(&self) -> TropicalPolynomial {
        match self.arity {
            Arity::Affine => self.clone(),
            Arity::Homogeneous => self.dehomogenize().expect("homogeneous"),
        }
    }

    /// Parses the ASCII grammar. The result is homogeneous iff `z` occurs.
    pub fn parse(text: &str) -> Result<TropicalPolynomial> {
        Parser::new(text).parse_poly()
    }

    /// Like [`TropicalPolynomial::parse`] but rejects any use of `z`.
    pub fn parse_affine(text: &str) -> Result<TropicalPolynomial> {
        let p = Self::parse(text)?;
        if p.arity != Arity::Affine {
            return Err(TropError::MixedArity("z appears in an affine polynomial".into()));
        }
        Ok(p)
    }
}

impl std::str::FromStr for TropicalPolynomial {
    type Err = TropError;
    fn from_str(s: &str) -> Result<Self> {
        TropicalPolynomial::parse(s)
    }
}

impl fmt::Display for TropicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // a homogeneous polynomial that never mentions z prints z^0 once so it re-parses as homogeneous
        let mut force_z = self.arity == Arity::Homogeneous && self.terms.keys().all(|e| e[2] == 0);
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            let has_var = e.iter().any(|&k| k != 0);
            if !c.is_zero() || !(has_var || force_z) {
                if c.is_negative() {
                    factors.push(format!("({c})"));
                } else {
                    factors.push(format!("{c}"));
                }
            }
            for (name, &k) in ["x", "y", "z"].iter().zip(e.iter()) {
                match k {
                    0 => {}
                    1 => factors.push((*name).to_string()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            if force_z {
                factors.push("z^0".to_string());
                force_z = false;
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Normalized degree information for a polynomial's Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: i64,
    pub full_support: bool,
    pub normalized_polygon: LatticePolygon,
    pub translation_used: IntVec2,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    saw_z: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0, saw_z: false }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(TropError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_poly(&mut self) -> Result<TropicalPolynomial> {
        if self.peek().is_none() {
            return Err(TropError::EmptyInput);
        }
        let mut terms = vec![self.parse_term()?];
        while self.eat(b'+') {
            terms.push(self.parse_term()?);
        }
        if self.peek().is_some() {
            return self.err(format!("unexpected character '{}'", self.src[self.pos] as char));
        }
        let arity = if self.saw_z { Arity::Homogeneous } else { Arity::Affine };
        TropicalPolynomial::from_terms(arity, terms)
    }

    fn parse_term(&mut self) -> Result<(Exponent, Rational)> {
        let mut exps = [0i64; 3];
        let mut coeff = Rational::zero();
        self.parse_factor(&mut exps, &mut coeff)?;
        while self.eat(b'*') {
            self.parse_factor(&mut exps, &mut coeff)?;
        }
        Ok((exps, coeff))
    }

    fn parse_factor(&mut self, exps: &mut Exponent, coeff: &mut Rational) -> Result<()> {
        match self.peek() {
            Some(c @ (b'x' | b'y' | b'z')) => {
                self.pos += 1;
                let k = if self.eat(b'^') { self.parse_int()? } else { 1 };
                let idx = (c - b'x') as usize;
                self.saw_z |= c == b'z';
                exps[idx] += k;
                Ok(())
            }
            Some(b'-' | b'(' | b'0'..=b'9') => {
                *coeff += self.parse_coeff()?;
                Ok(())
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn parse_coeff(&mut self) -> Result<Rational> {
        if self.eat(b'-') {
            return Ok(-self.parse_coeff()?);
        }
        if self.eat(b'(') {
            let c = self.parse_coeff()?;
            if !self.eat(b')') {
                return self.err("expected ')'");
            }
            return Ok(c);
        }
        let n = self.parse_uint()?;
        if self.eat(b'/') {
            let d = self.parse_uint()?;
            if d == 0 {
                return self.err("zero denominator");
            }
            return Ok(Rational::new(n.into(), d.into()));
        }
        Ok(int(n))
    }

    fn parse_int(&mut self) -> Result<i64> {
        if self.eat(b'-') {
            return Ok(-self.parse_uint()?);
        }
        self.parse_uint()
    }

    fn parse_uint(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match digits.parse::<i64>() {
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos = start;
                self.err("number too large")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn v(x: i64, y: i64) -> IntVec2 {
        IntVec2::new(x, y)
    }

    fn terms(p: &TropicalPolynomial) -> Vec<(IntVec2, Rational)> {
        p.affine_terms().map(|(a, c)| (a, c.clone())).collect()
    }

    #[test]
    fn parse_examples() {
        let line = TropicalPolynomial::parse("0 + x + y").unwrap();
        assert_eq!(
            terms(&line),
            vec![(v(0, 0), int(0)), (v(0, 1), int(0)), (v(1, 0), int(0))]
        );
        let mono = TropicalPolynomial::parse("(-3)*x^2*y").unwrap();
        assert_eq!(terms(&mono), vec![(v(2, 1), int(-3))]);
        let quad = TropicalPolynomial::parse("x^2 + y").unwrap();
        assert_eq!(terms(&quad), vec![(v(0, 1), int(0)), (v(2, 0), int(0))]);
    }

    #[test]
    fn parse_coefficients_and_merging() {
        let p = TropicalPolynomial::parse("-(3/2)*x + (-1/2)*x + x^-1 + 4 * 1").unwrap();
        assert_eq!(p.coefficient(v(1, 0)), Some(&rat(-1, 2)));
        assert_eq!(p.coefficient(v(-1, 0)), Some(&int(0)));
        assert_eq!(p.coefficient(v(0, 0)), Some(&int(5)));
        let h = TropicalPolynomial::parse("2*x^2 + 3*x*y + 1*x*z").unwrap();
        assert_eq!(h.arity(), Arity::Homogeneous);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(TropicalPolynomial::parse("   "), Err(TropError::EmptyInput));
        match TropicalPolynomial::parse("0++x") {
            Err(TropError::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(TropicalPolynomial::parse("x^"), Err(TropError::Syntax { .. })));
        assert!(matches!(TropicalPolynomial::parse("x + w"), Err(TropError::Syntax { pos: 4, .. })));
        assert!(matches!(TropicalPolynomial::parse("(3"), Err(TropError::Syntax { .. })));
        assert!(matches!(
            TropicalPolynomial::parse_affine("x + z"),
            Err(TropError::MixedArity(_))
        ));
        assert!(matches!(TropicalPolynomial::parse("x + z^2"), Err(TropError::MixedArity(_))));
    }

    #[test]
    fn evaluate_and_argmax() {
        let line = TropicalPolynomial::parse("0 + x + y").unwrap();
        assert_eq!(line.evaluate(&Point2::from_ints(3, 1)), int(3));
        assert_eq!(line.evaluate(&Point2::from_ints(-2, -5)), int(0));
        let mono = TropicalPolynomial::parse("(-3)*x^2*y").unwrap();
        assert_eq!(mono.evaluate(&Point2::from_ints(1, 1)), int(0));

        let mut am = line.argmax_terms(&Point2::origin());
        am.sort();
        assert_eq!(am, vec![v(0, 0), v(0, 1), v(1, 0)]);
        assert_eq!(line.argmax_terms(&Point2::from_ints(3, 1)), vec![v(1, 0)]);
        let quad = TropicalPolynomial::parse("x^2 + y").unwrap();
        let mut am = quad.argmax_terms(&Point2::from_ints(1, 2));
        am.sort();
        assert_eq!(am, vec![v(0, 1), v(2, 0)]);
    }

    #[test]
    fn newton_polygons() {
        let line = TropicalPolynomial::parse("0 + x + y").unwrap();
        assert_eq!(line.newton_polygon(), LatticePolygon::standard_triangle(1));
        let quad = TropicalPolynomial::parse("x^2 + y").unwrap();
        assert_eq!(quad.newton_polygon().vertices, vec![v(2, 0), v(0, 1)]);
        let mono = TropicalPolynomial::parse("5*x*y").unwrap();
        assert_eq!(mono.newton_polygon().dimension(), 0);
    }

    #[test]
    fn degrees() {
        let line = TropicalPolynomial::parse("0 + x + y").unwrap().curve_degree();
        assert_eq!((line.degree, line.full_support), (1, true));
        let mono = TropicalPolynomial::parse("7*x^3*y^2").unwrap().curve_degree();
        assert_eq!(mono.degree, 0);
        assert_eq!(mono.translation_used, v(-3, -2));
        let h = TropicalPolynomial::parse("2*x^2 + 3*x*y + 1*x*z").unwrap().curve_degree();
        assert_eq!((h.degree, h.full_support), (1, true));
        let quad = TropicalPolynomial::parse("x^2 + y").unwrap().curve_degree();
        assert_eq!((quad.degree, quad.full_support), (2, false));
        let laurent = TropicalPolynomial::parse("x^-1 + y^-1 + x*y").unwrap().curve_degree();
        assert_eq!(laurent.degree, 4);
    }

    #[test]
    fn homogenization() {
        let big_f = TropicalPolynomial::parse("x + y + z").unwrap();
        let f = big_f.dehomogenize().unwrap();
        assert_eq!(f, TropicalPolynomial::parse("0 + x + y").unwrap());
        let quad = TropicalPolynomial::parse("x^2 + y").unwrap();
        assert_eq!(
            quad.homogenize(2).unwrap(),
            TropicalPolynomial::parse("x^2 + y*z").unwrap()
        );
        let line = TropicalPolynomial::parse("0 + x + y").unwrap();
        assert_eq!(line.homogenize(1).unwrap().dehomogenize().unwrap(), line);
        assert_eq!(
            quad.homogenize(1),
            Err(TropError::DegreeTooSmall { target: 1, needed: 2 })
        );
    }

    #[test]
    fn display_round_trip_examples() {
        for text in [
            "0 + x + y",
            "(-3)*x^2*y",
            "x^2 + y",
            "5/2 + (-7/3)*x*y^-2",
            "x^2 + x*y",
            "x^2*z^0 + x*y",
        ] {
            let p = TropicalPolynomial::parse(text).unwrap();
            let q = TropicalPolynomial::parse(&p.to_string()).unwrap();
            assert_eq!(p, q, "{text} -> {p}");
        }
        let h = TropicalPolynomial::from_terms(
            Arity::Homogeneous,
            [([2, 0, 0], int(1)), ([1, 1, 0], int(0))],
        )
        .unwrap();
        assert_eq!(TropicalPolynomial::parse(&h.to_string()).unwrap(), h);
    }
}
