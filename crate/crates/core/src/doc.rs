//! JSON import and export of curves (`tropcurve-1` documents).
//!
//! Rationals are written as `"num/den"` strings. Import re-parses the source
//! polynomial, rebuilds the curve and rejects documents whose stored graph does
//! not match, so a document can never describe something the polynomial doesn't.

use serde::{Deserialize, Serialize};

use crate::curve::{build_curve, BoundedEdge, CurveVertex, FullLine, Ray, TropicalCurve};
use crate::elliptic::{extract_cycle, CycleModel, CyclePoint};
use crate::error::{Result, TropError};
use crate::exact::{serde_rational, serde_rational_seq, Rational};
use crate::poly::TropicalPolynomial;
use crate::subdiv::DualSubdivision;

pub const SCHEMA: &str = "tropcurve-1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleData {
    /// Curve vertex ids of the cycle, counter-clockwise from `V_1`.
    pub vertex_ids: Vec<usize>,
    #[serde(with = "serde_rational_seq")]
    pub lengths: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub total_length: Rational,
    pub origin: CyclePoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDocument {
    pub schema: String,
    pub source: String,
    pub vertices: Vec<CurveVertex>,
    pub bounded_edges: Vec<BoundedEdge>,
    pub rays: Vec<Ray>,
    pub lines: Vec<FullLine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subdivision: Option<DualSubdivision>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<CycleData>,
}

/// What a document describes once validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    pub source: String,
    pub curve: TropicalCurve,
    pub with_subdivision: bool,
    pub cycle: Option<CycleModel>,
}

impl CurveModel {
    /// Parses and builds; the cycle is attached when the curve is elliptic.
    pub fn from_source(source: &str, with_subdivision: bool) -> Result<CurveModel> {
        let f = TropicalPolynomial::parse(source)?;
        let curve = build_curve(&f)?;
        let cycle = extract_cycle(&curve).ok();
        Ok(CurveModel { source: source.to_string(), curve, with_subdivision, cycle })
    }

    pub fn to_document(&self) -> CurveDocument {
        let c = &self.curve;
        CurveDocument {
            schema: SCHEMA.to_string(),
            source: self.source.clone(),
            vertices: c.vertices.clone(),
            bounded_edges: c.bounded_edges.clone(),
            rays: c.rays.clone(),
            lines: c.lines.clone(),
            subdivision: self.with_subdivision.then(|| c.subdivision.clone()),
            cycle: self.cycle.as_ref().map(|m| CycleData {
                vertex_ids: m.vertex_ids.clone(),
                lengths: m.lengths.clone(),
                total_length: m.total_length.clone(),
                origin: m.origin.clone(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("documents always serialize")
    }
}

impl CurveDocument {
    pub fn from_json(text: &str) -> Result<CurveDocument> {
        serde_json::from_str(text).map_err(|e| TropError::InvalidDocument(e.to_string()))
    }

    /// Rebuilds the model and checks every stored field against it.
    pub fn import(&self) -> Result<CurveModel> {
        let bad = |what: &str| TropError::InvalidDocument(format!("{what} does not match the source"));
        if self.schema != SCHEMA {
            return Err(TropError::InvalidDocument(format!("unknown schema {:?}", self.schema)));
        }
        let mut model = CurveModel::from_source(&self.source, self.subdivision.is_some())?;
        let c = &model.curve;
        if self.vertices != c.vertices
            || self.bounded_edges != c.bounded_edges
            || self.rays != c.rays
            || self.lines != c.lines
        {
            return Err(bad("curve graph"));
        }
        if let Some(s) = &self.subdivision {
            if s != &c.subdivision {
                return Err(bad("subdivision"));
            }
        }
        model.cycle = match (&self.cycle, model.cycle.take()) {
            (None, _) => None,
            (Some(_), None) => return Err(bad("cycle")),
            (Some(data), Some(m)) => {
                if data.origin.edge >= m.len() {
                    return Err(bad("cycle origin"));
                }
                // the stored indexing is reproduced by re-rooting at the stored origin
                let o = rebase_point(&m, data)?;
                let m = m.set_origin(&o)?;
                if m.vertex_ids != data.vertex_ids
                    || m.lengths != data.lengths
                    || m.total_length != data.total_length
                    || m.origin != data.origin
                {
                    return Err(bad("cycle"));
                }
                Some(m)
            }
        };
        Ok(model)
    }
}

/// The plane point of the stored origin, read with the stored vertex order.
fn rebase_point(m: &CycleModel, data: &CycleData) -> Result<crate::exact::Point2> {
    let id = *data
        .vertex_ids
        .get(data.origin.edge)
        .ok_or_else(|| TropError::InvalidDocument("cycle origin edge out of range".into()))?;
    let next = data.vertex_ids[(data.origin.edge + 1) % data.vertex_ids.len()];
    let (a, b) = (&m.curve.vertices[id].point, &m.curve.vertices[next].point);
    let (dir, _) = crate::exact::lattice_direction(a, b)
        .ok_or_else(|| TropError::InvalidDocument("degenerate cycle edge".into()))?;
    Ok(a.offset(dir, &data.origin.t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_line() {
        let m = CurveModel::from_source("0 + x + y", true).unwrap();
        let json = m.to_json();
        assert!(json.contains("\"schema\": \"tropcurve-1\""));
        let back = CurveDocument::from_json(&json).unwrap().import().unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn round_trip_cubic_with_moved_origin() {
        let src = crate::elliptic::reference_cubic().to_string();
        let mut m = CurveModel::from_source(&src, false).unwrap();
        let cyc = m.cycle.take().unwrap();
        let o = cyc.embed(&cyc.point_at_arc(crate::exact::rat(7, 3)));
        m.cycle = Some(cyc.set_origin(&o).unwrap());
        let json = m.to_json();
        let back = CurveDocument::from_json(&json).unwrap().import().unwrap();
        assert_eq!(back, m);
        assert!(!json.contains("subdivision"));
    }

    #[test]
    fn tampered_document_is_rejected() {
        let m = CurveModel::from_source("0 + x + y", false).unwrap();
        let mut doc = m.to_document();
        doc.rays[0].weight = 2;
        assert!(matches!(doc.import(), Err(TropError::InvalidDocument(_))));
        let mut doc = m.to_document();
        doc.schema = "tropcurve-0".into();
        assert!(matches!(doc.import(), Err(TropError::InvalidDocument(_))));
    }
}
