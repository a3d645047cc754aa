//! Exact tropical plane curves.
//!
//! Curves are built from max-plus polynomials with rational coefficients. The
//! crate computes their dual subdivisions, stable intersections with exact
//! multiplicities, and the group law on the cycle of a tropical elliptic curve.

pub mod curve;
pub mod doc;
pub mod elliptic;
pub mod error;
pub mod exact;
pub mod intersect;
pub mod poly;
pub mod subdiv;
pub mod svg;

pub use curve::{build_curve, TropicalCurve};
pub use error::{Result, TropError};
pub use exact::{IntVec2, LatticePolygon, Point2, Rational};
pub use poly::TropicalPolynomial;
pub use subdiv::DualSubdivision;
