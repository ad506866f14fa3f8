//! Exact n-th hulls of polygonal links.
//!
//! Geometry, counting and linking are generic over [`scalar::Scalar`]; the hull
//! engine and generators work over exact rationals.

pub mod counting;
pub mod cover;
pub mod format;
pub mod generators;
pub mod geometry;
pub mod hull;
pub mod link;
pub mod linking;
pub mod lp;
pub mod scalar;

pub use counting::{CrossingCount, GraphCrossing};
pub use scalar::Rational;

pub type Point = geometry::Point3<Rational>;
pub type Direction = geometry::Direction<Rational>;
pub type Plane = geometry::Plane<Rational>;
pub type Curve = link::ClosedPolyline<Rational>;
pub type Link = link::PolygonalLink<Rational>;
pub type Graph = link::EmbeddedGraph<Rational>;
