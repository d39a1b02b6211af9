//! Approximate maximum-overlap translation matching for polygons that
//! decompose into convex parts.
//!
//! Given two simple polygons `P` and `Q`, each decomposable into at most
//! `k` convex pieces, [`matcher::match_polygons`] finds a translation `t`
//! whose overlap area is at least `(1 - eps)` times the best possible,
//! by combining per-pair piecewise-quadratic approximations of the overlap
//! function over translation space.
//!
//! Layout:
//! - [`geom`]: 2D primitives, hulls, convex intersection, affine maps.
//! - [`approx`]: rectangle sandwiches, inner approximations, scaling
//!   similarity, and the normalizing preprocessing transform.
//! - [`overlap`]: overlap functions — exact evaluation, symbolic face
//!   quadratics, level-set slices, and the per-pair approximations.
//! - [`decompose`]: convex decomposition of simple polygons.
//! - [`arrangement`]: planar overlay of event polygons with point location.
//! - [`matcher`]: the end-to-end matching pipeline and query structure.
//! - [`oracle`]: brute-force ground truth for testing and verification.
//! - [`io`]: polygon file formats and SVG rendering.

pub mod approx;
pub mod arrangement;
pub mod config;
pub mod decompose;
pub mod error;
pub mod geom;
pub mod io;
pub mod matcher;
pub mod oracle;
pub mod overlap;
pub mod sample;

pub use error::Error;
pub use geom::{ConvexPolygon, Point, SimplePolygon};
