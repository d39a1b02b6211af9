//! Superlevel-set slices of the overlap function.
//!
//! For convex `X`, `Y` the set `{t : area(X ∩ (t+Y)) ≥ alpha}` is convex
//! and the overlap function is unimodal along every line, so the boundary
//! can be traced by root-finding along rays from an interior center. The
//! traced vertices lie on the level curve to high accuracy, and their
//! convex hull is an inner approximation of the slice by convexity.

use crate::error::Error;
use crate::geom::{overlap_area, width_and_diameter, ConvexPolygon, Point};

/// One superlevel set `{t : overlap(t) ≥ alpha}` with its traced boundary.
#[derive(Debug, Clone)]
pub struct Slice {
    pub alpha: f64,
    pub boundary: ConvexPolygon,
}

/// Relative accuracy of boundary vertices: `|overlap(v) − alpha| ≤ tol·alpha`.
const VERTEX_REL_TOL: f64 = 1e-9;

/// Directions traced around the center.
const DEFAULT_RAYS: usize = 360;

/// Moves `c` toward the maximum of the unimodal function `f` by
/// alternating exact-precision ternary searches along the axes.
pub(crate) fn ascend_to_max<F: Fn(Point) -> f64>(f: &F, start: Point, scale: f64) -> Point {
    let mut c = start;
    let mut window = scale;
    for _ in 0..6 {
        for axis in 0..2 {
            let dir = if axis == 0 {
                Point::new(1.0, 0.0)
            } else {
                Point::new(0.0, 1.0)
            };
            let mut lo = -window;
            let mut hi = window;
            for _ in 0..160 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                if f(c + dir * m1) < f(c + dir * m2) {
                    lo = m1;
                } else {
                    hi = m2;
                }
            }
            c = c + dir * ((lo + hi) / 2.0);
        }
        window /= 8.0;
    }
    c
}

/// Root of `f(c + r·d) = alpha` in `r`, given `f(c) ≥ alpha` and `f`
/// unimodal along the ray. Returns the radius.
fn radial_root<F: Fn(Point) -> f64>(
    f: &F,
    c: Point,
    d: Point,
    alpha: f64,
    scale: f64,
) -> f64 {
    // Expand until below the level.
    let mut r_out = 1e-3 * scale;
    let mut guard = 0;
    while f(c + d * r_out) >= alpha && guard < 60 {
        r_out *= 2.0;
        guard += 1;
    }
    let mut lo = 0.0f64;
    let mut hi = r_out;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let v = f(c + d * mid);
        if (v - alpha).abs() <= VERTEX_REL_TOL * alpha {
            return mid;
        }
        if v >= alpha {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-17 * scale.max(1.0) {
            break;
        }
    }
    lo
}

/// Traces the convex boundary of `{t : overlap(X, t+Y) ≥ alpha}`.
///
/// `seed` must satisfy `overlap(seed) ≥ alpha` up to the search slack:
/// the routine first climbs from `seed` to (near) the maximum, and fails
/// with a no-such-slice error if even that point is below `alpha`.
pub fn compute_slice(
    x: &ConvexPolygon,
    y: &ConvexPolygon,
    alpha: f64,
    seed: Point,
) -> Result<Slice, Error> {
    compute_slice_with_rays(x, y, alpha, seed, DEFAULT_RAYS)
}

/// [`compute_slice`] with an explicit ray count for the boundary trace.
pub fn compute_slice_with_rays(
    x: &ConvexPolygon,
    y: &ConvexPolygon,
    alpha: f64,
    seed: Point,
    rays: usize,
) -> Result<Slice, Error> {
    if !(alpha > 0.0) {
        return Err(Error::BadParameter(format!(
            "slice level must be positive, got {alpha}"
        )));
    }
    if rays < 8 {
        return Err(Error::BadParameter("ray count must be at least 8".into()));
    }
    let f = |t: Point| overlap_area(x, y, t);
    let scale = width_and_diameter(x).diameter + width_and_diameter(y).diameter;

    let c = if f(seed) >= alpha {
        seed
    } else {
        ascend_to_max(&f, seed, scale)
    };
    let fc = f(c);
    if fc < alpha * (1.0 - 1e-9) {
        return Err(Error::NoSuchSlice(format!(
            "level {alpha} exceeds the largest overlap found ({fc})"
        )));
    }

    let mut pts: Vec<Point> = Vec::with_capacity(rays);
    let floor = 1e-13 * scale;
    for k in 0..rays {
        let a = std::f64::consts::TAU * k as f64 / rays as f64;
        let d = Point::new(a.cos(), a.sin());
        let r = radial_root(&f, c, d, alpha, scale).max(floor);
        pts.push(c + d * r);
    }
    let boundary = match ConvexPolygon::hull_of(&pts) {
        Ok(b) => b,
        Err(_) => {
            // A slice tighter than the coordinate tolerance (level at the
            // very peak): represent it as the smallest usable ring.
            let r_max = pts
                .iter()
                .map(|p| p.dist(c))
                .fold(0.0f64, f64::max)
                .max(5e-9 * scale.max(1.0));
            let tri = (0..3)
                .map(|k| {
                    let a = std::f64::consts::TAU * k as f64 / 3.0;
                    c + Point::new(a.cos(), a.sin()) * r_max
                })
                .collect();
            ConvexPolygon::new(tri).map_err(|_| {
                Error::DegenerateFace(format!(
                    "slice at level {alpha} collapsed to a degenerate ring"
                ))
            })?
        }
    };
    Ok(Slice { alpha, boundary })
}
