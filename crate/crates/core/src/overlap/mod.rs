//! Overlap functions over translation space: exact evaluation, symbolic
//! face quadratics, level-set slices, and the piecewise-quadratic
//! approximations for a convex pair.
//!
//! The output object [`PiecewiseQuadratic`] approximates
//! `t ↦ area(X ∩ (t+Y))` within `eps · max_t area(X ∩ (t+Y))` everywhere,
//! and is quadratic on each face of the arrangement of its event polygons.

pub mod quadratic;
pub mod slice;

pub use quadratic::{face_quadratic, maximize_quadratic_over_convex, Quadratic2};
pub use slice::{compute_slice, compute_slice_with_rays, Slice};

use crate::approx::{
    approx_polygon, bounding_rectangle, preprocess_with_lines, scaling_similarity, ApproxConstants,
};
use crate::error::Error;
use crate::geom::{overlap_area, width_and_diameter, ConvexPolygon, Point};


/// Where an event polygon comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    /// Reflected copy of the larger polygon around one grid point.
    GridPoint,
    /// Vertex-against-polygon region of the thinned incomparable pair.
    VertexRegion,
    /// Traced boundary of one onion slice.
    SliceRing,
}

#[derive(Debug, Clone)]
enum Backend {
    /// `ψ(t) = cell_area · #{p ∈ points : p − t ∈ y}`.
    Grid {
        points: Vec<Point>,
        cell_area: f64,
        y: ConvexPolygon,
    },
    /// `ψ(t) = α` of the innermost slice containing `t` (slices sorted by
    /// increasing level; each nests in the previous).
    Onion { alphas: Vec<f64> },
    /// `ψ(t) = area(x ∩ (t+y))` for the thinned pair; quadratics are the
    /// symbolic face quadratics of that pair.
    Exact { x: ConvexPolygon, y: ConvexPolygon },
}

/// A piecewise-quadratic approximation of one convex pair's overlap
/// function, with the event polygons whose arrangement carries the pieces.
#[derive(Debug, Clone)]
pub struct PiecewiseQuadratic {
    pub event_polygons: Vec<ConvexPolygon>,
    pub kinds: Vec<EventKind>,
    /// The `eps` this object guarantees relative to the pair's maximum
    /// overlap.
    pub eps_budget: f64,
    /// When set, the object was built with the pair's roles swapped and
    /// is evaluated at `-t` internally (event polygons already reflected).
    pub negate_t: bool,
    backend: Backend,
}

impl PiecewiseQuadratic {
    /// ψ(t).
    pub fn evaluate(&self, t: Point) -> f64 {
        let t = if self.negate_t { -t } else { t };
        match &self.backend {
            Backend::Grid {
                points,
                cell_area,
                y,
            } => {
                let hits = points.iter().filter(|&&p| y.contains(p - t)).count();
                cell_area * hits as f64
            }
            Backend::Onion { alphas } => {
                for i in (0..alphas.len()).rev() {
                    if self.raw_polygon(i).contains(t) {
                        return alphas[i];
                    }
                }
                0.0
            }
            Backend::Exact { x, y } => overlap_area(x, y, t),
        }
    }

    /// Event polygon `i` in the internal (possibly negated) frame.
    fn raw_polygon(&self, i: usize) -> ConvexPolygon {
        if self.negate_t {
            self.event_polygons[i].reflect()
        } else {
            self.event_polygons[i].clone()
        }
    }

    /// The quadratic valid on the arrangement face containing `t`. For
    /// translations on a combinatorial boundary of the thinned pair, the
    /// query point is nudged; as a last resort the face is treated as
    /// constant at ψ(t).
    pub fn face_quadratic_at(&self, t: Point) -> Quadratic2 {
        let ti = if self.negate_t { -t } else { t };
        let q = match &self.backend {
            Backend::Grid { .. } | Backend::Onion { .. } => {
                Quadratic2::constant(self.evaluate(t))
            }
            Backend::Exact { x, y } => {
                let scale = width_and_diameter(x).diameter + width_and_diameter(y).diameter;
                let mut found = None;
                'outer: for mag in [0.0, 1e-9, 1e-7, 1e-5] {
                    let offsets = if mag == 0.0 {
                        vec![Point::ZERO]
                    } else {
                        vec![
                            Point::new(mag * scale, mag * scale * 0.618),
                            Point::new(-mag * scale * 0.618, mag * scale),
                            Point::new(-mag * scale, -mag * scale * 0.618),
                            Point::new(mag * scale * 0.618, -mag * scale),
                        ]
                    };
                    for off in offsets {
                        if let Ok(q) = face_quadratic(x, y, ti + off) {
                            found = Some(q);
                            break 'outer;
                        }
                    }
                }
                found.unwrap_or_else(|| Quadratic2::constant(overlap_area(x, y, ti)))
            }
        };
        if self.negate_t {
            q.negate_argument()
        } else {
            q
        }
    }

    /// Wraps a pair approximation built for `(Y, X)` so it answers for
    /// `(X, Y)`: `overlap(X, t+Y) = overlap(Y, −t+X)`.
    fn negated(mut self) -> Self {
        self.negate_t = !self.negate_t;
        self.event_polygons = self.event_polygons.iter().map(|p| p.reflect()).collect();
        self
    }
}

fn check_eps(eps: f64) -> Result<(), Error> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::BadParameter(format!("eps must be in (0,1), got {eps}")));
    }
    Ok(())
}

/// Grid approximation for a pair where `X` fits inside a translate of a
/// scaled-down `Y`: lattice points of `X`'s sandwich-rectangle frame kept
/// inside `X`; the overlap is estimated by counting which of them land in
/// `t + Y`. Event polygons are the reflected copies `p − Y`.
pub fn approx_small_in_large(
    x: &ConvexPolygon,
    y: &ConvexPolygon,
    eps: f64,
    consts: &ApproxConstants,
) -> Result<PiecewiseQuadratic, Error> {
    check_eps(eps)?;
    let (ssim, _) = scaling_similarity(x, y, consts);
    if ssim >= 1.0 {
        return Err(Error::PreconditionViolated(format!(
            "first polygon does not fit in the second (scaling similarity {ssim})"
        )));
    }

    // Lattice over X's tight bounding box in its sandwich-rectangle frame.
    let rs = bounding_rectangle(x);
    let (u, v) = (rs.axis_u, rs.axis_v);
    let (mut ulo, mut uhi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut vlo, mut vhi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &p in x.vertices() {
        ulo = ulo.min(p.dot(u));
        uhi = uhi.max(p.dot(u));
        vlo = vlo.min(p.dot(v));
        vhi = vhi.max(p.dot(v));
    }
    let m = (4.0 / eps).ceil() as usize;
    let du = (uhi - ulo) / m as f64;
    let dv = (vhi - vlo) / m as f64;
    let cell_area = du * dv;

    let mut points = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let p = u * (ulo + (i as f64 + 0.5) * du) + v * (vlo + (j as f64 + 0.5) * dv);
            if x.contains(p) {
                points.push(p);
            }
        }
    }

    let refl_y = y.reflect();
    let event_polygons: Vec<ConvexPolygon> =
        points.iter().map(|&p| refl_y.translate(p)).collect();
    let kinds = vec![EventKind::GridPoint; event_polygons.len()];
    Ok(PiecewiseQuadratic {
        event_polygons,
        kinds,
        eps_budget: eps,
        negate_t: false,
        backend: Backend::Grid {
            points,
            cell_area,
            y: y.clone(),
        },
    })
}

/// Alternate small-in-large construction: an onion of nested level-set
/// slices of the overlap function of a thinned `X'` against `Y`; ψ is the
/// level of the innermost slice containing `t`. Kept for cross-validation
/// of the grid construction.
pub fn approx_small_in_large_slices(
    x: &ConvexPolygon,
    y: &ConvexPolygon,
    eps: f64,
    consts: &ApproxConstants,
) -> Result<PiecewiseQuadratic, Error> {
    check_eps(eps)?;
    let (ssim, _) = scaling_similarity(x, y, consts);
    if ssim >= 1.0 {
        return Err(Error::PreconditionViolated(format!(
            "first polygon does not fit in the second (scaling similarity {ssim})"
        )));
    }

    // Thin X with a quarter of the budget; the rest pays for the ring
    // discretization (0.7) with margin for the traced boundaries.
    let m_x = (16.0 / eps).ceil() as usize;
    let xp = approx_polygon(x, m_x)?;
    // X' fits in a translate of Y, so its maximum overlap is its area.
    let mu = xp.area();
    let f = |t: Point| overlap_area(&xp, y, t);
    let start = y.centroid() - xp.centroid();
    let center = slice::ascend_to_max(&f, start, width_and_diameter(y).diameter);

    let step = 0.7 * eps;
    let count = (1.0 / step).ceil() as usize;
    let mut alphas = Vec::new();
    let mut rings = Vec::new();
    let mut kinds = Vec::new();
    for i in 0..count {
        let frac = ((i + 1) as f64 * step).min(1.0);
        let alpha = frac * mu;
        let s = compute_slice(&xp, y, alpha, center)?;
        alphas.push(alpha);
        rings.push(s.boundary);
        kinds.push(EventKind::SliceRing);
        if frac >= 1.0 {
            break;
        }
    }
    Ok(PiecewiseQuadratic {
        event_polygons: rings,
        kinds,
        eps_budget: eps,
        negate_t: false,
        backend: Backend::Onion { alphas },
    })
}

/// Approximation for an incomparable pair (neither fits in the other):
/// both polygons are normalized and thinned, and ψ is the exact overlap
/// function of the thinned pair, piecewise quadratic over the arrangement
/// of its vertex-against-polygon event regions.
pub fn approx_incomparable(
    x: &ConvexPolygon,
    y: &ConvexPolygon,
    eps: f64,
    consts: &ApproxConstants,
) -> Result<PiecewiseQuadratic, Error> {
    check_eps(eps)?;

    let mut n_lines = (consts.c4 / eps).ceil() as usize;
    let mut pre = preprocess_with_lines(x, y, n_lines, consts)?;
    let mut center = {
        let tx = pre.map.apply_convex(x)?;
        let ty = pre.map.apply_convex(y)?;
        tx.centroid() - ty.centroid()
    };
    for round in 0..7 {
        // Certify the thinning error in normalized coordinates. Every
        // overlap fits (translated) into c_r copies of the overlap
        // rectangle, i.e. a square of side 1/2 there, so the boundary
        // length of either polygon inside the overlap region is at most
        // its perimeter, 2. The area lost to thinning is then at most
        // 2·(d_x + d_y), where d is the directed Hausdorff distance from
        // the polygon to its thinned copy — exactly computable at the
        // vertices, since distance-to-a-convex-set is convex.
        let tx = pre.map.apply_convex(x)?;
        let ty = pre.map.apply_convex(y)?;
        let d_x = tx
            .vertices()
            .iter()
            .map(|&v| pre.x_approx.distance_to(v))
            .fold(0.0f64, f64::max);
        let d_y = ty
            .vertices()
            .iter()
            .map(|&v| pre.y_approx.distance_to(v))
            .fold(0.0f64, f64::max);
        let err_bound = 2.0 * (d_x + d_y);

        // Lower bound on the normalized maximum overlap: the overlap
        // rectangle fits in the optimum (area 1/(4·c_r²) after mapping),
        // and an ascent usually does much better. The climb runs on the
        // original pair (much fewer vertices than the thinned one); a
        // single thinned evaluation at the summit is still a valid lower
        // bound on the thinned maximum.
        let f_orig = |t: Point| overlap_area(&tx, &ty, t);
        center = slice::ascend_to_max(&f_orig, center, 1.0);
        let mu_lb = overlap_area(&pre.x_approx, &pre.y_approx, center)
            .max(1.0 / (4.0 * consts.c_r * consts.c_r));

        if err_bound <= 0.9 * eps * mu_lb || round == 6 {
            break;
        }
        n_lines *= 2;
        pre = preprocess_with_lines(x, y, n_lines, consts)?;
    }

    let xp = pre.x_back.clone();
    let yp = pre.y_back.clone();
    let refl_y = yp.reflect();
    let mut event_polygons = Vec::with_capacity(xp.len() + yp.len());
    let mut kinds = Vec::with_capacity(xp.len() + yp.len());
    for &vtx in xp.vertices() {
        event_polygons.push(refl_y.translate(vtx));
        kinds.push(EventKind::VertexRegion);
    }
    for &w in yp.vertices() {
        event_polygons.push(xp.translate(-w));
        kinds.push(EventKind::VertexRegion);
    }
    Ok(PiecewiseQuadratic {
        event_polygons,
        kinds,
        eps_budget: eps,
        negate_t: false,
        backend: Backend::Exact { x: xp, y: yp },
    })
}

/// Builds the piecewise-quadratic approximation for any convex pair,
/// dispatching on scaling similarity: strictly-smaller polygons take the
/// grid construction (swapped and negated when `Y` is the small one),
/// everything else the incomparable construction.
pub fn approx_convex_pair(
    x: &ConvexPolygon,
    y: &ConvexPolygon,
    eps: f64,
    consts: &ApproxConstants,
) -> Result<PiecewiseQuadratic, Error> {
    approx_convex_pair_variant(x, y, eps, consts, false)
}

/// [`approx_convex_pair`] with the small-in-large construction selectable:
/// `onion_slices` swaps the grid construction for the slice onion.
pub fn approx_convex_pair_variant(
    x: &ConvexPolygon,
    y: &ConvexPolygon,
    eps: f64,
    consts: &ApproxConstants,
    onion_slices: bool,
) -> Result<PiecewiseQuadratic, Error> {
    check_eps(eps)?;
    let small_in_large = if onion_slices {
        approx_small_in_large_slices
    } else {
        approx_small_in_large
    };
    let tie = 1e-6;
    let (sxy, _) = scaling_similarity(x, y, consts);
    if sxy < 1.0 - tie {
        return small_in_large(x, y, eps, consts);
    }
    let (syx, _) = scaling_similarity(y, x, consts);
    if syx < 1.0 - tie {
        return Ok(small_in_large(y, x, eps, consts)?.negated());
    }
    approx_incomparable(x, y, eps, consts)
}

#[cfg(test)]
mod tests;
