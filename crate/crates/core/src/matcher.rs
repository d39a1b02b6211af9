//! Whole-polygon matching under translation: per-part-pair
//! piecewise-quadratic approximations, overlay of all their event
//! polygons, per-face summed quadratics, global maximization, and a
//! logarithmic-time query structure over the result.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::ApproxConstants;
use crate::arrangement::Arrangement;
use crate::decompose::decompose;
use crate::error::Error;
use crate::geom::{ConvexPolygon, Point, SimplePolygon};
use crate::overlap::quadratic::Quadratic2;
use crate::overlap::{approx_convex_pair_variant, PiecewiseQuadratic};

/// Knobs for [`match_polygons_with`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatchOptions {
    pub constants: ApproxConstants,
    /// Build the part-pair approximations in parallel (results are merged
    /// in deterministic pair order either way).
    pub parallel: bool,
    /// Use the slice-onion small-in-large construction instead of the
    /// grid one.
    pub onion_slices: bool,
}

impl Default for MatchOptions {
    fn default() -> Self {
        MatchOptions {
            constants: ApproxConstants::default(),
            parallel: true,
            onion_slices: false,
        }
    }
}

/// Size and timing counters of one match run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatchStats {
    pub pair_count: usize,
    pub event_polygon_count: usize,
    pub segment_count: usize,
    pub vertex_count: usize,
    pub build_ms: f64,
    pub maximize_ms: f64,
}

/// Outcome of [`match_polygons`]: the best translation found and the
/// approximation value there.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatchResult {
    pub translation: Point,
    pub value: f64,
    pub epsilon: f64,
    /// Error budget used for each part pair: `epsilon / k²` with
    /// `k = max(#parts(P), #parts(Q))`.
    pub pair_budget: f64,
    pub face_count: usize,
    pub stats: MatchStats,
}

/// Full state of a match run: the per-pair approximations, the overlay,
/// and one summed quadratic per bounded face.
pub struct MatchContext {
    pub pairs: Vec<PiecewiseQuadratic>,
    pub arrangement: Arrangement,
    pub face_quadratics: Vec<Quadratic2>,
    pub result: MatchResult,
}

impl MatchContext {
    /// ψ(t) evaluated from the per-pair objects directly, bypassing the
    /// overlay (reference path for the query structure).
    pub fn direct_value(&self, t: Point) -> f64 {
        self.pairs
            .iter()
            .fold(Quadratic2::ZERO, |acc, ps| acc.add(&ps.face_quadratic_at(t)))
            .eval(t)
    }
}

/// Point-location structure answering ψ(t) queries in logarithmic time.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QueryStructure {
    pub arrangement: Arrangement,
    pub face_quadratics: Vec<Quadratic2>,
    /// Answer with the exhaustive face scan instead of the slab search
    /// (differential-testing fallback; must agree bit-for-bit).
    pub linear_scan: bool,
}

impl QueryStructure {
    pub fn locate(&self, t: Point) -> Option<usize> {
        if self.linear_scan {
            self.arrangement.locate_linear(t)
        } else {
            self.arrangement.locate(t)
        }
    }

    /// ψ(t); zero in the unbounded face. Queries on a subdivision edge
    /// resolve to the smaller adjacent face id (slab backend).
    pub fn query_overlap(&self, t: Point) -> f64 {
        match self.locate(t) {
            Some(f) => self.face_quadratics[f].eval(t),
            None => 0.0,
        }
    }
}

/// Extracts the query structure from a completed match.
pub fn build_query_structure(ctx: &MatchContext) -> QueryStructure {
    QueryStructure {
        arrangement: ctx.arrangement.clone(),
        face_quadratics: ctx.face_quadratics.clone(),
        linear_scan: false,
    }
}

/// Maximizes `q` over the closed region bounded by `ring`, considering
/// the stationary point (if inside), edge-restricted extrema, vertices,
/// and the fallback point `rep`.
fn maximize_over_ring(
    q: &Quadratic2,
    ring: &[Point],
    rep: Point,
    inside: impl Fn(Point) -> bool,
) -> (Point, f64) {
    let mut best = (rep, q.eval(rep));
    let mut consider = |p: Point| {
        let v = q.eval(p);
        if v > best.1 {
            best = (p, v);
        }
    };
    // Stationary point of the quadratic, when it falls in this face.
    let det = 4.0 * q.a * q.c - q.b * q.b;
    if det.abs() > 1e-300 {
        let sx = (-q.d * 2.0 * q.c - -q.e * q.b) / det;
        let sy = (2.0 * q.a * -q.e - q.b * -q.d) / det;
        let st = Point::new(sx, sy);
        if st.is_finite() && inside(st) {
            consider(st);
        }
    }
    let n = ring.len();
    for i in 0..n {
        let p1 = ring[i];
        let p2 = ring[(i + 1) % n];
        consider(p1);
        let (a2, a1, _) = q.restrict_to_segment(p1, p2);
        if a2 != 0.0 {
            let s = -a1 / (2.0 * a2);
            if s > 0.0 && s < 1.0 {
                consider(p1 + (p2 - p1) * s);
            }
        }
    }
    best
}

/// Computes a translation whose overlap is within `eps` of the best
/// possible one, together with the full evaluation context.
///
/// Both polygons are decomposed into convex parts; every part pair gets a
/// piecewise-quadratic approximation with budget `eps/k²`; all event
/// polygons are overlaid and each bounded face receives the sum of the
/// per-pair quadratics taken at its representative; the best face
/// maximum wins. The returned value equals the query structure's answer
/// at the returned translation.
pub fn match_polygons(
    p: &SimplePolygon,
    q: &SimplePolygon,
    eps: f64,
) -> Result<MatchContext, Error> {
    match_polygons_with(p, q, eps, &MatchOptions::default())
}

/// [`match_polygons`] with explicit options.
pub fn match_polygons_with(
    p: &SimplePolygon,
    q: &SimplePolygon,
    eps: f64,
    opts: &MatchOptions,
) -> Result<MatchContext, Error> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::BadParameter(format!(
            "eps must be in (0,1), got {eps}"
        )));
    }
    let t_build = Instant::now();
    let pd = decompose(p)?;
    let qd = decompose(q)?;
    let k = pd.parts.len().max(qd.parts.len());
    let pair_budget = eps / (k * k) as f64;

    let index: Vec<(usize, usize)> = (0..pd.parts.len())
        .flat_map(|i| (0..qd.parts.len()).map(move |j| (i, j)))
        .collect();
    let build_one = |&(i, j): &(usize, usize)| {
        approx_convex_pair_variant(
            &pd.parts[i],
            &qd.parts[j],
            pair_budget,
            &opts.constants,
            opts.onion_slices,
        )
    };
    let pairs: Result<Vec<PiecewiseQuadratic>, Error> = if opts.parallel {
        index.par_iter().map(build_one).collect()
    } else {
        index.iter().map(build_one).collect()
    };
    let pairs = pairs?;

    let event: Vec<ConvexPolygon> = pairs
        .iter()
        .flat_map(|ps| ps.event_polygons.iter().cloned())
        .collect();
    let arrangement = Arrangement::build(&event)?;

    // The unbounded face must carry ψ = 0: probe far outside every event
    // polygon.
    let far = {
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        for e in &event {
            let (l, h) = e.bbox();
            lo = Point::new(lo.x.min(l.x), lo.y.min(l.y));
            hi = Point::new(hi.x.max(h.x), hi.y.max(h.y));
        }
        hi + (hi - lo) + Point::new(1.0, 1.0)
    };
    let psi_far: f64 = pairs.iter().map(|ps| ps.evaluate(far)).sum();
    if psi_far != 0.0 {
        return Err(Error::InvalidGeometry(format!(
            "unbounded face evaluates to {psi_far}, expected exactly 0"
        )));
    }

    let face_quadratics: Vec<Quadratic2> = arrangement
        .faces
        .iter()
        .map(|f| {
            pairs.iter().fold(Quadratic2::ZERO, |acc, ps| {
                acc.add(&ps.face_quadratic_at(f.representative))
            })
        })
        .collect();
    let build_ms = t_build.elapsed().as_secs_f64() * 1e3;

    // Global maximization over the bounded faces (the unbounded face is
    // zero by the assertion above).
    let t_max = Instant::now();
    let mut best_face = 0usize;
    let mut best = (Point::ZERO, f64::NEG_INFINITY);
    for (fi, face) in arrangement.faces.iter().enumerate() {
        let cand = maximize_over_ring(
            &face_quadratics[fi],
            &face.ring,
            face.representative,
            |pt| arrangement.locate(pt) == Some(fi),
        );
        if cand.1 > best.1 {
            best = cand;
            best_face = fi;
        }
    }
    // Boundary maximizers are nudged into the face so the reported value
    // is exactly what the query structure answers at the reported point.
    let mut t_star = best.0;
    if arrangement.locate(t_star) != Some(best_face) {
        let rep = arrangement.faces[best_face].representative;
        let mut placed = false;
        for frac in [1e-12, 1e-10, 1e-8, 1e-6, 1e-4] {
            let cand = t_star + (rep - t_star) * frac;
            if arrangement.locate(cand) == Some(best_face) {
                t_star = cand;
                placed = true;
                break;
            }
        }
        if !placed {
            t_star = rep;
        }
    }
    let value = face_quadratics[best_face].eval(t_star);
    let maximize_ms = t_max.elapsed().as_secs_f64() * 1e3;

    let result = MatchResult {
        translation: t_star,
        value,
        epsilon: eps,
        pair_budget,
        face_count: arrangement.faces.len(),
        stats: MatchStats {
            pair_count: pairs.len(),
            event_polygon_count: event.len(),
            segment_count: arrangement.segments.len(),
            vertex_count: arrangement.vertices.len(),
            build_ms,
            maximize_ms,
        },
    };
    Ok(MatchContext {
        pairs,
        arrangement,
        face_quadratics,
        result,
    })
}
