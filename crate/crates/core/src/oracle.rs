//! Brute-force ground truth: exact overlap of decomposed polygons and a
//! refining grid search for the maximum-overlap translation. Used as the
//! referee for every approximation guarantee in the test suite.

use crate::error::Error;
use crate::geom::{overlap_area, ConvexPolygon, Point, SimplePolygon};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridConfig {
    /// Samples per axis of the base grid.
    pub base_resolution: usize,
    /// Number of 10×-finer local refinement rounds.
    pub refinement_levels: usize,
    /// Samples per axis of each refinement window.
    pub window: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            base_resolution: 201,
            refinement_levels: 3,
            window: 21,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleReport {
    pub best_translation: Point,
    pub best_value: f64,
    /// Pitch of the finest grid evaluated.
    pub grid_pitch: f64,
    pub refinement_levels: usize,
    /// How far the true maximum can exceed `best_value`: overlap is
    /// Lipschitz in `t` with constant at most the sum of perimeters.
    pub value_slack_bound: f64,
}

fn parts_of(p: &SimplePolygon) -> Result<&[ConvexPolygon], Error> {
    p.parts().ok_or_else(|| {
        Error::PreconditionViolated("polygon has no convex decomposition attached".into())
    })
}

/// Exact overlap area of two decomposed simple polygons at translation
/// `t`: the sum of convex-pair overlaps over the decompositions.
pub fn exact_overlap_general(p: &SimplePolygon, q: &SimplePolygon, t: Point) -> Result<f64, Error> {
    let ps = parts_of(p)?;
    let qs = parts_of(q)?;
    let mut sum = 0.0;
    for pi in ps {
        for qj in qs {
            sum += overlap_area(pi, qj, t);
        }
    }
    Ok(sum)
}

/// Best `(value, t)` over an `nx × ny` grid on `[lo, hi]`, deterministic
/// under parallelism: ties prefer lexicographically smaller `(tx, ty)`.
fn grid_scan<F: Fn(Point) -> f64 + Sync>(
    f: &F,
    lo: Point,
    hi: Point,
    nx: usize,
    ny: usize,
) -> (f64, Point) {
    let step = |a: f64, b: f64, n: usize, i: usize| {
        if n <= 1 {
            (a + b) / 2.0
        } else {
            a + (b - a) * i as f64 / (n - 1) as f64
        }
    };
    (0..ny)
        .into_par_iter()
        .map(|iy| {
            let ty = step(lo.y, hi.y, ny, iy);
            let mut best = (f64::NEG_INFINITY, Point::ZERO);
            for ix in 0..nx {
                let t = Point::new(step(lo.x, hi.x, nx, ix), ty);
                let v = f(t);
                if v > best.0 {
                    best = (v, t);
                }
            }
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, Point::ZERO),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && (b.1.x, b.1.y) < (a.1.x, a.1.y)) {
                    b
                } else {
                    a
                }
            },
        )
}

/// Grid search for the maximum overlap over the Minkowski-difference
/// bounding box of the supports, refined locally around the incumbent.
pub fn grid_max_overlap(
    p: &SimplePolygon,
    q: &SimplePolygon,
    cfg: &GridConfig,
) -> Result<OracleReport, Error> {
    let ps = parts_of(p)?.to_vec();
    let qs = parts_of(q)?.to_vec();
    let f = move |t: Point| {
        let mut sum = 0.0;
        for pi in &ps {
            for qj in &qs {
                sum += overlap_area(pi, qj, t);
            }
        }
        sum
    };

    // Overlap is zero unless t + bbox(Q) meets bbox(P).
    let (plo, phi) = p.bbox();
    let (qlo, qhi) = q.bbox();
    let lo = plo - qhi;
    let hi = phi - qlo;

    let n = cfg.base_resolution.max(2);
    let (mut best_v, mut best_t) = grid_scan(&f, lo, hi, n, n);
    let mut pitch = ((hi.x - lo.x) / (n - 1) as f64).max((hi.y - lo.y) / (n - 1) as f64);

    for _ in 0..cfg.refinement_levels {
        pitch /= 10.0;
        let w = cfg.window.max(3);
        let half = pitch * (w - 1) as f64 / 2.0;
        let wlo = best_t - Point::new(half, half);
        let whi = best_t + Point::new(half, half);
        let (v, t) = grid_scan(&f, wlo, whi, w, w);
        // Refinement is monotone: the window contains the incumbent.
        if v > best_v {
            best_v = v;
            best_t = t;
        }
    }

    Ok(OracleReport {
        best_translation: best_t,
        best_value: best_v,
        grid_pitch: pitch,
        refinement_levels: cfg.refinement_levels,
        value_slack_bound: (p.perimeter() + q.perimeter()) * pitch,
    })
}

/// Convenience wrapper: grid maximum for a single convex pair.
pub fn grid_max_overlap_convex(
    x: &ConvexPolygon,
    y: &ConvexPolygon,
    cfg: &GridConfig,
) -> OracleReport {
    let p = SimplePolygon::from_convex(x);
    let q = SimplePolygon::from_convex(y);
    grid_max_overlap(&p, &q, cfg).expect("convex inputs always carry their own decomposition")
}
