//! Approximation toolbox for convex polygons: scaling similarity,
//! rectangle sandwiches, inner vertex-thinned approximations, the
//! constant-factor overlap rectangle, and the normalizing preprocessing
//! transform used before building overlap approximations.

use crate::error::Error;
use crate::geom::{
    convex_intersection, lp3_maximize, width_and_diameter, AffineMap, Constraint3, ConvexPolygon,
    Point,
};
#[cfg(test)]
use crate::geom::TAU;
use serde::{Deserialize, Serialize};

/// Tunable constants of the approximation pipeline. The defaults are
/// engineering choices validated by the acceptance suite.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ApproxConstants {
    /// Shrink factor applied to the sandwich rectangle of the overlap
    /// region in [`const_approx_by_rect`].
    pub c3: f64,
    /// Containment factor: every overlap fits in `c_r` copies of the
    /// overlap rectangle.
    pub c_r: f64,
    /// Inner-approximation density: `N = ceil(c4 / eps)` slicing lines.
    pub c4: f64,
    /// Seed for the randomized incremental LP solver.
    pub lp_seed: u64,
}

impl Default for ApproxConstants {
    fn default() -> Self {
        ApproxConstants {
            c3: 20.0,
            c_r: 100.0,
            c4: 32.0,
            lp_seed: 0x5eed_1e57,
        }
    }
}

/// A rectangle `rect` (centered at the origin) and an anchor `z` with
/// `z + rect ⊆ C ⊆ z + 5·rect` for the source polygon `C`.
#[derive(Debug, Clone)]
pub struct RectSandwich {
    pub rect: ConvexPolygon,
    pub anchor: Point,
    /// Unit axes of the rectangle (base direction, normal direction).
    pub axis_u: Point,
    pub axis_v: Point,
    /// Half-extents along `axis_u` / `axis_v`.
    pub half: (f64, f64),
}

impl RectSandwich {
    /// The rectangle scaled by `s` about the origin, still axis-consistent.
    pub fn scaled_rect(&self, s: f64) -> ConvexPolygon {
        self.rect.scale(s)
    }

    /// `anchor + s·rect` as a polygon.
    pub fn placed(&self, s: f64) -> ConvexPolygon {
        self.rect.scale(s).translate(self.anchor)
    }
}

fn rect_from_frame(center: Point, u: Point, v: Point, hu: f64, hv: f64) -> ConvexPolygon {
    ConvexPolygon::new(vec![
        center + u * (-hu) + v * (-hv),
        center + u * hu + v * (-hv),
        center + u * hu + v * hv,
        center + u * (-hu) + v * hv,
    ])
    .expect("rectangle corners are in convex position")
}

/// Sandwich rectangle of a convex polygon: `anchor + rect ⊆ C` and
/// `C ⊆ anchor + 5·rect`.
///
/// Construction: let `uv` be a diameter of `C` (length `D`) and `w` the
/// vertex farthest from the line `uv` (distance `h`). The triangle `uvw`
/// lies in `C` and contains the rectangle of size `D/2 × h/2` whose base
/// sits on `uv` between the midpoints of `uw`'s and `vw`'s projections.
/// Every point of `C` projects into `[0, D]` along `uv` (else `uv` would
/// not be a diameter) and within `h` of the line, so five copies of the
/// rectangle cover `C`.
pub fn bounding_rectangle(c: &ConvexPolygon) -> RectSandwich {
    let wd = width_and_diameter(c);
    let (u, v) = wd.diameter_pair;
    let dir = (v - u).normalized();
    let mut nrm = dir.perp();
    let d = wd.diameter;

    // Farthest vertex from the line uv, measured signed along nrm.
    let mut h = 0.0f64;
    let mut wx = 0.0f64;
    for &p in c.vertices() {
        let y = (p - u).dot(nrm);
        if y.abs() > h.abs() {
            h = y;
            wx = (p - u).dot(dir);
        }
    }
    if h < 0.0 {
        nrm = -nrm;
        h = -h;
    }
    // Flat polygons are excluded by ConvexPolygon's positive-area invariant,
    // so h > 0.
    let anchor = u + dir * (wx / 2.0 + d / 4.0) + nrm * (h / 4.0);
    RectSandwich {
        rect: rect_from_frame(Point::ZERO, dir, nrm, d / 4.0, h / 4.0),
        anchor,
        axis_u: dir,
        axis_v: nrm,
        half: (d / 4.0, h / 4.0),
    }
}

/// Inner approximation with few vertices: the convex hull of the
/// boundary's crossings with `m` equally spaced lines perpendicular to
/// the width direction, plus the extreme vertices in the four frame
/// directions.
///
/// Guarantees: result ⊆ `p`; every point of `p` is within
/// `width(p)/m` of the result; at most `2m + 8` vertices.
pub fn approx_polygon(p: &ConvexPolygon, m: usize) -> Result<ConvexPolygon, Error> {
    if m < 1 {
        return Err(Error::BadParameter("approximation level m must be >= 1".into()));
    }
    let wd = width_and_diameter(p);
    let n = wd.width_direction;
    let c1 = p.support(n);
    let c0 = -p.support(-n);
    let w = c1 - c0;

    let mut marked: Vec<Point> = Vec::with_capacity(2 * m + 8);
    let verts = p.vertices();
    let nv = verts.len();
    for i in 1..=m {
        let level = c0 + w * i as f64 / (m + 1) as f64;
        for k in 0..nv {
            let a = verts[k];
            let b = verts[(k + 1) % nv];
            let va = n.dot(a) - level;
            let vb = n.dot(b) - level;
            if va.abs() <= 1e-12 * w.max(1.0) {
                marked.push(a);
            } else if (va > 0.0) != (vb > 0.0) && vb.abs() > 1e-12 * w.max(1.0) {
                let s = va / (va - vb);
                marked.push(a + (b - a) * s);
            }
        }
    }
    // Extreme vertices along the width frame; both endpoints when an edge
    // is extreme, so flat caps survive the hull.
    let perp = n.perp();
    for dir in [n, -n, perp, -perp] {
        let sup = p.support(dir);
        for &vtx in verts {
            if vtx.dot(dir) >= sup - 1e-12 * sup.abs().max(1.0) {
                marked.push(vtx);
            }
        }
    }
    ConvexPolygon::hull_of(&marked)
}

/// Scaling similarity: the minimal `alpha >= 0` such that some translate
/// of `X` fits in `alpha·Y` (scaled about the origin), with the witness
/// translation. Solved as a 3-variable LP with one constraint per
/// (X-vertex, Y-edge) pair.
pub fn scaling_similarity(
    x: &ConvexPolygon,
    y: &ConvexPolygon,
    consts: &ApproxConstants,
) -> (f64, Point) {
    let mut cons: Vec<Constraint3> = Vec::with_capacity(x.len() * y.len() + 1);
    for j in 0..y.len() {
        let (n, d) = y.edge_halfplane(j);
        for &xi in x.vertices() {
            // n·(xi + t) <= alpha·d  ⇔  n·t − d·alpha <= −n·xi
            cons.push(Constraint3 {
                a: [n.x, n.y, -d],
                b: -n.dot(xi),
            });
        }
    }
    cons.push(Constraint3 {
        a: [0.0, 0.0, -1.0],
        b: 0.0,
    });

    let rx = x.vertices().iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    let ry = y.vertices().iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    let rho_y = crate::geom::inscribed_disk_radius(y);
    let diam_x = width_and_diameter(x).diameter;
    let bound = 16.0 * (rx + ry + diam_x / rho_y + 1.0);
    let sol = lp3_maximize([0.0, 0.0, -1.0], &cons, bound, consts.lp_seed)
        .expect("scaling-similarity LP is always feasible for bounded polygons");
    (sol[2], Point::new(sol[0], sol[1]))
}

/// Intersection of two convex polygons as a polygon (no translation).
fn clip(a: &ConvexPolygon, b: &ConvexPolygon) -> Option<ConvexPolygon> {
    let inter = convex_intersection(a, b, Point::ZERO)?;
    ConvexPolygon::new(inter.vertices.iter().map(|v| v.0).collect()).ok()
}

/// A rectangle that sits (translated) inside the optimal overlap region
/// of `X` and `Y`, such that every overlap `X ∩ (t+Y)` fits under
/// translation inside `c_r` copies of it.
///
/// Construction: sandwich rectangles of `X` and `Y` are centered at the
/// origin and intersected; the sandwich rectangle of that intersection,
/// scaled by `5/c3`, is returned together with `c_r`.
pub fn const_approx_by_rect(
    x: &ConvexPolygon,
    y: &ConvexPolygon,
    consts: &ApproxConstants,
) -> Result<(RectSandwich, f64), Error> {
    let rx = bounding_rectangle(x);
    let ry = bounding_rectangle(y);
    let b = clip(&rx.rect, &ry.rect).ok_or_else(|| {
        Error::InvalidGeometry("centered sandwich rectangles are disjoint".into())
    })?;
    let rb = bounding_rectangle(&b);
    let s = 5.0 / consts.c3;
    Ok((
        RectSandwich {
            rect: rb.rect.scale(s),
            anchor: rb.anchor * s,
            axis_u: rb.axis_u,
            axis_v: rb.axis_v,
            half: (rb.half.0 * s, rb.half.1 * s),
        },
        consts.c_r,
    ))
}

/// Output of [`preprocess`]: the normalizing map and the thinned inner
/// approximations of both polygons, in both coordinate systems.
#[derive(Debug, Clone)]
pub struct Preprocessed {
    /// Affine map `T` sending `2·c_r·overlap_rect` to the unit square.
    pub map: AffineMap,
    /// Inner approximation of `T(X)`.
    pub x_approx: ConvexPolygon,
    /// Inner approximation of `T(Y)`.
    pub y_approx: ConvexPolygon,
    /// `T⁻¹(x_approx)`: inner approximation of `X` in input coordinates.
    pub x_back: ConvexPolygon,
    /// `T⁻¹(y_approx)`.
    pub y_back: ConvexPolygon,
    /// The overlap rectangle (input coordinates, centered at origin).
    pub overlap_rect: ConvexPolygon,
    /// Slicing-line count used for the inner approximations.
    pub n_lines: usize,
}

/// Normalizes a convex pair for overlap approximation: finds the overlap
/// rectangle, maps `2·c_r` copies of it onto the unit square, and thins
/// both images to `O(N)` vertices with `N = ceil(c4/eps)` slicing lines.
pub fn preprocess(
    x: &ConvexPolygon,
    y: &ConvexPolygon,
    eps: f64,
    consts: &ApproxConstants,
) -> Result<Preprocessed, Error> {
    if !(0.0..1.0).contains(&eps) || eps <= 0.0 {
        return Err(Error::BadParameter(format!("eps must be in (0,1), got {eps}")));
    }
    let n_lines = (consts.c4 / eps).ceil() as usize;
    preprocess_with_lines(x, y, n_lines, consts)
}

/// [`preprocess`] with an explicit slicing-line count, so callers can
/// refine the approximation adaptively.
pub fn preprocess_with_lines(
    x: &ConvexPolygon,
    y: &ConvexPolygon,
    n_lines: usize,
    consts: &ApproxConstants,
) -> Result<Preprocessed, Error> {
    let (rm, c_r) = const_approx_by_rect(x, y, consts)?;

    // T maps the rectangle 2·c_r·rect (frame axes u, v with half-extents
    // 2·c_r·h) onto [0,1]²: p ↦ (1/2,1/2) + (u·p/(4·c_r·hu), v·p/(4·c_r·hv)).
    let su = 1.0 / (4.0 * c_r * rm.half.0);
    let sv = 1.0 / (4.0 * c_r * rm.half.1);
    let map = AffineMap::new(
        [
            [rm.axis_u.x * su, rm.axis_u.y * su],
            [rm.axis_v.x * sv, rm.axis_v.y * sv],
        ],
        Point::new(0.5, 0.5),
    )?;
    let inv = map.inverse()?;

    let tx = map.apply_convex(x)?;
    let ty = map.apply_convex(y)?;
    let x_approx = approx_polygon(&tx, n_lines)?;
    let y_approx = approx_polygon(&ty, n_lines)?;
    let x_back = inv.apply_convex(&x_approx)?;
    let y_back = inv.apply_convex(&y_approx)?;
    Ok(Preprocessed {
        map,
        x_approx,
        y_approx,
        x_back,
        y_back,
        overlap_rect: rm.rect.clone(),
        n_lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::overlap_area;
    use crate::sample::{random_convex_polygon, rectangle, regular_polygon, unit_square};

    fn sandwich_holds(c: &ConvexPolygon) -> bool {
        let rs = bounding_rectangle(c);
        let inner = rs.placed(1.0);
        let outer = rs.placed(5.0);
        c.contains_polygon(&inner, TAU) && outer.contains_polygon(c, TAU)
    }

    #[test]
    fn sandwich_of_named_shapes() {
        // Triangle (0,0),(2,0),(1,1): diameter base, apex at height 1.
        let tri = ConvexPolygon::new(vec![
            Point::new(0., 0.),
            Point::new(2., 0.),
            Point::new(1., 1.),
        ])
        .unwrap();
        let rs = bounding_rectangle(&tri);
        assert!((rs.half.0 - 0.5).abs() < 1e-12);
        assert!((rs.half.1 - 0.25).abs() < 1e-12);
        assert!(sandwich_holds(&tri));

        assert!(sandwich_holds(&unit_square()));
        let sq_rs = bounding_rectangle(&unit_square());
        assert!(unit_square().area() / sq_rs.rect.area() <= 25.0 + 1e-9);

        let thin = rectangle(0., 0., 10., 0.1);
        let rs = bounding_rectangle(&thin);
        assert!(sandwich_holds(&thin));
        // Thin input gives a thin rectangle.
        assert!(rs.half.1 / rs.half.0 < 0.05);
    }

    #[test]
    fn sandwich_random_polygons() {
        for seed in 0..300 {
            let c = random_convex_polygon(777_000 + seed, 3 + (seed as usize % 20), 6.0);
            assert!(sandwich_holds(&c), "seed {seed}");
        }
    }

    #[test]
    fn approx_polygon_of_square_is_square() {
        let sq = unit_square();
        for m in [1, 4, 16] {
            let p = approx_polygon(&sq, m).unwrap();
            assert_eq!(p.len(), 4, "m={m}");
            assert!((p.area() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn approx_polygon_rejects_zero_lines() {
        assert!(approx_polygon(&unit_square(), 0).is_err());
    }

    fn directed_hausdorff_to(p: &ConvexPolygon, q: &ConvexPolygon, samples: usize) -> f64 {
        p.boundary_samples(samples)
            .into_iter()
            .map(|s| q.distance_to(s))
            .fold(0.0, f64::max)
    }

    #[test]
    fn approx_polygon_hexagon_distance() {
        let hex = regular_polygon(6, 1.0);
        let p = approx_polygon(&hex, 4).unwrap();
        assert!(hex.contains_polygon(&p, TAU));
        let d = directed_hausdorff_to(&hex, &p, 10_000);
        // width(hexagon)/4 = √3/4
        assert!(d <= 3f64.sqrt() / 4.0 + TAU, "distance {d}");
    }

    #[test]
    fn approx_polygon_random_counts_and_distance() {
        for seed in 0..30 {
            let c = random_convex_polygon(555_000 + seed, 64, 8.0);
            let m = 16;
            let p = approx_polygon(&c, m).unwrap();
            assert!(p.len() <= 2 * m + 8, "seed {seed}: {} verts", p.len());
            assert!(c.contains_polygon(&p, TAU), "seed {seed}");
            let w = width_and_diameter(&c).width;
            let d = directed_hausdorff_to(&c, &p, 2_000);
            assert!(d <= w / m as f64 + TAU, "seed {seed}: d={d} bound={}", w / m as f64);
        }
    }

    #[test]
    fn scaling_similarity_basic() {
        let consts = ApproxConstants::default();
        let sq = unit_square();
        let (a, _) = scaling_similarity(&sq, &sq, &consts);
        assert!((a - 1.0).abs() < 1e-6, "{a}");

        let big = sq.scale(2.0);
        let (a, _) = scaling_similarity(&sq, &big, &consts);
        assert!((a - 0.5).abs() < 1e-6, "{a}");

        let wide = rectangle(0., 0., 2., 1.);
        let (a, _) = scaling_similarity(&wide, &sq, &consts);
        assert!((a - 2.0).abs() < 1e-6, "{a}");
    }

    #[test]
    fn scaling_similarity_witness_and_minimality() {
        let consts = ApproxConstants::default();
        for seed in 0..50 {
            let x = random_convex_polygon(81_000 + seed, 5 + (seed as usize % 10), 3.0);
            let y = random_convex_polygon(82_000 + seed, 5 + (seed as usize % 12), 3.0);
            let (alpha, t) = scaling_similarity(&x, &y, &consts);
            let target = y.scale(alpha);
            let moved = x.translate(t);
            assert!(target.contains_polygon(&moved, 1e-6), "seed {seed}: alpha={alpha}");
            // Minimality probe: shrinking alpha slightly must break fit
            // for every translation; test the LP's own refit.
            let shrunk = y.scale(alpha * (1.0 - 1e-4));
            let (refit, _) = scaling_similarity(&x, &shrunk, &consts);
            assert!(refit > 1.0 - 1e-6, "seed {seed}: refit={refit}");
        }
    }

    #[test]
    fn const_approx_rect_fits_in_self_overlap() {
        let consts = ApproxConstants::default();
        let sq = unit_square();
        let (rm, c_r) = const_approx_by_rect(&sq, &sq, &consts).unwrap();
        assert_eq!(c_r, consts.c_r);
        // Optimal overlap of the square with itself is the square; a
        // translate of the rect must fit inside it.
        let (a, _) = scaling_similarity(&rm.rect, &sq, &consts);
        assert!(a <= 1.0 + 1e-9, "alpha={a}");
    }

    #[test]
    fn const_approx_rect_crossed_rectangles() {
        let consts = ApproxConstants::default();
        let x = rectangle(0., 0., 10., 1.);
        let y = rectangle(0., 0., 1., 10.);
        let (rm, c_r) = const_approx_by_rect(&x, &y, &consts).unwrap();
        // Optimal overlap is the unit square.
        let (a, _) = scaling_similarity(&rm.rect, &unit_square(), &consts);
        assert!(a <= 1.0 + 1e-9, "alpha={a}");
        // Every overlap fits (under translation) in c_r copies of the rect.
        let big = rm.rect.scale(c_r);
        for i in 0..100 {
            let t = Point::new(-0.9 + 0.1 * (i % 10) as f64, -9.0 + 1.9 * (i / 10) as f64);
            if overlap_area(&x, &y, t) <= 1e-9 {
                continue;
            }
            let inter = convex_intersection(&x, &y, t).unwrap();
            let ring: Vec<Point> = inter.vertices.iter().map(|v| v.0).collect();
            if let Ok(ov) = ConvexPolygon::new(ring) {
                let (a, _) = scaling_similarity(&ov, &big, &consts);
                assert!(a <= 1.0 + 1e-6, "t={t:?} alpha={a}");
            }
        }
    }

    #[test]
    fn preprocess_maps_overlap_rect_to_unit_square() {
        let consts = ApproxConstants::default();
        let sq = unit_square();
        let pre = preprocess(&sq, &sq, 0.25, &consts).unwrap();
        let scaled = pre.overlap_rect.scale(2.0 * consts.c_r);
        let img = pre.map.apply_convex(&scaled).unwrap();
        let unit = unit_square();
        assert!(unit.contains_polygon(&img, 1e-9));
        assert!(img.contains_polygon(&unit, 1e-9));
        // Inner approximation containment.
        let tx = pre.map.apply_convex(&sq).unwrap();
        assert!(tx.contains_polygon(&pre.x_approx, TAU));
        assert!(pre.x_back.area() <= sq.area() + 1e-9);
    }

    #[test]
    fn preprocess_bounds_width_for_incomparable_pairs() {
        let consts = ApproxConstants::default();
        let x = rectangle(0., 0., 10., 1.);
        let y = rectangle(0., 0., 1., 10.);
        let pre = preprocess(&x, &y, 0.1, &consts).unwrap();
        let wx = width_and_diameter(&pre.map.apply_convex(&x).unwrap()).width;
        let wy = width_and_diameter(&pre.map.apply_convex(&y).unwrap()).width;
        assert!(wx <= 7.0 + TAU, "width(T(X)) = {wx}");
        assert!(wy <= 7.0 + TAU, "width(T(Y)) = {wy}");
    }
}

#[cfg(test)]
mod reflection_tests {
    use super::*;
    use crate::sample::l_shape;

    /// Reflected parts must stay counterclockwise; a clockwise ring turns
    /// the fitting constraints inside out and breaks the similarity LP.
    #[test]
    fn ssim_of_reflected_parts_is_finite() {
        let l = l_shape();
        let parts = l.parts().unwrap().to_vec();
        let lr = l.reflect();
        let rparts = lr.parts().unwrap().to_vec();
        let consts = ApproxConstants::default();
        for (i, a) in parts.iter().enumerate() {
            for (j, b) in rparts.iter().enumerate() {
                let (s1, _) = scaling_similarity(a, b, &consts);
                let (s2, _) = scaling_similarity(b, a, &consts);
                assert!(s1.is_finite() && s2.is_finite(), "{i},{j}: {s1} {s2}");
                assert!(s1 >= 1.0 - 1e-9 || s2 >= 1.0 - 1e-9, "{i},{j}");
            }
        }
    }
}
