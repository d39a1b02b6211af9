//! Symbolic per-face overlap quadratics.
//!
//! Within one combinatorial face of translation space (no vertex of
//! either polygon on the other's boundary), every vertex of the overlap
//! region is an affine function of the translation `t`; running the
//! shoelace formula over those affine vertices yields the bivariate
//! quadratic equal to the overlap area on the whole face.

use crate::error::Error;
use crate::geom::{convex_intersection, ConvexPolygon, Point, Provenance};
use serde::{Deserialize, Serialize};

/// `f(t) = a·tx² + b·tx·ty + c·ty² + d·tx + e·ty + g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadratic2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub g: f64,
}

impl Quadratic2 {
    pub const ZERO: Quadratic2 = Quadratic2 {
        a: 0.0,
        b: 0.0,
        c: 0.0,
        d: 0.0,
        e: 0.0,
        g: 0.0,
    };

    pub fn constant(g: f64) -> Self {
        Quadratic2 { g, ..Self::ZERO }
    }

    pub fn eval(&self, t: Point) -> f64 {
        self.a * t.x * t.x + self.b * t.x * t.y + self.c * t.y * t.y + self.d * t.x + self.e * t.y
            + self.g
    }

    pub fn add(&self, o: &Quadratic2) -> Quadratic2 {
        Quadratic2 {
            a: self.a + o.a,
            b: self.b + o.b,
            c: self.c + o.c,
            d: self.d + o.d,
            e: self.e + o.e,
            g: self.g + o.g,
        }
    }

    /// The quadratic `t ↦ f(-t)`, for pairs evaluated with the roles of
    /// the two polygons swapped.
    pub fn negate_argument(&self) -> Quadratic2 {
        Quadratic2 {
            a: self.a,
            b: self.b,
            c: self.c,
            d: -self.d,
            e: -self.e,
            g: self.g,
        }
    }

    /// Restriction to the segment `p + s·(q - p)` as 1D coefficients
    /// `(A, B, C)` of `A·s² + B·s + C`.
    pub fn restrict_to_segment(&self, p: Point, q: Point) -> (f64, f64, f64) {
        let v = q - p;
        let aa = self.a * v.x * v.x + self.b * v.x * v.y + self.c * v.y * v.y;
        let bb = 2.0 * self.a * p.x * v.x
            + self.b * (p.x * v.y + p.y * v.x)
            + 2.0 * self.c * p.y * v.y
            + self.d * v.x
            + self.e * v.y;
        (aa, bb, self.eval(p))
    }
}

/// A point that depends affinely on the translation:
/// `p(t) = c0 + cx·tx + cy·ty`.
#[derive(Debug, Clone, Copy)]
struct AffinePoint {
    c0: Point,
    cx: Point,
    cy: Point,
}

impl AffinePoint {
    fn constant(p: Point) -> Self {
        AffinePoint {
            c0: p,
            cx: Point::ZERO,
            cy: Point::ZERO,
        }
    }
}

/// Cross product of two affine points, accumulated into a quadratic.
fn accumulate_cross(acc: &mut Quadratic2, p: &AffinePoint, q: &AffinePoint) {
    acc.g += p.c0.cross(q.c0);
    acc.d += p.c0.cross(q.cx) + p.cx.cross(q.c0);
    acc.e += p.c0.cross(q.cy) + p.cy.cross(q.c0);
    acc.a += p.cx.cross(q.cx);
    acc.b += p.cx.cross(q.cy) + p.cy.cross(q.cx);
    acc.c += p.cy.cross(q.cy);
}

fn solve2(a: Point, b: Point, rhs: Point) -> Option<Point> {
    // Rows a, b: solve [a; b]·p = rhs.
    let det = a.x * b.y - a.y * b.x;
    if det.abs() < 1e-14 {
        return None;
    }
    Some(Point::new(
        (rhs.x * b.y - a.y * rhs.y) / det,
        (a.x * rhs.y - rhs.x * b.x) / det,
    ))
}

fn provenance_point(
    prov: Provenance,
    x: &ConvexPolygon,
    y: &ConvexPolygon,
) -> Result<AffinePoint, Error> {
    match prov {
        Provenance::XVertex(i) => Ok(AffinePoint::constant(x.vertices()[i])),
        Provenance::YVertex(j) => Ok(AffinePoint {
            c0: y.vertices()[j],
            cx: Point::new(1.0, 0.0),
            cy: Point::new(0.0, 1.0),
        }),
        Provenance::EdgeEdge { x_edge, y_edge } => {
            // X edge line: n·p = d. Translated Y edge line: n'·(p − t) = d'.
            let (n, d) = x.edge_halfplane(x_edge);
            let (np, dp) = y.edge_halfplane(y_edge);
            let c0 = solve2(n, np, Point::new(d, dp));
            let cx = solve2(n, np, Point::new(0.0, np.x));
            let cy = solve2(n, np, Point::new(0.0, np.y));
            match (c0, cx, cy) {
                (Some(c0), Some(cx), Some(cy)) => Ok(AffinePoint { c0, cx, cy }),
                _ => Err(Error::DegenerateFace(format!(
                    "parallel edges {x_edge}/{y_edge} meet at the query translation"
                ))),
            }
        }
        Provenance::XEdgePair { e1, e2 } => {
            let (n1, d1) = x.edge_halfplane(e1);
            let (n2, d2) = x.edge_halfplane(e2);
            solve2(n1, n2, Point::new(d1, d2))
                .map(AffinePoint::constant)
                .ok_or_else(|| {
                    Error::DegenerateFace(format!("parallel edge lines {e1}/{e2} of one polygon"))
                })
        }
    }
}

/// The quadratic equal to `area(X ∩ (t+Y))` throughout the combinatorial
/// face containing `t0`. Fails when `t0` sits on a face boundary.
pub fn face_quadratic(
    x: &ConvexPolygon,
    y: &ConvexPolygon,
    t0: Point,
) -> Result<Quadratic2, Error> {
    let inter = match convex_intersection(x, y, t0) {
        None => return Ok(Quadratic2::ZERO),
        Some(i) => i,
    };
    if inter.degenerate {
        return Err(Error::DegenerateFace(format!(
            "translation ({}, {}) lies on a combinatorial face boundary",
            t0.x, t0.y
        )));
    }
    let pts: Result<Vec<AffinePoint>, Error> = inter
        .vertices
        .iter()
        .map(|&(_, prov)| provenance_point(prov, x, y))
        .collect();
    let pts = pts?;
    let mut acc = Quadratic2::ZERO;
    let n = pts.len();
    for k in 0..n {
        accumulate_cross(&mut acc, &pts[k], &pts[(k + 1) % n]);
    }
    Ok(Quadratic2 {
        a: acc.a / 2.0,
        b: acc.b / 2.0,
        c: acc.c / 2.0,
        d: acc.d / 2.0,
        e: acc.e / 2.0,
        g: acc.g / 2.0,
    })
}

/// Exact maximum of a quadratic over a closed convex polygon: best of the
/// interior stationary point (if any and inside), per-edge 1D maxima, and
/// the vertices.
pub fn maximize_quadratic_over_convex(q: &Quadratic2, face: &ConvexPolygon) -> (Point, f64) {
    let mut best = (face.vertices()[0], f64::NEG_INFINITY);
    let mut consider = |t: Point| {
        let v = q.eval(t);
        if v > best.1 {
            best = (t, v);
        }
    };

    // Stationary point: ∇f = 0 ⇔ [2a, b; b, 2c]·t = [−d, −e].
    let det = 4.0 * q.a * q.c - q.b * q.b;
    if det.abs() > 1e-14 {
        let t = Point::new(
            (-q.d * 2.0 * q.c - q.b * -q.e) / det,
            (2.0 * q.a * -q.e - -q.d * q.b) / det,
        );
        if face.contains(t) {
            consider(t);
        }
    }

    let vs = face.vertices();
    let n = vs.len();
    for i in 0..n {
        let (p, r) = (vs[i], vs[(i + 1) % n]);
        consider(p);
        let (aa, bb, _) = q.restrict_to_segment(p, r);
        if aa.abs() > 1e-14 {
            let s = -bb / (2.0 * aa);
            if (0.0..=1.0).contains(&s) {
                consider(p + (r - p) * s);
            }
        }
    }
    best
}
