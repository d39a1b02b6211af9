//! Exact-as-practical 2D primitives: points, polygons, hulls, calipers,
//! convex intersection, areas, affine maps.
//!
//! All predicates take an absolute coordinate tolerance [`TAU`] unless noted.
//! Polygons are canonicalized on construction (duplicate and
//! collinear-consecutive vertices removed) and stored counterclockwise.

mod intersect;
mod lp;

pub use intersect::{convex_intersection, overlap_area, ConvexIntersection, Provenance};
pub use lp::{lp2_maximize, lp3_maximize, Constraint2, Constraint3};

use crate::error::Error;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// Absolute coordinate tolerance for containment/equality predicates.
pub const TAU: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ZERO: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product `self × o`.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn normalized(self) -> Point {
        let n = self.norm();
        Point::new(self.x / n, self.y / n)
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// Orientation of the triangle `a, b, c`: positive for counterclockwise.
pub fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, Error> {
        if a.dist(b) <= TAU {
            return Err(Error::InvalidGeometry("segment endpoints coincide".into()));
        }
        Ok(Segment { a, b })
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    /// Distance from `p` to the closed segment.
    pub fn dist_to_point(&self, p: Point) -> f64 {
        let d = self.b - self.a;
        let t = ((p - self.a).dot(d) / d.dot(d)).clamp(0.0, 1.0);
        p.dist(self.a + d * t)
    }
}

/// Signed shoelace area of a vertex ring (positive for counterclockwise).
pub fn signed_area(ring: &[Point]) -> f64 {
    let n = ring.len();
    let mut s = 0.0;
    for i in 0..n {
        s += ring[i].cross(ring[(i + 1) % n]);
    }
    0.5 * s
}

/// Removes duplicate and collinear-consecutive vertices (within [`TAU`] of
/// the chord through their neighbors) and orients counterclockwise.
pub fn canonicalize_ring(ring: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(ring.len());
    for &p in ring {
        if pts.last().map_or(true, |&q| p.dist(q) > TAU) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && pts[0].dist(*pts.last().unwrap()) <= TAU {
        pts.pop();
    }
    if pts.len() >= 3 && signed_area(&pts) < 0.0 {
        pts.reverse();
    }
    // Repeat collinear removal until stable; dropping one vertex can expose
    // another collinear triple.
    loop {
        let n = pts.len();
        if n < 3 {
            break;
        }
        let mut keep = Vec::with_capacity(n);
        for i in 0..n {
            let a = pts[(i + n - 1) % n];
            let b = pts[i];
            let c = pts[(i + 1) % n];
            let chord = c - a;
            let len = chord.norm();
            let dist = if len <= TAU {
                b.dist(a)
            } else {
                (chord.cross(b - a) / len).abs()
            };
            if dist > TAU {
                keep.push(b);
            }
        }
        if keep.len() == pts.len() {
            break;
        }
        pts = keep;
    }
    pts
}

/// Counterclockwise strictly convex vertex ring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    /// Canonicalizes the ring, then validates convexity and positive area.
    pub fn new(ring: Vec<Point>) -> Result<Self, Error> {
        if ring.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidGeometry("non-finite coordinate".into()));
        }
        let pts = canonicalize_ring(&ring);
        if pts.len() < 3 {
            return Err(Error::InvalidGeometry(format!(
                "convex polygon needs at least 3 distinct vertices, got {}",
                pts.len()
            )));
        }
        let n = pts.len();
        for i in 0..n {
            if orient(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]) <= 0.0 {
                return Err(Error::InvalidGeometry(format!(
                    "ring is not strictly convex at vertex {}",
                    (i + 1) % n
                )));
            }
        }
        Ok(ConvexPolygon { vertices: pts })
    }

    /// Convex hull of an arbitrary point set (Andrew monotone chain).
    pub fn hull_of(points: &[Point]) -> Result<Self, Error> {
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
        pts.dedup_by(|a, b| a.dist(*b) <= TAU);
        if pts.len() < 3 {
            return Err(Error::InvalidGeometry("hull of fewer than 3 points".into()));
        }
        let build = |iter: &mut dyn Iterator<Item = Point>| {
            let mut chain: Vec<Point> = Vec::new();
            for p in iter {
                while chain.len() >= 2
                    && orient(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0.0
                {
                    chain.pop();
                }
                chain.push(p);
            }
            chain
        };
        let lower = build(&mut pts.iter().copied());
        let upper = build(&mut pts.iter().rev().copied());
        let mut ring = lower;
        ring.pop();
        ring.extend(upper);
        ring.pop();
        ConvexPolygon::new(ring)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].dist(self.vertices[(i + 1) % n]))
            .sum()
    }

    pub fn centroid(&self) -> Point {
        let n = self.vertices.len() as f64;
        let mut c = Point::ZERO;
        for &v in &self.vertices {
            c = c + v;
        }
        c * (1.0 / n)
    }

    pub fn bbox(&self) -> (Point, Point) {
        bbox(&self.vertices)
    }

    /// Outward edge line `i`: unit normal `n` and offset `d` with
    /// `n·p <= d` for all `p` in the polygon.
    pub fn edge_halfplane(&self, i: usize) -> (Point, f64) {
        let a = self.vertices[i];
        let b = self.vertices[(i + 1) % self.vertices.len()];
        let n = -(b - a).perp().normalized();
        (n, n.dot(a))
    }

    /// Closed containment within tolerance `tol`.
    pub fn contains_with_tol(&self, p: Point, tol: f64) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            let (nrm, d) = self.edge_halfplane(i);
            if nrm.dot(p) > d + tol {
                return false;
            }
        }
        true
    }

    pub fn contains(&self, p: Point) -> bool {
        self.contains_with_tol(p, TAU)
    }

    /// Whether every vertex of `other` lies inside `self` (within `tol`).
    pub fn contains_polygon(&self, other: &ConvexPolygon, tol: f64) -> bool {
        other.vertices.iter().all(|&v| self.contains_with_tol(v, tol))
    }

    /// Distance from `p` to the polygon (0 inside).
    pub fn distance_to(&self, p: Point) -> f64 {
        if self.contains_with_tol(p, 0.0) {
            return 0.0;
        }
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                Segment {
                    a: self.vertices[i],
                    b: self.vertices[(i + 1) % n],
                }
                .dist_to_point(p)
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn translate(&self, t: Point) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| v + t).collect(),
        }
    }

    /// Scales about the origin by `s != 0`. Negative factors are point
    /// reflections composed with a positive scaling, which preserve the
    /// counterclockwise orientation.
    pub fn scale(&self, s: f64) -> ConvexPolygon {
        let vertices: Vec<Point> = self.vertices.iter().map(|&v| v * s).collect();
        ConvexPolygon { vertices }
    }

    /// Point reflection through the origin.
    pub fn reflect(&self) -> ConvexPolygon {
        self.scale(-1.0)
    }

    pub fn support(&self, dir: Point) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(dir))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `n` points evenly spaced along the boundary.
    pub fn boundary_samples(&self, n: usize) -> Vec<Point> {
        let perim = self.perimeter();
        let step = perim / n as f64;
        let mut out = Vec::with_capacity(n);
        let m = self.vertices.len();
        let mut edge = 0usize;
        let mut along = 0.0f64;
        for k in 0..n {
            let target = k as f64 * step;
            loop {
                let a = self.vertices[edge % m];
                let b = self.vertices[(edge + 1) % m];
                let el = a.dist(b);
                if target <= along + el || edge + 1 >= 2 * m {
                    let s = ((target - along) / el).clamp(0.0, 1.0);
                    out.push(a + (b - a) * s);
                    break;
                }
                along += el;
                edge += 1;
            }
        }
        out
    }
}

/// Counterclockwise simple ring plus optional convex decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplePolygon {
    ring: Vec<Point>,
    parts: Option<Vec<ConvexPolygon>>,
}

impl SimplePolygon {
    pub fn new(ring: Vec<Point>) -> Result<Self, Error> {
        if ring.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidGeometry("non-finite coordinate".into()));
        }
        let pts = canonicalize_ring(&ring);
        if pts.len() < 3 {
            return Err(Error::InvalidGeometry("ring needs at least 3 vertices".into()));
        }
        if signed_area(&pts) <= 0.0 {
            return Err(Error::InvalidGeometry("ring has non-positive area".into()));
        }
        if !ring_is_simple(&pts) {
            return Err(Error::InvalidGeometry("ring is self-intersecting".into()));
        }
        Ok(SimplePolygon { ring: pts, parts: None })
    }

    /// Attaches a caller-supplied decomposition after validating it:
    /// parts must be interior-disjoint and cover the ring's area.
    pub fn with_parts(mut self, parts: Vec<ConvexPolygon>) -> Result<Self, Error> {
        validate_parts(&self, &parts)?;
        self.parts = Some(parts);
        Ok(self)
    }

    pub fn from_convex(c: &ConvexPolygon) -> SimplePolygon {
        SimplePolygon {
            ring: c.vertices().to_vec(),
            parts: Some(vec![c.clone()]),
        }
    }

    pub fn ring(&self) -> &[Point] {
        &self.ring
    }

    pub fn parts(&self) -> Option<&[ConvexPolygon]> {
        self.parts.as_deref()
    }

    pub fn set_parts_unchecked(&mut self, parts: Vec<ConvexPolygon>) {
        self.parts = Some(parts);
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.ring)
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.ring.len();
        (0..n).map(|i| self.ring[i].dist(self.ring[(i + 1) % n])).sum()
    }

    pub fn bbox(&self) -> (Point, Point) {
        bbox(&self.ring)
    }

    pub fn translate(&self, t: Point) -> SimplePolygon {
        SimplePolygon {
            ring: self.ring.iter().map(|&v| v + t).collect(),
            parts: self
                .parts
                .as_ref()
                .map(|ps| ps.iter().map(|p| p.translate(t)).collect()),
        }
    }

    /// Point reflection through the origin (orientation-preserving).
    pub fn reflect(&self) -> SimplePolygon {
        let ring: Vec<Point> = self.ring.iter().map(|&v| -v).collect();
        SimplePolygon {
            ring,
            parts: self
                .parts
                .as_ref()
                .map(|ps| ps.iter().map(|p| p.reflect()).collect()),
        }
    }
}

fn bbox(pts: &[Point]) -> (Point, Point) {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

fn validate_parts(poly: &SimplePolygon, parts: &[ConvexPolygon]) -> Result<(), Error> {
    if parts.is_empty() {
        return Err(Error::InvalidGeometry("empty decomposition".into()));
    }
    let ring_area = poly.area();
    let sum: f64 = parts.iter().map(|p| p.area()).sum();
    if (sum - ring_area).abs() > 1e-9 * ring_area.max(1.0) {
        return Err(Error::InvalidGeometry(format!(
            "decomposition area {sum} does not match ring area {ring_area}"
        )));
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let a = overlap_area(&parts[i], &parts[j], Point::ZERO);
            let min_area = parts[i].area().min(parts[j].area());
            if a > 1e-9 * min_area {
                return Err(Error::InvalidGeometry(format!(
                    "parts {i} and {j} overlap with area {a}"
                )));
            }
        }
    }
    Ok(())
}

fn ring_is_simple(ring: &[Point]) -> bool {
    let n = ring.len();
    for i in 0..n {
        let (a1, a2) = (ring[i], ring[(i + 1) % n]);
        for j in i + 1..n {
            let (b1, b2) = (ring[j], ring[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            if segments_properly_intersect(a1, a2, b1, b2) {
                return false;
            }
        }
    }
    true
}

fn segments_properly_intersect(a1: Point, a2: Point, b1: Point, b2: Point) -> bool {
    let d1 = orient(b1, b2, a1);
    let d2 = orient(b1, b2, a2);
    let d3 = orient(a1, a2, b1);
    let d4 = orient(a1, a2, b2);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Invertible 2D affine transformation `p ↦ M p + t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    /// Row-major 2×2 linear part.
    pub linear: [[f64; 2]; 2],
    pub offset: Point,
}

impl AffineMap {
    pub fn new(linear: [[f64; 2]; 2], offset: Point) -> Result<Self, Error> {
        let m = AffineMap { linear, offset };
        if m.determinant().abs() < 1e-300 {
            return Err(Error::SingularMap);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        AffineMap {
            linear: [[1.0, 0.0], [0.0, 1.0]],
            offset: Point::ZERO,
        }
    }

    pub fn determinant(&self) -> f64 {
        self.linear[0][0] * self.linear[1][1] - self.linear[0][1] * self.linear[1][0]
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.linear[0][0] * p.x + self.linear[0][1] * p.y + self.offset.x,
            self.linear[1][0] * p.x + self.linear[1][1] * p.y + self.offset.y,
        )
    }

    /// Applies only the linear part (for direction vectors and translations).
    pub fn apply_vector(&self, v: Point) -> Point {
        Point::new(
            self.linear[0][0] * v.x + self.linear[0][1] * v.y,
            self.linear[1][0] * v.x + self.linear[1][1] * v.y,
        )
    }

    pub fn inverse(&self) -> Result<AffineMap, Error> {
        let det = self.determinant();
        if det.abs() < 1e-300 {
            return Err(Error::SingularMap);
        }
        let inv = [
            [self.linear[1][1] / det, -self.linear[0][1] / det],
            [-self.linear[1][0] / det, self.linear[0][0] / det],
        ];
        let m = AffineMap {
            linear: inv,
            offset: Point::ZERO,
        };
        let off = m.apply(self.offset);
        Ok(AffineMap {
            linear: inv,
            offset: -off,
        })
    }

    /// Maps a convex polygon, re-canonicalizing orientation if the
    /// determinant is negative.
    pub fn apply_convex(&self, poly: &ConvexPolygon) -> Result<ConvexPolygon, Error> {
        ConvexPolygon::new(poly.vertices().iter().map(|&v| self.apply(v)).collect())
    }

    pub fn apply_simple(&self, poly: &SimplePolygon) -> Result<SimplePolygon, Error> {
        let out = SimplePolygon::new(poly.ring().iter().map(|&v| self.apply(v)).collect())?;
        match poly.parts() {
            None => Ok(out),
            Some(parts) => {
                let mapped: Result<Vec<_>, _> =
                    parts.iter().map(|p| self.apply_convex(p)).collect();
                out.with_parts(mapped?)
            }
        }
    }
}

/// Width, diameter, and their witnesses, by exhaustive antipodal scan.
///
/// The width direction is always normal to some edge, so scanning edges
/// against the farthest vertex is exact. Quadratic in the vertex count,
/// which is immaterial at the sizes this crate targets.
pub struct WidthDiameter {
    pub width: f64,
    pub diameter: f64,
    pub width_direction: Point,
    pub diameter_pair: (Point, Point),
}

pub fn width_and_diameter(poly: &ConvexPolygon) -> WidthDiameter {
    let vs = poly.vertices();
    let n = vs.len();
    let mut width = f64::INFINITY;
    let mut width_direction = Point::new(0.0, 1.0);
    for i in 0..n {
        let (nrm, d) = poly.edge_halfplane(i);
        // Farthest vertex behind the edge line.
        let far = vs.iter().map(|v| d - nrm.dot(*v)).fold(0.0f64, f64::max);
        if far < width {
            width = far;
            width_direction = nrm;
        }
    }
    let mut diameter = 0.0;
    let mut pair = (vs[0], vs[0]);
    for i in 0..n {
        for j in i + 1..n {
            let d = vs[i].dist(vs[j]);
            if d > diameter {
                diameter = d;
                pair = (vs[i], vs[j]);
            }
        }
    }
    WidthDiameter {
        width,
        diameter,
        width_direction,
        diameter_pair: pair,
    }
}

/// Radius of the largest inscribed disk (Chebyshev radius), by a small
/// linear program maximizing `r` subject to distance-to-each-edge >= `r`.
pub fn inscribed_disk_radius(poly: &ConvexPolygon) -> f64 {
    let (lo, hi) = poly.bbox();
    let bound = (hi - lo).norm().max(1.0) * 4.0;
    let mut cons = Vec::with_capacity(poly.len());
    for i in 0..poly.len() {
        let (n, d) = poly.edge_halfplane(i);
        // n·c + r <= d
        cons.push(Constraint3 {
            a: [n.x, n.y, 1.0],
            b: d,
        });
    }
    let sol = lp3_maximize([0.0, 0.0, 1.0], &cons, bound, 0x1c5eed)
        .expect("Chebyshev LP is always feasible for a valid polygon");
    sol[2]
}

#[cfg(test)]
mod tests;
