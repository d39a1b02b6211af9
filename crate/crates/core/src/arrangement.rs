//! Planar overlay of event-polygon boundaries.
//!
//! All boundary segments are split at their mutual intersections and
//! assembled into a half-edge subdivision. Bounded faces are the
//! positive-area cycles of the structure; each face carries one interior
//! representative point. Point location is answered by a slab structure
//! (binary search on x, then on the edges crossing the slab), with an
//! exhaustive linear scan kept as a differential-testing fallback.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geom::{ConvexPolygon, Point};

/// One bounded face of the subdivision.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Face {
    /// Counterclockwise outer boundary (holes, if any, are separate faces
    /// and are found first by the innermost-containment rule).
    pub ring: Vec<Point>,
    pub area: f64,
    /// A point strictly inside the face, off every boundary segment.
    pub representative: Point,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Slab {
    /// Non-vertical split segments spanning this slab, sorted bottom to
    /// top by their y at the slab midpoint.
    segs: Vec<usize>,
}

/// Planar subdivision induced by a set of boundary segments.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Arrangement {
    pub vertices: Vec<Point>,
    /// Split segments as vertex-index pairs; together they cover exactly
    /// the input boundaries.
    pub segments: Vec<(usize, usize)>,
    pub faces: Vec<Face>,
    /// Left face of each directed half-edge `2s` (tail→head) / `2s+1`.
    half_face: Vec<Option<usize>>,
    /// Coordinate scale used for tolerances.
    scale: f64,
    slab_xs: Vec<f64>,
    slabs: Vec<Slab>,
}

/// Even-odd crossing test against a closed ring.
fn point_in_ring(ring: &[Point], p: Point) -> bool {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    inside
}

fn dist_point_segment(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let s = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    p.dist(a + d * s)
}

/// Deduplicating point pool: points within `tol` of an existing entry are
/// unified with it (spatial hash on a `4·tol` grid).
struct VertexPool {
    points: Vec<Point>,
    grid: HashMap<(i64, i64), Vec<usize>>,
    cell: f64,
    tol: f64,
}

impl VertexPool {
    fn new(tol: f64) -> Self {
        VertexPool {
            points: Vec::new(),
            grid: HashMap::new(),
            cell: 4.0 * tol,
            tol,
        }
    }

    fn key(&self, p: Point) -> (i64, i64) {
        ((p.x / self.cell).floor() as i64, (p.y / self.cell).floor() as i64)
    }

    fn insert(&mut self, p: Point) -> usize {
        let (kx, ky) = self.key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.grid.get(&(kx + dx, ky + dy)) {
                    for &id in ids {
                        if self.points[id].dist(p) <= self.tol {
                            return id;
                        }
                    }
                }
            }
        }
        let id = self.points.len();
        self.points.push(p);
        self.grid.entry((kx, ky)).or_default().push(id);
        id
    }
}

/// Intersection parameters of segment `(a,b)` against `(c,d)`: split
/// parameters on `(a,b)` (and symmetrically the caller queries the swap).
fn split_params(a: Point, b: Point, c: Point, d: Point, tol: f64) -> Vec<f64> {
    let d1 = b - a;
    let d2 = d - c;
    let denom = d1.cross(d2);
    let len1 = d1.norm().max(1e-300);
    let mut out = Vec::new();
    if denom.abs() > 1e-12 * d1.norm() * d2.norm() {
        let s = (c - a).cross(d2) / denom;
        let u = (c - a).cross(d1) / denom;
        let ts = tol / len1;
        let tu = tol / d2.norm().max(1e-300);
        if s >= -ts && s <= 1.0 + ts && u >= -tu && u <= 1.0 + tu {
            out.push(s.clamp(0.0, 1.0));
        }
    } else if dist_point_segment(c, a, b).min(dist_point_segment(d, a, b)) <= tol
        || dist_point_segment(a, c, d) <= tol
    {
        // Collinear (or near-collinear) overlap: project the other
        // segment's endpoints onto this one.
        for q in [c, d] {
            let s = (q - a).dot(d1) / (len1 * len1);
            if s > 0.0 && s < 1.0 && dist_point_segment(q, a, b) <= tol {
                out.push(s);
            }
        }
    }
    out
}

impl Arrangement {
    /// Overlays the boundaries of `polys` into a subdivision.
    pub fn build(polys: &[ConvexPolygon]) -> Result<Arrangement, Error> {
        let mut raw: Vec<(Point, Point)> = Vec::new();
        for p in polys {
            let vs = p.vertices();
            for i in 0..vs.len() {
                raw.push((vs[i], vs[(i + 1) % vs.len()]));
            }
        }
        Arrangement::from_segments(&raw)
    }

    /// Builds the subdivision from raw boundary segments.
    pub fn from_segments(raw: &[(Point, Point)]) -> Result<Arrangement, Error> {
        if raw.is_empty() {
            return Err(Error::InvalidGeometry("no boundary segments".into()));
        }
        let scale = raw
            .iter()
            .flat_map(|&(a, b)| [a.x.abs(), a.y.abs(), b.x.abs(), b.y.abs()])
            .fold(1.0f64, f64::max);
        let tol = 1e-9 * scale;

        // Snap endpoints, then split every segment at its intersections
        // with every other and snap the split points into the same pool.
        let mut pool = VertexPool::new(tol);
        let ends: Vec<(usize, usize)> = raw
            .iter()
            .map(|&(a, b)| (pool.insert(a), pool.insert(b)))
            .collect();
        let snapped: Vec<(Point, Point)> = ends
            .iter()
            .map(|&(i, j)| (pool.points[i], pool.points[j]))
            .collect();

        let n = snapped.len();
        let mut params: Vec<Vec<f64>> = vec![vec![0.0, 1.0]; n];
        for i in 0..n {
            let (a, b) = snapped[i];
            if a.dist(b) <= tol {
                continue;
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (c, d) = snapped[j];
                if c.dist(d) <= tol {
                    continue;
                }
                params[i].extend(split_params(a, b, c, d, tol));
            }
        }

        let mut seg_set: HashMap<(usize, usize), usize> = HashMap::new();
        let mut segments: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            let (a, b) = snapped[i];
            if a.dist(b) <= tol {
                continue;
            }
            params[i].sort_by(|x, y| x.partial_cmp(y).unwrap());
            let mut prev = pool.insert(a);
            for &s in &params[i] {
                let vid = pool.insert(a + (b - a) * s);
                if vid != prev {
                    let key = (prev.min(vid), prev.max(vid));
                    if !seg_set.contains_key(&key) {
                        seg_set.insert(key, segments.len());
                        segments.push(key);
                    }
                    prev = vid;
                }
            }
        }
        let vertices = pool.points;

        // Half-edge structure: edges 2s (i→j) and 2s+1 (j→i); at each
        // vertex the successor of a half-edge is the clockwise neighbour
        // of its twin among the outgoing edges, which traces every face
        // with its interior on the left.
        let nh = 2 * segments.len();
        let tail = |h: usize| if h % 2 == 0 { segments[h / 2].0 } else { segments[h / 2].1 };
        let head = |h: usize| if h % 2 == 0 { segments[h / 2].1 } else { segments[h / 2].0 };
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        for h in 0..nh {
            out[tail(h)].push(h);
        }
        let mut pos = vec![0usize; nh];
        for list in &mut out {
            let t0 = tail(list[0]);
            list.sort_by(|&h1, &h2| {
                let a1 = {
                    let d = vertices[head(h1)] - vertices[t0];
                    d.y.atan2(d.x)
                };
                let a2 = {
                    let d = vertices[head(h2)] - vertices[t0];
                    d.y.atan2(d.x)
                };
                a1.partial_cmp(&a2).unwrap()
            });
            for (k, &h) in list.iter().enumerate() {
                pos[h] = k;
            }
        }
        let mut next = vec![0usize; nh];
        for h in 0..nh {
            let twin = h ^ 1;
            let list = &out[head(h)];
            next[h] = list[(pos[twin] + list.len() - 1) % list.len()];
        }

        // Trace cycles; positive-area cycles are the bounded faces.
        let mut cycle_of = vec![usize::MAX; nh];
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for h0 in 0..nh {
            if cycle_of[h0] != usize::MAX {
                continue;
            }
            let cid = cycles.len();
            let mut cyc = Vec::new();
            let mut h = h0;
            loop {
                cycle_of[h] = cid;
                cyc.push(h);
                h = next[h];
                if h == h0 {
                    break;
                }
            }
            cycles.push(cyc);
        }
        let cycle_area: Vec<f64> = cycles
            .iter()
            .map(|cyc| {
                0.5 * cyc
                    .iter()
                    .map(|&h| vertices[tail(h)].cross(vertices[head(h)]))
                    .sum::<f64>()
            })
            .collect();

        let mut face_of_cycle: Vec<Option<usize>> = vec![None; cycles.len()];
        let mut faces = Vec::new();
        for (cid, cyc) in cycles.iter().enumerate() {
            if cycle_area[cid] > 0.0 {
                face_of_cycle[cid] = Some(faces.len());
                faces.push(Face {
                    ring: cyc.iter().map(|&h| vertices[tail(h)]).collect(),
                    area: cycle_area[cid],
                    representative: Point::ZERO, // filled below
                });
            }
        }

        let mut arr = Arrangement {
            vertices,
            segments,
            faces,
            half_face: vec![None; nh],
            scale,
            slab_xs: Vec::new(),
            slabs: Vec::new(),
        };

        // Non-positive cycles bound the unbounded face or a hole; resolve
        // which by locating a point just inside (left of) one of their
        // edges.
        for (cid, cyc) in cycles.iter().enumerate() {
            let face = if let Some(f) = face_of_cycle[cid] {
                Some(f)
            } else {
                let mut found = None;
                'probe: for &h in cyc {
                    let (i, j) = arr.segments[h / 2];
                    let (ti, hi) = if h % 2 == 0 { (i, j) } else { (j, i) };
                    let a = arr.vertices[ti];
                    let b = arr.vertices[hi];
                    let len = a.dist(b);
                    if len <= tol {
                        continue;
                    }
                    let mid = (a + b) * 0.5;
                    let left = (b - a).perp().normalized();
                    for mag in [1e-7, 1e-9, 1e-11] {
                        let probe = mid + left * (mag * scale).min(0.25 * len);
                        if let Some(f) = arr.locate_linear(probe) {
                            found = Some(f);
                            break 'probe;
                        }
                    }
                    // An unbounded-face probe legitimately locates nowhere.
                    break;
                }
                found
            };
            for &h in cyc {
                arr.half_face[h] = face;
            }
        }

        arr.fill_representatives(tol);
        arr.build_slabs();
        Ok(arr)
    }

    /// Innermost bounded face containing `t` by exhaustive scan, or
    /// `None` in the unbounded face.
    pub fn locate_linear(&self, t: Point) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (f, face) in self.faces.iter().enumerate() {
            if point_in_ring(&face.ring, t)
                && best.is_none_or(|b| face.area < self.faces[b].area)
            {
                best = Some(f);
            }
        }
        best
    }

    fn seg_y_at(&self, s: usize, x: f64) -> f64 {
        let a = self.vertices[self.segments[s].0];
        let b = self.vertices[self.segments[s].1];
        a.y + (x - a.x) / (b.x - a.x) * (b.y - a.y)
    }

    /// Left face of the rightward-directed half-edge of split segment `s`
    /// (the face just above the segment), and of the leftward one (just
    /// below).
    pub fn faces_above_below(&self, s: usize) -> (Option<usize>, Option<usize>) {
        let (i, j) = self.segments[s];
        let h = if self.vertices[i].x < self.vertices[j].x {
            2 * s
        } else {
            2 * s + 1
        };
        (self.half_face[h], self.half_face[h ^ 1])
    }

    fn build_slabs(&mut self) {
        let mut xs: Vec<f64> = self.vertices.iter().map(|p| p.x).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs.dedup();
        let mut slabs: Vec<Slab> = (0..xs.len().saturating_sub(1))
            .map(|_| Slab { segs: Vec::new() })
            .collect();
        for (s, &(i, j)) in self.segments.iter().enumerate() {
            let (xa, xb) = (self.vertices[i].x, self.vertices[j].x);
            if xa == xb {
                continue; // vertical: lies on a slab boundary
            }
            let (lo, hi) = (xa.min(xb), xa.max(xb));
            let r0 = xs.partition_point(|&x| x < lo);
            let r1 = xs.partition_point(|&x| x < hi);
            for slab in slabs.iter_mut().take(r1).skip(r0) {
                slab.segs.push(s);
            }
        }
        for (r, slab) in slabs.iter_mut().enumerate() {
            let xm = 0.5 * (xs[r] + xs[r + 1]);
            let ys: HashMap<usize, f64> = slab
                .segs
                .iter()
                .map(|&s| (s, self.seg_y_at(s, xm)))
                .collect();
            slab.segs.sort_by(|a, b| ys[a].partial_cmp(&ys[b]).unwrap());
        }
        self.slab_xs = xs;
        self.slabs = slabs;
    }

    /// Slab-based point location; bit-for-bit it must agree with
    /// [`Arrangement::locate_linear`] away from boundary segments. For a
    /// query on a split segment it returns the smaller face id of the two
    /// faces the segment bounds.
    pub fn locate(&self, t: Point) -> Option<usize> {
        let r = self.slab_xs.partition_point(|&x| x <= t.x);
        if r == 0 || r >= self.slab_xs.len() {
            return None;
        }
        let slab = &self.slabs[r - 1];
        let below = slab.segs.partition_point(|&s| self.seg_y_at(s, t.x) <= t.y);
        if below == 0 {
            return None;
        }
        let s = slab.segs[below - 1];
        let (above, under) = self.faces_above_below(s);
        if (self.seg_y_at(s, t.x) - t.y).abs() <= 1e-12 * self.scale {
            // On the segment: deterministic tie-break toward the smaller
            // face id among the two adjacent faces.
            return match (above, under) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
        above
    }

    fn min_dist_to_segments(&self, p: Point) -> f64 {
        self.segments
            .iter()
            .map(|&(i, j)| dist_point_segment(p, self.vertices[i], self.vertices[j]))
            .fold(f64::INFINITY, f64::min)
    }

    fn fill_representatives(&mut self, tol: f64) {
        for f in 0..self.faces.len() {
            let ring = self.faces[f].ring.clone();
            let centroid = {
                let mut c = Point::ZERO;
                for &p in &ring {
                    c = c + p;
                }
                c * (1.0 / ring.len() as f64)
            };
            let good = |p: Point, arr: &Arrangement| {
                arr.locate_linear(p) == Some(f) && arr.min_dist_to_segments(p) > tol
            };
            if good(centroid, self) {
                self.faces[f].representative = centroid;
                continue;
            }
            // Seeded random interior sampling over the ring's bbox.
            let (mut lo, mut hi) = (ring[0], ring[0]);
            for &p in &ring {
                lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
                hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(0xFACE_5000 + f as u64);
            let mut found = None;
            for _ in 0..400 {
                let p = Point::new(
                    rng.random_range(lo.x..=hi.x),
                    rng.random_range(lo.y..=hi.y),
                );
                if good(p, self) {
                    found = Some(p);
                    break;
                }
            }
            if found.is_none() {
                // Thin face: step inward from edge midpoints.
                'edges: for k in 0..ring.len() {
                    let a = ring[k];
                    let b = ring[(k + 1) % ring.len()];
                    let len = a.dist(b);
                    if len <= tol {
                        continue;
                    }
                    let left = (b - a).perp().normalized();
                    for mag in [1e-4, 1e-6, 1e-8] {
                        let p = (a + b) * 0.5 + left * (mag * self.scale).min(0.25 * len);
                        if good(p, self) {
                            found = Some(p);
                            break 'edges;
                        }
                    }
                }
            }
            self.faces[f].representative = found.unwrap_or(centroid);
        }
    }
}
