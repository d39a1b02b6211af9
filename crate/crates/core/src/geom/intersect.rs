//! Convex polygon intersection with vertex provenance.
//!
//! The intersection `X ∩ (t + Y)` is computed by clipping the translated
//! `Y` against the edge half-planes of `X`. Every output vertex is tagged
//! with where it came from, which is what makes the overlap area a symbolic
//! quadratic in `t` later on: each tagged vertex is an affine function of
//! the translation.

use super::{signed_area, ConvexPolygon, Point, TAU};

/// Origin of one vertex of a convex intersection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Vertex `i` of `X` (constant in `t`).
    XVertex(usize),
    /// Vertex `j` of `Y` (moves as `t`).
    YVertex(usize),
    /// Crossing of `X` edge `x_edge` with translated `Y` edge `y_edge`.
    EdgeEdge { x_edge: usize, y_edge: usize },
    /// Crossing of two non-adjacent `X` edge lines; only arises in
    /// near-degenerate configurations (constant in `t`).
    XEdgePair { e1: usize, e2: usize },
}

#[derive(Debug, Clone)]
pub struct ConvexIntersection {
    pub vertices: Vec<(Point, Provenance)>,
    /// Set when some vertex of one polygon lies within [`TAU`] of the
    /// other's boundary: the translation sits on a combinatorial face
    /// boundary and the symbolic quadratic is not well-defined.
    pub degenerate: bool,
}

impl ConvexIntersection {
    pub fn area(&self) -> f64 {
        let ring: Vec<Point> = self.vertices.iter().map(|v| v.0).collect();
        signed_area(&ring)
    }
}

#[derive(Clone, Copy)]
enum EdgeLabel {
    YEdge(usize),
    XEdge(usize),
}

/// `X ∩ (t + Y)`, or `None` when the intersection is empty or measure-zero.
pub fn convex_intersection(
    x: &ConvexPolygon,
    y: &ConvexPolygon,
    t: Point,
) -> Option<ConvexIntersection> {
    let nx = x.len();
    let mut degenerate = false;

    let mut verts: Vec<(Point, Provenance)> = y
        .vertices()
        .iter()
        .enumerate()
        .map(|(j, &v)| (v + t, Provenance::YVertex(j)))
        .collect();
    // labels[k] tags the line carrying the edge from verts[k] to verts[k+1].
    let mut labels: Vec<EdgeLabel> = (0..verts.len()).map(EdgeLabel::YEdge).collect();

    for i in 0..nx {
        let (n, d) = x.edge_halfplane(i);
        let m = verts.len();
        if m == 0 {
            return None;
        }
        let side: Vec<f64> = verts.iter().map(|(p, _)| d - n.dot(*p)).collect();
        if side.iter().any(|s| s.abs() <= TAU) {
            degenerate = true;
        }
        let mut new_verts: Vec<(Point, Provenance)> = Vec::with_capacity(m + 2);
        let mut new_labels: Vec<EdgeLabel> = Vec::with_capacity(m + 2);
        for k in 0..m {
            let k1 = (k + 1) % m;
            let inside_a = side[k] >= 0.0;
            let inside_b = side[k1] >= 0.0;
            if inside_a {
                new_verts.push(verts[k]);
                new_labels.push(labels[k]);
            }
            if inside_a != inside_b {
                let u = side[k] / (side[k] - side[k1]);
                let p = verts[k].0 + (verts[k1].0 - verts[k].0) * u;
                let prov = crossing_provenance(labels[k], i, nx, &mut degenerate);
                new_verts.push((p, prov));
                // Leaving the half-plane: the polygon continues along the
                // clip line until it re-enters.
                new_labels.push(if inside_a { EdgeLabel::XEdge(i) } else { labels[k] });
            }
        }
        verts = new_verts;
        labels = new_labels;
        if verts.len() < 3 {
            return None;
        }
    }

    let ring: Vec<Point> = verts.iter().map(|v| v.0).collect();
    if signed_area(&ring) <= TAU * TAU {
        return None;
    }
    // Coincident output vertices signal a vertex-on-boundary configuration
    // that the per-vertex side test cannot see (an X vertex on Y's boundary).
    for k in 0..verts.len() {
        let k1 = (k + 1) % verts.len();
        if verts[k].0.dist(verts[k1].0) <= TAU {
            degenerate = true;
        }
    }
    Some(ConvexIntersection {
        vertices: verts,
        degenerate,
    })
}

fn crossing_provenance(
    label: EdgeLabel,
    clip_edge: usize,
    nx: usize,
    degenerate: &mut bool,
) -> Provenance {
    match label {
        EdgeLabel::YEdge(j) => Provenance::EdgeEdge {
            x_edge: clip_edge,
            y_edge: j,
        },
        EdgeLabel::XEdge(prev) => {
            if (prev + 1) % nx == clip_edge {
                Provenance::XVertex(clip_edge)
            } else if (clip_edge + 1) % nx == prev {
                Provenance::XVertex(prev)
            } else {
                *degenerate = true;
                Provenance::XEdgePair {
                    e1: prev,
                    e2: clip_edge,
                }
            }
        }
    }
}

/// Area of `X ∩ (t + Y)`; the evaluation primitive behind everything.
pub fn overlap_area(x: &ConvexPolygon, y: &ConvexPolygon, t: Point) -> f64 {
    let mut cur: Vec<Point> = y.vertices().iter().map(|&v| v + t).collect();
    let mut next: Vec<Point> = Vec::with_capacity(cur.len() + 2);
    for i in 0..x.len() {
        let (n, d) = x.edge_halfplane(i);
        let m = cur.len();
        if m < 3 {
            return 0.0;
        }
        next.clear();
        let mut side_a = d - n.dot(cur[m - 1]);
        // Iterate edges ending at each vertex so side values are reused.
        let mut prev = cur[m - 1];
        for &p in cur.iter() {
            let side_b = d - n.dot(p);
            if side_a >= 0.0 {
                if side_b < 0.0 {
                    let u = side_a / (side_a - side_b);
                    next.push(prev + (p - prev) * u);
                }
            } else if side_b >= 0.0 {
                let u = side_a / (side_a - side_b);
                next.push(prev + (p - prev) * u);
            }
            if side_b >= 0.0 {
                next.push(p);
            }
            side_a = side_b;
            prev = p;
        }
        std::mem::swap(&mut cur, &mut next);
    }
    if cur.len() < 3 {
        return 0.0;
    }
    signed_area(&cur).max(0.0)
}
