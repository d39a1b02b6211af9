//! Convex decomposition of simple polygons: ear-clipping triangulation
//! followed by greedy merging of parts across inessential diagonals.
//! Caller-supplied decompositions are first-class and returned unchanged
//! (they are validated when attached to the polygon).

use crate::error::Error;
use crate::geom::{orient, ConvexPolygon, Point, SimplePolygon};

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub parts: Vec<ConvexPolygon>,
    pub source_ring: Vec<Point>,
}

/// Number of reflex vertices of the ring.
pub fn count_notches(p: &SimplePolygon) -> usize {
    let ring = p.ring();
    let n = ring.len();
    (0..n)
        .filter(|&i| orient(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]) < 0.0)
        .count()
}

/// Ear-clipping triangulation; returns index triples into `ring`.
fn triangulate(ring: &[Point]) -> Result<Vec<[usize; 3]>, Error> {
    let n = ring.len();
    let mut idx: Vec<usize> = (0..n).collect();
    let mut tris = Vec::with_capacity(n.saturating_sub(2));
    let scale = {
        let (lo, hi) = crate::geom::SimplePolygon::new(ring.to_vec())
            .map(|p| p.bbox())
            .unwrap_or((Point::ZERO, Point::new(1.0, 1.0)));
        ((hi.x - lo.x).max(hi.y - lo.y)).max(1.0)
    };
    let tol = 1e-12 * scale * scale;

    while idx.len() > 3 {
        let m = idx.len();
        let mut clipped = false;
        for k in 0..m {
            let (ip, iv, inx) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            let (a, b, c) = (ring[ip], ring[iv], ring[inx]);
            if orient(a, b, c) <= tol {
                continue; // reflex or flat corner, not an ear
            }
            // No other remaining vertex may lie inside the candidate ear.
            let blocked = idx.iter().any(|&j| {
                if j == ip || j == iv || j == inx {
                    return false;
                }
                let p = ring[j];
                orient(a, b, p) > -tol && orient(b, c, p) > -tol && orient(c, a, p) > -tol
            });
            if blocked {
                continue;
            }
            tris.push([ip, iv, inx]);
            idx.remove(k);
            clipped = true;
            break;
        }
        if !clipped {
            return Err(Error::InvalidGeometry(
                "triangulation failed: no ear found (degenerate ring?)".into(),
            ));
        }
    }
    tris.push([idx[0], idx[1], idx[2]]);
    Ok(tris)
}

/// Whether the index ring is convex (collinear corners allowed) with
/// respect to the coordinates in `ring`.
fn is_convex_indices(poly: &[usize], ring: &[Point], tol: f64) -> bool {
    let m = poly.len();
    (0..m).all(|i| {
        orient(
            ring[poly[(i + m - 1) % m]],
            ring[poly[i]],
            ring[poly[(i + 1) % m]],
        ) >= -tol
    })
}

/// Merges `p1` and `p2` across the shared directed edge `p1[e1] → p1[e1+1]`
/// (which appears reversed in `p2`): `p1` up to the edge, then `p2`'s
/// complement of it.
fn merge_rings(p1: &[usize], e1: usize, p2: &[usize], e2: usize) -> Vec<usize> {
    let (m1, m2) = (p1.len(), p2.len());
    let mut out = Vec::with_capacity(m1 + m2 - 2);
    // Walk p1 starting after the shared edge's head, ending at its tail.
    for k in 0..m1 {
        out.push(p1[(e1 + 1 + k) % m1]);
    }
    // p2 shares edge (p2[e2], p2[e2+1]) = (p1[e1+1], p1[e1]); append its
    // interior chain strictly between the shared endpoints.
    for k in 2..m2 {
        out.push(p2[(e2 + k) % m2]);
    }
    out
}

/// Greedy diagonal removal: repeatedly merge any two parts whose shared
/// diagonal leaves a convex union, until no such pair remains.
fn merge_parts(mut polys: Vec<Vec<usize>>, ring: &[Point], tol: f64) -> Vec<Vec<usize>> {
    'again: loop {
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                let (pi, pj) = (&polys[i], &polys[j]);
                for e1 in 0..pi.len() {
                    let (a, b) = (pi[e1], pi[(e1 + 1) % pi.len()]);
                    for e2 in 0..pj.len() {
                        if pj[e2] == b && pj[(e2 + 1) % pj.len()] == a {
                            let merged = merge_rings(pi, e1, pj, e2);
                            if is_convex_indices(&merged, ring, tol) {
                                polys[i] = merged;
                                polys.swap_remove(j);
                                continue 'again;
                            }
                        }
                    }
                }
            }
        }
        return polys;
    }
}

/// Decomposes a simple polygon into interior-disjoint convex parts. If
/// the polygon already carries validated parts, those are returned as-is.
pub fn decompose(p: &SimplePolygon) -> Result<Decomposition, Error> {
    if let Some(parts) = p.parts() {
        return Ok(Decomposition {
            parts: parts.to_vec(),
            source_ring: p.ring().to_vec(),
        });
    }
    let ring = p.ring();
    let (lo, hi) = p.bbox();
    let scale = ((hi.x - lo.x).max(hi.y - lo.y)).max(1.0);
    let tol = 1e-12 * scale * scale;

    let tris = triangulate(ring)?;
    let polys = merge_parts(tris.iter().map(|t| t.to_vec()).collect(), ring, tol);

    let parts: Result<Vec<ConvexPolygon>, Error> = polys
        .iter()
        .map(|poly| ConvexPolygon::new(poly.iter().map(|&i| ring[i]).collect()))
        .collect();
    let parts = parts?;

    // Cross-check the result against the source before handing it out.
    let sum: f64 = parts.iter().map(|q| q.area()).sum();
    if (sum - p.area()).abs() > 1e-9 * p.area().max(1.0) {
        return Err(Error::InvalidGeometry(format!(
            "decomposition area {sum} does not match ring area {}",
            p.area()
        )));
    }
    Ok(Decomposition {
        parts,
        source_ring: ring.to_vec(),
    })
}

/// [`decompose`] and attach the parts to the polygon.
pub fn decomposed(p: &SimplePolygon) -> Result<SimplePolygon, Error> {
    let d = decompose(p)?;
    let mut out = p.clone();
    out.set_parts_unchecked(d.parts);
    Ok(out)
}
