//! Python bindings for the polygon-overlap matching library.
//!
//! Exposes the simple-polygon type, the exact overlap evaluation, the
//! grid oracle, convex decomposition, scaling similarity, level-set
//! slices, and the translation matcher.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use polyoverlap::approx::ApproxConstants;
use polyoverlap::decompose::decomposed;
use polyoverlap::error::Error;
use polyoverlap::geom::{ConvexPolygon, Point};
use polyoverlap::matcher::{build_query_structure, match_polygons as match_impl};
use polyoverlap::oracle::{exact_overlap_general, grid_max_overlap, GridConfig};
use polyoverlap::overlap::compute_slice as slice_impl;
use polyoverlap::SimplePolygon;

fn to_py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ring_to_points(ring: Vec<(f64, f64)>) -> Vec<Point> {
    ring.into_iter().map(|(x, y)| Point::new(x, y)).collect()
}

fn points_to_ring(pts: &[Point]) -> Vec<(f64, f64)> {
    pts.iter().map(|p| (p.x, p.y)).collect()
}

/// The exact evaluators need convex parts; compute them when absent.
fn with_parts(p: &Polygon) -> PyResult<SimplePolygon> {
    if p.inner.parts().is_some() {
        Ok(p.inner.clone())
    } else {
        decomposed(&p.inner).map_err(to_py_err)
    }
}

fn as_convex(p: &Polygon, which: &str) -> PyResult<ConvexPolygon> {
    ConvexPolygon::new(p.inner.ring().to_vec())
        .map_err(|_| PyValueError::new_err(format!("{which} polygon must be convex")))
}

/// A simple polygon with an optional convex decomposition.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Polygon {
    inner: SimplePolygon,
}

#[pymethods]
impl Polygon {
    /// Builds a polygon from a counterclockwise ring of (x, y) pairs and
    /// an optional list of convex part rings.
    #[new]
    #[pyo3(signature = (ring, parts=None))]
    fn new(ring: Vec<(f64, f64)>, parts: Option<Vec<Vec<(f64, f64)>>>) -> PyResult<Self> {
        let poly = SimplePolygon::new(ring_to_points(ring)).map_err(to_py_err)?;
        let poly = match parts {
            None => poly,
            Some(parts) => {
                let parts: Result<Vec<ConvexPolygon>, Error> = parts
                    .into_iter()
                    .map(|r| ConvexPolygon::new(ring_to_points(r)))
                    .collect();
                poly.with_parts(parts.map_err(to_py_err)?).map_err(to_py_err)?
            }
        };
        Ok(Polygon { inner: poly })
    }

    fn area(&self) -> f64 {
        self.inner.area()
    }

    fn ring(&self) -> Vec<(f64, f64)> {
        points_to_ring(self.inner.ring())
    }

    fn parts(&self) -> Option<Vec<Vec<(f64, f64)>>> {
        self.inner
            .parts()
            .map(|ps| ps.iter().map(|c| points_to_ring(c.vertices())).collect())
    }

    /// Returns a copy with convex parts attached (computed if absent).
    fn decompose(&self) -> PyResult<Polygon> {
        Ok(Polygon {
            inner: decomposed(&self.inner).map_err(to_py_err)?,
        })
    }

    fn translate(&self, t: (f64, f64)) -> Polygon {
        Polygon {
            inner: self.inner.translate(Point::new(t.0, t.1)),
        }
    }

    /// Point reflection through the origin.
    fn reflect(&self) -> Polygon {
        Polygon {
            inner: self.inner.reflect(),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Polygon({} vertices, area {:.6})",
            self.inner.ring().len(),
            self.inner.area()
        )
    }
}

/// Result of a match run.
#[pyclass]
struct MatchOutcome {
    #[pyo3(get)]
    translation: (f64, f64),
    #[pyo3(get)]
    value: f64,
    #[pyo3(get)]
    epsilon: f64,
    #[pyo3(get)]
    pair_budget: f64,
    #[pyo3(get)]
    face_count: usize,
    query: polyoverlap::matcher::QueryStructure,
}

#[pymethods]
impl MatchOutcome {
    /// ψ(t): the approximate overlap at translation `t`, answered from
    /// the match's point-location structure.
    fn query_overlap(&self, t: (f64, f64)) -> f64 {
        self.query.query_overlap(Point::new(t.0, t.1))
    }

    fn __repr__(&self) -> String {
        format!(
            "MatchOutcome(translation=({}, {}), value={})",
            self.translation.0, self.translation.1, self.value
        )
    }
}

/// Exact overlap area of `p` and `q + t`.
#[pyfunction]
fn overlap_area(p: &Polygon, q: &Polygon, t: (f64, f64)) -> PyResult<f64> {
    exact_overlap_general(&with_parts(p)?, &with_parts(q)?, Point::new(t.0, t.1))
        .map_err(to_py_err)
}

/// Brute-force grid search for the maximum overlap; returns
/// `(best_value, best_translation, slack_bound)`.
#[pyfunction]
fn grid_max(p: &Polygon, q: &Polygon) -> PyResult<(f64, (f64, f64), f64)> {
    let rep = grid_max_overlap(&with_parts(p)?, &with_parts(q)?, &GridConfig::default())
        .map_err(to_py_err)?;
    Ok((
        rep.best_value,
        (rep.best_translation.x, rep.best_translation.y),
        rep.value_slack_bound,
    ))
}

/// Minimal `alpha` so a translate of convex `x` fits in `alpha`-scaled
/// convex `y`; returns `(alpha, witness_translation)`.
#[pyfunction]
fn scaling_similarity(x: &Polygon, y: &Polygon) -> PyResult<(f64, (f64, f64))> {
    let cx = as_convex(x, "first")?;
    let cy = as_convex(y, "second")?;
    let (alpha, t) = polyoverlap::approx::scaling_similarity(&cx, &cy, &ApproxConstants::default());
    Ok((alpha, (t.x, t.y)))
}

/// Boundary ring of the superlevel set `{t : overlap(x, t+y) >= alpha}`
/// for a convex pair.
#[pyfunction]
fn slice_boundary(x: &Polygon, y: &Polygon, alpha: f64) -> PyResult<Vec<(f64, f64)>> {
    let cx = as_convex(x, "first")?;
    let cy = as_convex(y, "second")?;
    let seed = cx.centroid() - cy.centroid();
    let s = slice_impl(&cx, &cy, alpha, seed).map_err(to_py_err)?;
    Ok(points_to_ring(s.boundary.vertices()))
}

/// Finds a translation whose overlap is within `eps` of the maximum.
#[pyfunction]
fn match_polygons(p: &Polygon, q: &Polygon, eps: f64) -> PyResult<MatchOutcome> {
    let ctx = match_impl(&p.inner, &q.inner, eps).map_err(to_py_err)?;
    let r = &ctx.result;
    Ok(MatchOutcome {
        translation: (r.translation.x, r.translation.y),
        value: r.value,
        epsilon: r.epsilon,
        pair_budget: r.pair_budget,
        face_count: r.face_count,
        query: build_query_structure(&ctx),
    })
}

#[pymodule]
fn polyoverlap_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polygon>()?;
    m.add_class::<MatchOutcome>()?;
    m.add_function(wrap_pyfunction!(overlap_area, m)?)?;
    m.add_function(wrap_pyfunction!(grid_max, m)?)?;
    m.add_function(wrap_pyfunction!(scaling_similarity, m)?)?;
    m.add_function(wrap_pyfunction!(slice_boundary, m)?)?;
    m.add_function(wrap_pyfunction!(match_polygons, m)?)?;
    Ok(())
}
