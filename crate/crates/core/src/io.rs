//! File formats: a minimal JSON polygon record (ring + optional convex
//! parts), a one-way WKT `POLYGON` importer, and an informational SVG
//! writer. Coordinate serialization uses shortest round-trip decimals,
//! so write-then-read reproduces every coordinate bit for bit.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geom::{ConvexPolygon, Point, SimplePolygon};

/// On-disk polygon record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonFile {
    /// Counterclockwise boundary ring as `[x, y]` pairs.
    pub ring: Vec<[f64; 2]>,
    /// Optional convex decomposition, one ring per part.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<Vec<[f64; 2]>>>,
}

fn to_points(ring: &[[f64; 2]]) -> Vec<Point> {
    ring.iter().map(|&[x, y]| Point::new(x, y)).collect()
}

fn from_points(ring: &[Point]) -> Vec<[f64; 2]> {
    ring.iter().map(|p| [p.x, p.y]).collect()
}

impl PolygonFile {
    pub fn from_polygon(p: &SimplePolygon) -> PolygonFile {
        PolygonFile {
            ring: from_points(p.ring()),
            parts: p
                .parts()
                .map(|ps| ps.iter().map(|c| from_points(c.vertices())).collect()),
        }
    }

    /// Validates into a [`SimplePolygon`] (parts included when present).
    pub fn into_polygon(&self) -> Result<SimplePolygon, Error> {
        for &[x, y] in self.ring.iter().chain(self.parts.iter().flatten().flatten()) {
            if !(x.is_finite() && y.is_finite()) {
                return Err(Error::Parse(format!("non-finite coordinate [{x}, {y}]")));
            }
        }
        let poly = SimplePolygon::new(to_points(&self.ring))?;
        match &self.parts {
            None => Ok(poly),
            Some(parts) => {
                let parts: Result<Vec<ConvexPolygon>, Error> = parts
                    .iter()
                    .map(|r| ConvexPolygon::new(to_points(r)))
                    .collect();
                poly.with_parts(parts?)
            }
        }
    }
}

pub fn read_polygon(path: &Path) -> Result<SimplePolygon, Error> {
    let text = std::fs::read_to_string(path)?;
    let file: PolygonFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    file.into_polygon()
}

pub fn write_polygon(path: &Path, p: &SimplePolygon) -> Result<(), Error> {
    let file = PolygonFile::from_polygon(p);
    let text = serde_json::to_string_pretty(&file)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

/// Imports the outer ring of a WKT `POLYGON ((x y, x y, ...))` record.
/// Inner rings are rejected (the polygon model here has no holes).
pub fn polygon_from_wkt(text: &str) -> Result<SimplePolygon, Error> {
    let t = text.trim();
    let upper = t.to_ascii_uppercase();
    if !upper.starts_with("POLYGON") {
        return Err(Error::Parse("expected WKT starting with POLYGON".into()));
    }
    let body = t["POLYGON".len()..].trim();
    let inner = body
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse("unbalanced parentheses in WKT".into()))?
        .trim();
    if inner.matches('(').count() != 1 {
        return Err(Error::Parse(
            "only single-ring POLYGON records are supported".into(),
        ));
    }
    let ring_text = inner
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse("unbalanced ring parentheses in WKT".into()))?;
    let mut ring = Vec::new();
    for pair in ring_text.split(',') {
        let mut it = pair.split_whitespace();
        let x: f64 = it
            .next()
            .ok_or_else(|| Error::Parse("missing x coordinate in WKT".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad WKT number: {e}")))?;
        let y: f64 = it
            .next()
            .ok_or_else(|| Error::Parse("missing y coordinate in WKT".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad WKT number: {e}")))?;
        if it.next().is_some() {
            return Err(Error::Parse("more than two coordinates per WKT point".into()));
        }
        ring.push(Point::new(x, y));
    }
    // WKT closes the ring by repeating the first point.
    if ring.len() >= 2 && ring.first() == ring.last() {
        ring.pop();
    }
    SimplePolygon::new(ring)
}

/// Writes the rings as an SVG drawing (informational only): each ring is
/// one `<polygon>` with a distinct fill from a fixed palette.
pub fn write_svg(path: &Path, rings: &[Vec<Point>]) -> Result<(), Error> {
    const PALETTE: [&str; 6] = [
        "#4878d0", "#ee854a", "#6acc64", "#d65f5f", "#956cb4", "#8c613c",
    ];
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in rings.iter().flatten() {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::BadParameter("nothing to draw".into()));
    }
    let pad = 0.05 * (hi - lo).norm().max(1.0);
    let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        lo.x - pad,
        -(hi.y + pad), // y grows downward in SVG; flip via a negated axis
        w,
        h
    );
    for (i, ring) in rings.iter().enumerate() {
        let pts: Vec<String> = ring.iter().map(|p| format!("{},{}", p.x, -p.y)).collect();
        svg.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.5\" stroke=\"black\" stroke-width=\"{}\"/>\n",
            pts.join(" "),
            PALETTE[i % PALETTE.len()],
            0.002 * w.max(h)
        ));
    }
    svg.push_str("</svg>\n");
    std::fs::write(path, svg)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{fixtures, l_shape};

    #[test]
    fn json_round_trip_is_bit_exact() {
        for (name, f) in fixtures() {
            let dir = std::env::temp_dir().join(format!("polyoverlap_io_{name}"));
            std::fs::create_dir_all(&dir).unwrap();
            let path = dir.join("p.json");
            // Perturb with irrational-ish values to stress serialization.
            let moved = f.translate(Point::new(1.0 / 3.0, std::f64::consts::PI * 1e-3));
            write_polygon(&path, &moved).unwrap();
            let back = read_polygon(&path).unwrap();
            assert_eq!(back.ring(), moved.ring(), "{name}");
            assert_eq!(back.parts(), moved.parts(), "{name}");
            // Writing the re-read polygon reproduces the bytes.
            let path2 = dir.join("q.json");
            write_polygon(&path2, &back).unwrap();
            assert_eq!(
                std::fs::read(&path).unwrap(),
                std::fs::read(&path2).unwrap(),
                "{name}"
            );
        }
    }

    #[test]
    fn wkt_import() {
        let p = polygon_from_wkt("POLYGON ((0 0, 2 0, 2 1, 1 1, 1 2, 0 2, 0 0))").unwrap();
        assert_eq!(p.ring(), l_shape().ring());
        assert!(polygon_from_wkt("LINESTRING (0 0, 1 1)").is_err());
        assert!(polygon_from_wkt("POLYGON ((0 0, 1 0, 1 1), (2 2, 3 2, 3 3))").is_err());
        assert!(polygon_from_wkt("POLYGON ((0 0, 1 x, 1 1))").is_err());
    }

    #[test]
    fn svg_is_well_formed_enough() {
        let dir = std::env::temp_dir().join("polyoverlap_io_svg");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.svg");
        let l = l_shape();
        let rings: Vec<Vec<Point>> = l
            .parts()
            .unwrap()
            .iter()
            .map(|c| c.vertices().to_vec())
            .collect();
        write_svg(&path, &rings).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("<svg"));
        assert!(text.ends_with("</svg>\n"));
        assert_eq!(text.matches("<polygon").count(), 2);
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        let dir = std::env::temp_dir().join("polyoverlap_io_bad");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.json");
        std::fs::write(&path, "{\"ring\": [[0, 0], [1, oops]]}").unwrap();
        let err = read_polygon(&path).unwrap_err();
        assert!(matches!(err, Error::Parse(_)), "{err:?}");
        assert_eq!(err.exit_code(), 2);
    }
}
