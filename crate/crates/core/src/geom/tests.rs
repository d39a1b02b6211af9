use super::*;
use crate::sample::{random_convex_polygon, rectangle, regular_polygon, unit_square};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pt(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

#[test]
fn areas_of_basic_shapes() {
    assert_eq!(unit_square().area(), 1.0);
    let tri = ConvexPolygon::new(vec![pt(0., 0.), pt(1., 0.), pt(0., 1.)]).unwrap();
    assert_eq!(tri.area(), 0.5);
    let l = crate::sample::l_shape();
    assert!((l.area() - 3.0).abs() < 1e-12);
}

#[test]
fn area_additive_over_parts() {
    for (_, f) in crate::sample::fixtures() {
        let sum: f64 = f.parts().unwrap().iter().map(|p| p.area()).sum();
        assert!((sum - f.area()).abs() <= 1e-9 * f.area());
    }
}

#[test]
fn canonicalization_removes_duplicates_and_collinear() {
    let ring = vec![
        pt(0., 0.),
        pt(0.5, 0.),
        pt(1., 0.),
        pt(1., 0.),
        pt(1., 1.),
        pt(0., 1.),
        pt(0., 0.5),
    ];
    let sq = ConvexPolygon::new(ring).unwrap();
    assert_eq!(sq.len(), 4);
    assert_eq!(sq.area(), 1.0);
}

#[test]
fn clockwise_input_is_reoriented() {
    let sq = ConvexPolygon::new(vec![pt(0., 0.), pt(0., 1.), pt(1., 1.), pt(1., 0.)]).unwrap();
    assert_eq!(sq.area(), 1.0);
}

#[test]
fn nonconvex_ring_rejected() {
    let r = ConvexPolygon::new(vec![pt(0., 0.), pt(2., 0.), pt(1., 0.5), pt(0., 2.)]);
    assert!(r.is_err());
}

#[test]
fn self_intersecting_ring_rejected() {
    let bowtie = vec![pt(0., 0.), pt(1., 1.), pt(1., 0.), pt(0., 1.)];
    assert!(SimplePolygon::new(bowtie).is_err());
}

#[test]
fn hull_of_point_cloud() {
    let mut pts = vec![pt(0., 0.), pt(1., 0.), pt(1., 1.), pt(0., 1.)];
    for i in 0..50 {
        let f = i as f64 / 50.0;
        pts.push(pt(0.1 + 0.8 * f, 0.5)); // interior points
    }
    let hull = ConvexPolygon::hull_of(&pts).unwrap();
    assert_eq!(hull.len(), 4);
    assert_eq!(hull.area(), 1.0);
}

#[test]
fn width_and_diameter_of_square_and_rectangle() {
    let wd = width_and_diameter(&unit_square());
    assert!((wd.width - 1.0).abs() < 1e-12);
    assert!((wd.diameter - 2f64.sqrt()).abs() < 1e-12);

    let wd = width_and_diameter(&rectangle(0., 0., 4., 1.));
    assert!((wd.width - 1.0).abs() < 1e-12);
    assert!((wd.diameter - 17f64.sqrt()).abs() < 1e-12);
}

#[test]
fn width_and_diameter_of_hexagon() {
    // Regular hexagon, circumradius 1: opposite edges are √3 apart and
    // opposite vertices 2 apart. Cross-checked against a dense direction
    // sweep of the support gap.
    let hex = regular_polygon(6, 1.0);
    let wd = width_and_diameter(&hex);
    assert!((wd.width - 3f64.sqrt()).abs() < 1e-12, "{}", wd.width);
    assert!((wd.diameter - 2.0).abs() < 1e-12, "{}", wd.diameter);

    let mut swept = f64::INFINITY;
    for i in 0..20000 {
        let a = std::f64::consts::PI * i as f64 / 20000.0;
        let dir = pt(a.cos(), a.sin());
        swept = swept.min(hex.support(dir) + hex.support(-dir));
    }
    assert!((swept - wd.width).abs() < 1e-6);
}

#[test]
fn width_witnesses_are_consistent() {
    for seed in 0..100 {
        let c = random_convex_polygon(seed, 5 + (seed as usize % 20), 10.0);
        let wd = width_and_diameter(&c);
        let gap = c.support(wd.width_direction) + c.support(-wd.width_direction);
        assert!((gap - wd.width).abs() < 1e-9, "seed {seed}");
        let (a, b) = wd.diameter_pair;
        assert!((a.dist(b) - wd.diameter).abs() < 1e-12, "seed {seed}");
        assert!(wd.width <= wd.diameter + 1e-12);
    }
}

#[test]
fn intersection_of_shifted_squares() {
    let sq = unit_square();
    let a = overlap_area(&sq, &sq, pt(0.5, 0.5));
    assert!((a - 0.25).abs() < 1e-12);
    assert_eq!(overlap_area(&sq, &sq, pt(2.0, 0.0)), 0.0);
    assert!(convex_intersection(&sq, &sq, pt(2.0, 0.0)).is_none());
}

#[test]
fn intersection_of_square_and_containing_triangle() {
    let sq = unit_square();
    let tri = ConvexPolygon::new(vec![pt(0., 0.), pt(2., 0.), pt(0., 2.)]).unwrap();
    // The square lies inside the triangle (corner (1,1) on the hypotenuse).
    let a = overlap_area(&tri, &sq, Point::ZERO);
    assert!((a - 1.0).abs() < 1e-9, "{a}");
}

#[test]
fn intersection_provenance_of_shifted_squares() {
    let sq = unit_square();
    let inter = convex_intersection(&sq, &sq, pt(0.5, 0.5)).unwrap();
    assert!((inter.area() - 0.25).abs() < 1e-12);
    assert!(!inter.degenerate);
    let provs: Vec<Provenance> = inter.vertices.iter().map(|v| v.1).collect();
    // Overlap square [0.5,1]²: the moved square's corner, the fixed
    // square's corner, and two edge crossings.
    assert!(provs.contains(&Provenance::YVertex(0)));
    assert!(provs.iter().any(|p| matches!(p, Provenance::XVertex(_))));
    assert_eq!(
        provs
            .iter()
            .filter(|p| matches!(p, Provenance::EdgeEdge { .. }))
            .count(),
        2
    );
}

#[test]
fn intersection_area_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for seed in 0..200 {
        let x = random_convex_polygon(seed * 2 + 1, 4 + (seed as usize % 9), 5.0);
        let y = random_convex_polygon(seed * 2 + 2, 4 + (seed as usize % 7), 5.0);
        let t = pt(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let axy = overlap_area(&x, &y, t);
        // area(X ∩ (t+Y)) = area(Y ∩ (−t+X))
        let ayx = overlap_area(&y, &x, -t);
        assert!((axy - ayx).abs() <= 1e-12 * axy.max(1.0), "seed {seed}");
    }
}

#[test]
fn affine_identity_and_scaling() {
    let sq = unit_square();
    let id = AffineMap::identity();
    assert_eq!(id.apply_convex(&sq).unwrap(), sq);

    let scale2 = AffineMap::new([[2.0, 0.0], [0.0, 2.0]], Point::ZERO).unwrap();
    assert!((scale2.apply_convex(&sq).unwrap().area() - 4.0).abs() < 1e-12);
}

#[test]
fn affine_inverse_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let m = loop {
            let linear = [
                [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
                [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
            ];
            let cand = AffineMap {
                linear,
                offset: pt(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)),
            };
            if cand.determinant().abs() > 0.1 {
                break cand;
            }
        };
        let inv = m.inverse().unwrap();
        for _ in 0..5 {
            let p = pt(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
            assert!(inv.apply(m.apply(p)).dist(p) < 1e-12);
        }
    }
}

#[test]
fn affine_preserves_area_ratios() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for seed in 0..100 {
        let x = random_convex_polygon(3000 + seed, 6, 4.0);
        let y = random_convex_polygon(4000 + seed, 8, 4.0);
        // Moderate condition number: entries bounded away from singular.
        let m = loop {
            let linear = [
                [rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)],
                [rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)],
            ];
            let cand = AffineMap {
                linear,
                offset: pt(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)),
            };
            if cand.determinant().abs() > 0.05 {
                break cand;
            }
        };
        let ratio = x.area() / y.area();
        let mapped =
            m.apply_convex(&x).unwrap().area() / m.apply_convex(&y).unwrap().area();
        assert!(
            (ratio - mapped).abs() <= 1e-9 * ratio.abs().max(1.0),
            "seed {seed}: {ratio} vs {mapped}"
        );
    }
}

#[test]
fn reflecting_map_reorients() {
    let sq = unit_square();
    let flip = AffineMap::new([[-1.0, 0.0], [0.0, 1.0]], Point::ZERO).unwrap();
    let out = flip.apply_convex(&sq).unwrap();
    assert!((out.area() - 1.0).abs() < 1e-12);
}

#[test]
fn inscribed_disk_of_square_and_right_triangle() {
    assert!((inscribed_disk_radius(&unit_square()) - 0.5).abs() < 1e-9);
    let tri = ConvexPolygon::new(vec![pt(0., 0.), pt(1., 0.), pt(0., 1.)]).unwrap();
    // Inradius = area / semiperimeter = (2 − √2)/2.
    let expect = (2.0 - 2f64.sqrt()) / 2.0;
    let closed_form = tri.area() / (tri.perimeter() / 2.0);
    assert!((closed_form - expect).abs() < 1e-12);
    assert!((inscribed_disk_radius(&tri) - expect).abs() < 1e-9);
}

#[test]
fn inscribed_disk_beats_width_bound() {
    // r ≥ width / (2√3) for every convex body.
    for seed in 0..1000 {
        let c = random_convex_polygon(10_000 + seed, 3 + (seed as usize % 14), 8.0);
        let r = inscribed_disk_radius(&c);
        let w = width_and_diameter(&c).width;
        assert!(
            r >= w / (2.0 * 3f64.sqrt()) - 1e-9,
            "seed {seed}: r={r} width={w}"
        );
        // And the disk actually fits: r no larger than half the width.
        assert!(r <= w / 2.0 + 1e-9, "seed {seed}: r={r} width={w}");
    }
}

#[test]
fn contains_and_distance() {
    let sq = unit_square();
    assert!(sq.contains(pt(0.5, 0.5)));
    assert!(sq.contains(pt(1.0, 1.0)));
    assert!(!sq.contains(pt(1.1, 0.5)));
    assert!((sq.distance_to(pt(2.0, 0.5)) - 1.0).abs() < 1e-12);
    assert_eq!(sq.distance_to(pt(0.5, 0.5)), 0.0);
}

#[test]
fn support_function_of_square() {
    let sq = unit_square();
    assert_eq!(sq.support(pt(1., 0.)), 1.0);
    assert_eq!(sq.support(pt(-1., 0.)), 0.0);
    assert!((sq.support(pt(1., 1.).normalized()) - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn boundary_samples_lie_on_boundary() {
    let hex = regular_polygon(6, 2.0);
    for p in hex.boundary_samples(1000) {
        assert!(hex.contains(p));
        assert!(!hex.contains_with_tol(p, -1e-6), "sample {p:?} interior");
    }
}
