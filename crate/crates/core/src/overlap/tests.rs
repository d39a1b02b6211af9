use super::*;
use crate::approx::ApproxConstants;
use crate::geom::SimplePolygon;
use crate::oracle::{grid_max_overlap, grid_max_overlap_convex, GridConfig};
use crate::sample::{random_convex_polygon, rectangle, regular_polygon, unit_square};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn translation_domain(x: &ConvexPolygon, y: &ConvexPolygon) -> (Point, Point) {
    let (plo, phi) = x.bbox();
    let (qlo, qhi) = y.bbox();
    (plo - qhi, phi - qlo)
}

fn random_t(rng: &mut ChaCha8Rng, lo: Point, hi: Point) -> Point {
    Point::new(rng.random_range(lo.x..hi.x), rng.random_range(lo.y..hi.y))
}

fn check_contract(
    psi: &PiecewiseQuadratic,
    x: &ConvexPolygon,
    y: &ConvexPolygon,
    eps: f64,
    samples: usize,
    seed: u64,
) {
    let report = grid_max_overlap_convex(x, y, &GridConfig::default());
    let mu = report.best_value;
    let slack = report.value_slack_bound;
    let (lo, hi) = translation_domain(x, y);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let t = random_t(&mut rng, lo, hi);
        let direct = overlap_area(x, y, t);
        let approx = psi.evaluate(t);
        assert!(
            (approx - direct).abs() <= eps * mu + slack,
            "sample {i}: t={t:?} psi={approx} direct={direct} bound={}",
            eps * mu + slack
        );
    }
}

#[test]
fn grid_approx_square_in_big_square() {
    let consts = ApproxConstants::default();
    let x = unit_square();
    let y = rectangle(0., 0., 10., 10.);
    let eps = 0.25;
    let psi = approx_small_in_large(&x, &y, eps, &consts).unwrap();

    // Event polygon budget from the construction.
    let m = (4.0f64 / eps).ceil() as usize;
    assert!(psi.event_polygons.len() <= (m + 1) * (m + 1));
    assert!(psi.kinds.iter().all(|k| *k == EventKind::GridPoint));

    // Deep placement: the whole of X is covered.
    let deep = Point::new(-4.0, -4.0); // X − (t+Y) ⇔ X ⊂ t+Y for t near (−4,−4)
    assert!((psi.evaluate(deep) - 1.0).abs() <= eps, "{}", psi.evaluate(deep));
    // Far placement: exactly zero.
    assert_eq!(psi.evaluate(Point::new(100.0, 0.0)), 0.0);

    check_contract(&psi, &x, &y, eps, 200, 11);
}

#[test]
fn grid_approx_rejects_non_fitting_pair() {
    let consts = ApproxConstants::default();
    let big = rectangle(0., 0., 10., 10.);
    let err = approx_small_in_large(&big, &unit_square(), 0.25, &consts).unwrap_err();
    assert!(matches!(err, Error::PreconditionViolated(_)));
    assert!(approx_small_in_large(&unit_square(), &big, 1.5, &consts).is_err());
}

#[test]
fn grid_approx_triangle_in_hexagon() {
    let consts = ApproxConstants::default();
    let tri = ConvexPolygon::new(vec![
        Point::new(0., 0.),
        Point::new(1., 0.),
        Point::new(0., 1.),
    ])
    .unwrap();
    let hex = regular_polygon(6, 5.0);
    let eps = 0.25;
    let psi = approx_small_in_large(&tri, &hex, eps, &consts).unwrap();
    check_contract(&psi, &tri, &hex, eps, 200, 13);
}

#[test]
fn onion_approx_nested_rings_and_contract() {
    let consts = ApproxConstants::default();
    let x = unit_square();
    let y = rectangle(0., 0., 10., 10.);
    let eps = 0.25;
    let psi = approx_small_in_large_slices(&x, &y, eps, &consts).unwrap();

    // Rings nest: each higher-level ring lies inside the previous.
    for w in psi.event_polygons.windows(2) {
        assert!(w[0].contains_polygon(&w[1], 1e-6));
    }
    assert!(psi.kinds.iter().all(|k| *k == EventKind::SliceRing));

    // ψ only takes the slice levels and 0.
    let levels: Vec<f64> = match &psi.backend {
        Backend::Onion { alphas } => alphas.clone(),
        _ => unreachable!(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (lo, hi) = translation_domain(&x, &y);
    for _ in 0..200 {
        let t = random_t(&mut rng, lo, hi);
        let v = psi.evaluate(t);
        assert!(
            v == 0.0 || levels.iter().any(|a| (a - v).abs() < 1e-12),
            "unexpected level {v}"
        );
    }

    check_contract(&psi, &x, &y, eps, 200, 19);
}

#[test]
fn incomparable_approx_crossed_rectangles() {
    let consts = ApproxConstants::default();
    let x = rectangle(0., 0., 10., 1.);
    let y = rectangle(0., 0., 1., 10.);
    let eps = 0.1;
    let psi = approx_incomparable(&x, &y, eps, &consts).unwrap();

    // True maximum is 1; the approximation must nearly reach it.
    let report = grid_max_overlap_convex(&x, &y, &GridConfig::default());
    let best_direct = psi.evaluate(report.best_translation);
    assert!(best_direct >= (1.0 - eps) * 1.0 - 1e-9, "{best_direct}");

    check_contract(&psi, &x, &y, eps, 200, 23);
}

#[test]
fn incomparable_approx_rotated_square() {
    let consts = ApproxConstants::default();
    let x = unit_square();
    let s = 0.5f64.sqrt();
    let y = ConvexPolygon::new(vec![
        Point::new(s, 0.),
        Point::new(2.0 * s, s),
        Point::new(s, 2.0 * s),
        Point::new(0., s),
    ])
    .unwrap();
    let eps = 0.25;
    let psi = approx_convex_pair(&x, &y, eps, &consts).unwrap();
    assert!(!psi.negate_t);
    check_contract(&psi, &x, &y, eps, 200, 29);
}

#[test]
fn dispatch_identical_shapes_take_incomparable_branch() {
    let consts = ApproxConstants::default();
    let sq = unit_square();
    let psi = approx_convex_pair(&sq, &sq, 0.2, &consts).unwrap();
    assert!(psi.kinds.iter().all(|k| *k == EventKind::VertexRegion));
    check_contract(&psi, &sq, &sq, 0.2, 200, 31);
}

#[test]
fn dispatch_small_y_negates_translations() {
    let consts = ApproxConstants::default();
    let x = rectangle(0., 0., 10., 10.);
    let y = unit_square();
    let eps = 0.25;
    let psi = approx_convex_pair(&x, &y, eps, &consts).unwrap();
    assert!(psi.negate_t);
    check_contract(&psi, &x, &y, eps, 200, 37);

    // Exact reflection identity against the swapped object.
    let swapped = approx_convex_pair(&y, &x, eps, &consts).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let (lo, hi) = translation_domain(&x, &y);
    for _ in 0..100 {
        let t = random_t(&mut rng, lo, hi);
        assert_eq!(psi.evaluate(t), swapped.evaluate(-t));
    }
}

#[test]
fn face_quadratics_match_evaluation_on_faces() {
    let consts = ApproxConstants::default();
    let x = rectangle(0., 0., 10., 1.);
    let y = rectangle(0., 0., 1., 10.);
    let psi = approx_incomparable(&x, &y, 0.25, &consts).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let (lo, hi) = translation_domain(&x, &y);
    for _ in 0..200 {
        let t = random_t(&mut rng, lo, hi);
        let q = psi.face_quadratic_at(t);
        assert!(
            (q.eval(t) - psi.evaluate(t)).abs() < 1e-9,
            "t={t:?}: {} vs {}",
            q.eval(t),
            psi.evaluate(t)
        );
    }
}

#[test]
fn unimodal_along_random_lines() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for seed in 0..20 {
        let x = random_convex_polygon(71_000 + seed, 6 + (seed as usize % 8), 4.0);
        let y = random_convex_polygon(72_000 + seed, 6 + (seed as usize % 6), 4.0);
        let (lo, hi) = translation_domain(&x, &y);
        for _ in 0..20 {
            let a = random_t(&mut rng, lo, hi);
            let b = random_t(&mut rng, lo, hi);
            let vals: Vec<f64> = (0..201)
                .map(|i| {
                    let s = i as f64 / 200.0;
                    overlap_area(&x, &y, a + (b - a) * s)
                })
                .collect();
            for w in vals.windows(3) {
                assert!(
                    !(w[1] < w[0] - 1e-9 && w[1] < w[2] - 1e-9),
                    "interior dip: {w:?}"
                );
            }
        }
    }
}

#[test]
fn grid_oracle_and_pair_sum_agree_for_decompositions() {
    // Sanity bridge: the oracle's summed overlap of convex parts matches
    // whole-polygon evaluation through the parts of fixtures.
    let l = crate::sample::l_shape();
    let parts = l.parts().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..50 {
        let t = Point::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let mut sum = 0.0;
        for a in parts {
            for b in parts {
                sum += overlap_area(a, b, t);
            }
        }
        let whole = crate::oracle::exact_overlap_general(&l, &l, t).unwrap();
        assert!((sum - whole).abs() <= 1e-9 * whole.max(1.0));
    }
}

#[test]
fn oracle_reaches_analytic_max_on_fixture() {
    let l = crate::sample::l_shape();
    let r = grid_max_overlap(&l, &l, &GridConfig::default()).unwrap();
    assert!((r.best_value - 3.0).abs() <= r.value_slack_bound + 1e-9);
    let _unused: SimplePolygon = l;
}
