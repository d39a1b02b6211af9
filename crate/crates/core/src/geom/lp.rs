//! Randomized incremental linear programming in dimensions 2 and 3
//! (Seidel's algorithm), used for scaling similarity and Chebyshev radii.
//!
//! Maximizes `c·x` subject to `a_i·x <= b_i` inside a bounding box
//! `|x_j| <= bound` supplied by the caller. Constraints are normalized so
//! the feasibility tolerance is an absolute distance.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FEAS_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct Constraint2 {
    pub a: [f64; 2],
    pub b: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct Constraint3 {
    pub a: [f64; 3],
    pub b: f64,
}

fn norm2(a: [f64; 2]) -> f64 {
    a[0].hypot(a[1])
}

fn norm3(a: [f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

/// 1D: maximize `c*x` on `[lo, hi]` under `a*x <= b`. Returns `None` if
/// infeasible.
fn lp1_maximize(c: f64, cons: &[(f64, f64)], mut lo: f64, mut hi: f64) -> Option<f64> {
    for &(a, b) in cons {
        if a.abs() <= 1e-300 {
            if b < -FEAS_EPS {
                return None;
            }
        } else if a > 0.0 {
            hi = hi.min(b / a);
        } else {
            lo = lo.max(b / a);
        }
    }
    if lo > hi + FEAS_EPS {
        return None;
    }
    Some(if c >= 0.0 { hi.max(lo) } else { lo.min(hi) })
}

pub fn lp2_maximize(
    c: [f64; 2],
    constraints: &[Constraint2],
    bound: f64,
    seed: u64,
) -> Option<[f64; 2]> {
    let mut cons: Vec<Constraint2> = constraints
        .iter()
        .filter_map(|k| {
            let n = norm2(k.a);
            if n <= 1e-300 {
                // Trivial or infeasible without reference to x; infeasible
                // handled by a sentinel that can never be satisfied.
                if k.b < -FEAS_EPS {
                    Some(Constraint2 { a: [0.0, 0.0], b: -1.0 })
                } else {
                    None
                }
            } else {
                Some(Constraint2 {
                    a: [k.a[0] / n, k.a[1] / n],
                    b: k.b / n,
                })
            }
        })
        .collect();
    if cons.iter().any(|k| norm2(k.a) <= 1e-300) {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    cons.shuffle(&mut rng);

    let mut x = [
        if c[0] >= 0.0 { bound } else { -bound },
        if c[1] >= 0.0 { bound } else { -bound },
    ];
    for i in 0..cons.len() {
        let k = cons[i];
        if k.a[0] * x[0] + k.a[1] * x[1] <= k.b + FEAS_EPS {
            continue;
        }
        // Optimum lies on the line a·x = b. Parametrize p0 + s*d.
        let d = [-k.a[1], k.a[0]];
        let p0 = [k.a[0] * k.b, k.a[1] * k.b];
        let mut sub: Vec<(f64, f64)> = Vec::with_capacity(i + 4);
        for kj in &cons[..i] {
            let ad = kj.a[0] * d[0] + kj.a[1] * d[1];
            let rhs = kj.b - (kj.a[0] * p0[0] + kj.a[1] * p0[1]);
            sub.push((ad, rhs));
        }
        // Box constraints.
        for (axis, sign) in [(0, 1.0), (0, -1.0), (1, 1.0), (1, -1.0)] {
            let ad = sign * d[axis];
            let rhs = bound - sign * p0[axis];
            sub.push((ad, rhs));
        }
        let cd = c[0] * d[0] + c[1] * d[1];
        let s = lp1_maximize(cd, &sub, -4.0 * bound, 4.0 * bound)?;
        x = [p0[0] + s * d[0], p0[1] + s * d[1]];
    }
    Some(x)
}

pub fn lp3_maximize(
    c: [f64; 3],
    constraints: &[Constraint3],
    bound: f64,
    seed: u64,
) -> Option<[f64; 3]> {
    let mut cons: Vec<Constraint3> = Vec::with_capacity(constraints.len());
    for k in constraints {
        let n = norm3(k.a);
        if n <= 1e-300 {
            if k.b < -FEAS_EPS {
                return None;
            }
            continue;
        }
        cons.push(Constraint3 {
            a: [k.a[0] / n, k.a[1] / n, k.a[2] / n],
            b: k.b / n,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    cons.shuffle(&mut rng);

    let mut x = [
        if c[0] >= 0.0 { bound } else { -bound },
        if c[1] >= 0.0 { bound } else { -bound },
        if c[2] >= 0.0 { bound } else { -bound },
    ];
    for i in 0..cons.len() {
        let k = cons[i];
        if dot3(k.a, x) <= k.b + FEAS_EPS {
            continue;
        }
        // Optimum lies on the plane a·x = b. Build an orthonormal frame.
        let (u, v) = plane_basis(k.a);
        let p0 = [k.a[0] * k.b, k.a[1] * k.b, k.a[2] * k.b];
        let mut sub: Vec<Constraint2> = Vec::with_capacity(i + 6);
        for kj in &cons[..i] {
            sub.push(Constraint2 {
                a: [dot3(kj.a, u), dot3(kj.a, v)],
                b: kj.b - dot3(kj.a, p0),
            });
        }
        for axis in 0..3 {
            for sign in [1.0f64, -1.0] {
                let mut a = [0.0; 3];
                a[axis] = sign;
                sub.push(Constraint2 {
                    a: [dot3(a, u), dot3(a, v)],
                    b: bound - sign * p0[axis],
                });
            }
        }
        let c2 = [dot3(c, u), dot3(c, v)];
        let s = lp2_maximize(c2, &sub, 4.0 * bound, seed ^ (i as u64).wrapping_mul(0x9e3779b97f4a7c15))?;
        x = [
            p0[0] + s[0] * u[0] + s[1] * v[0],
            p0[1] + s[0] * u[1] + s[1] * v[1],
            p0[2] + s[0] * u[2] + s[1] * v[2],
        ];
    }
    Some(x)
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn plane_basis(n: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    // Pick the coordinate axis least aligned with n.
    let abs = [n[0].abs(), n[1].abs(), n[2].abs()];
    let mut axis = 0;
    if abs[1] < abs[axis] {
        axis = 1;
    }
    if abs[2] < abs[axis] {
        axis = 2;
    }
    let mut e = [0.0; 3];
    e[axis] = 1.0;
    // u = normalize(e - (e·n) n), v = n × u
    let en = dot3(e, n);
    let mut u = [e[0] - en * n[0], e[1] - en * n[1], e[2] - en * n[2]];
    let un = norm3(u);
    u = [u[0] / un, u[1] / un, u[2] / un];
    let v = [
        n[1] * u[2] - n[2] * u[1],
        n[2] * u[0] - n[0] * u[2],
        n[0] * u[1] - n[1] * u[0],
    ];
    (u, v)
}


#[cfg(test)]
mod degenerate_tests {
    use super::*;

    /// Exact-fit instance whose optimum is a cone apex with four tight
    /// constraints; exercises the degenerate-vertex path.
    #[test]
    fn lp3_exact_fit_cone() {
        // t_x <= -2; t_y <= -1; -t_x - 2a <= 0; -t_y - a <= 0; a >= 0.
        let cons = vec![
            Constraint3 { a: [1.0, 0.0, 0.0], b: -2.0 },
            Constraint3 { a: [1.0, 0.0, 0.0], b: 0.0 },
            Constraint3 { a: [0.0, 1.0, 0.0], b: -1.0 },
            Constraint3 { a: [0.0, 1.0, 0.0], b: 0.0 },
            Constraint3 { a: [-1.0, 0.0, -2.0], b: 0.0 },
            Constraint3 { a: [-1.0, 0.0, -2.0], b: 2.0 },
            Constraint3 { a: [0.0, -1.0, -1.0], b: 0.0 },
            Constraint3 { a: [0.0, -1.0, -1.0], b: 1.0 },
            Constraint3 { a: [0.0, 0.0, -1.0], b: 0.0 },
        ];
        for seed in 0..20u64 {
            let sol = lp3_maximize([0.0, 0.0, -1.0], &cons, 170.0, seed);
            assert!(sol.is_some(), "seed {seed}");
            let s = sol.unwrap();
            assert!((s[2] - 1.0).abs() < 1e-6, "seed {seed}: {s:?}");
        }
    }
}
