//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's derived quantities; only plain point arithmetic.
#![allow(dead_code)]

use exparabolas::{Point2, Triangle};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub type P = [f64; 2];

pub fn p(q: Point2) -> P {
    [q.x, q.y]
}

pub fn sub(a: P, b: P) -> P {
    [a[0] - b[0], a[1] - b[1]]
}

pub fn add(a: P, b: P) -> P {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn scale(a: P, s: f64) -> P {
    [a[0] * s, a[1] * s]
}

pub fn dot(a: P, b: P) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// `a[0] b[1] - a[1] b[0]` with an FMA error term.
pub fn cross(a: P, b: P) -> f64 {
    let w = a[1] * b[0];
    let e = (-a[1]).mul_add(b[0], w);
    a[0].mul_add(b[1], -w) + e
}

pub fn norm(a: P) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: P, b: P) -> f64 {
    norm(sub(a, b))
}

/// Solves `[r0; r1] x = rhs` by Cramer's rule.
pub fn solve2(r0: P, r1: P, rhs: P) -> P {
    let d = cross(r0, r1);
    [
        cross(rhs, [r0[1], r1[1]]) / d,
        cross([r0[0], r1[0]], rhs) / d,
    ]
}

/// Point equidistant from the three vertices.
pub fn circumcenter(a: P, b: P, c: P) -> P {
    // with X' = X - A: 2(B-A)·X' = |B-A|², 2(C-A)·X' = |C-A|²
    let (b, c) = (sub(b, a), sub(c, a));
    add(
        a,
        solve2(scale(b, 2.0), scale(c, 2.0), [dot(b, b), dot(c, c)]),
    )
}

/// Intersection of the altitudes from `a` and `b`.
pub fn orthocenter(a: P, b: P, c: P) -> P {
    // with X' = X - A: (C-B)·X' = 0, (C-A)·X' = (B-A)·(C-A)
    let (ab, ac) = (sub(b, a), sub(c, a));
    add(a, solve2(sub(ac, ab), ac, [0.0, dot(ab, ac)]))
}

pub fn tri_points(t: &Triangle) -> [P; 3] {
    t.vertices().map(p)
}

/// Distance of `x` from the line through `q` with direction `d`.
pub fn line_distance(q: P, d: P, x: P) -> f64 {
    cross(d, sub(x, q)).abs() / norm(d)
}

/// Quadratic Bézier evaluation by the Bernstein form.
pub fn bezier(c: [P; 3], u: f64) -> P {
    let (s, t) = (1.0 - u, u);
    [
        s * s * c[0][0] + 2.0 * s * t * c[1][0] + t * t * c[2][0],
        s * s * c[0][1] + 2.0 * s * t * c[1][1] + t * t * c[2][1],
    ]
}

pub fn bezier_d1(c: [P; 3], u: f64) -> P {
    add(
        scale(sub(c[1], c[0]), 2.0 * (1.0 - u)),
        scale(sub(c[2], c[1]), 2.0 * u),
    )
}

pub fn bezier_d2(c: [P; 3]) -> P {
    scale(add(sub(c[0], scale(c[1], 2.0)), c[2]), 2.0)
}

/// Curve parameter where the tangent is orthogonal to the axis.
pub fn vertex_param(c: [P; 3]) -> f64 {
    let a = bezier_d2(c);
    let d0 = bezier_d1(c, 0.0);
    -dot(d0, a) / dot(a, a)
}

/// Signed curvature at `u`.
pub fn curvature(c: [P; 3], u: f64) -> f64 {
    let d1 = bezier_d1(c, u);
    cross(d1, bezier_d2(c)) / norm(d1).powi(3)
}

/// Focus by the reflection property: rays parallel to the axis reflect in
/// the tangent into lines through the focus. Two such lines meet there.
pub fn reflection_focus(c: [P; 3]) -> P {
    let a = bezier_d2(c);
    let lines: Vec<(P, P)> = [0.0, 0.5, 1.0]
        .iter()
        .map(|&u| {
            let t = bezier_d1(c, u);
            let tn = scale(t, 1.0 / norm(t));
            (bezier(c, u), sub(scale(tn, 2.0 * dot(a, tn)), a))
        })
        .collect();
    // the best-conditioned pair (a focal chord makes two lines coincide)
    let mut best = (0, 1);
    let mut best_sin = 0.0;
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        let s = cross(lines[i].1, lines[j].1).abs() / (norm(lines[i].1) * norm(lines[j].1));
        if s > best_sin {
            best_sin = s;
            best = (i, j);
        }
    }
    let (q0, r0) = lines[best.0];
    let (q1, r1) = lines[best.1];
    let n0 = [-r0[1], r0[0]];
    let n1 = [-r1[1], r1[0]];
    solve2(n0, n1, [dot(n0, q0), dot(n1, q1)])
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Minimal double-double value `hi + lo` for oracles that must not inherit
/// f64 cancellation.
#[derive(Clone, Copy, Debug)]
pub struct D(pub f64, pub f64);

impl D {
    pub fn from(x: f64) -> D {
        D(x, 0.0)
    }

    pub fn val(self) -> f64 {
        self.0 + self.1
    }

    pub fn add(self, o: D) -> D {
        let (s, e) = two_sum(self.0, o.0);
        let e = e + self.1 + o.1;
        let (s, e) = two_sum(s, e);
        D(s, e)
    }

    pub fn neg(self) -> D {
        D(-self.0, -self.1)
    }

    pub fn sub(self, o: D) -> D {
        self.add(o.neg())
    }

    pub fn mul(self, o: D) -> D {
        let p = self.0 * o.0;
        let e = self.0.mul_add(o.0, -p) + (self.0 * o.1 + self.1 * o.0);
        let (s, e) = two_sum(p, e);
        D(s, e)
    }
}
