//! Plain-arithmetic reference computations used to cross-check library
//! results. Nothing here calls the library's derived quantities.

use exparabolas::{BezierParabola, Point2, Triangle};

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

fn solve2(r0: P, r1: P, rhs: P) -> P {
    let d = cross(r0, r1);
    [
        cross(rhs, [r0[1], r1[1]]) / d,
        cross([r0[0], r1[0]], rhs) / d,
    ]
}

pub fn circumcenter(a: P, b: P, c: P) -> P {
    let (b, c) = (sub(b, a), sub(c, a));
    add(
        a,
        solve2(scale(b, 2.0), scale(c, 2.0), [dot(b, b), dot(c, c)]),
    )
}

pub fn orthocenter(a: P, b: P, c: P) -> P {
    let (ab, ac) = (sub(b, a), sub(c, a));
    add(a, solve2(sub(ac, ab), ac, [0.0, dot(ab, ac)]))
}

pub fn centroid(a: P, b: P, c: P) -> P {
    scale(add(add(a, b), c), 1.0 / 3.0)
}

pub fn tri_points(t: &Triangle) -> [P; 3] {
    t.vertices().map(p)
}

/// Circumcenter and circumradius.
pub fn circle(t: &Triangle) -> (P, f64) {
    let [a, b, c] = tri_points(t);
    let o = circumcenter(a, b, c);
    (o, dist(o, a))
}

pub fn line_distance(q: P, d: P, x: P) -> f64 {
    cross(d, sub(x, q)).abs() / norm(d)
}

pub fn controls(c: &BezierParabola) -> [P; 3] {
    [p(c.p0), p(c.p1), p(c.p2)]
}

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

pub fn vertex_param(c: [P; 3]) -> f64 {
    let a = bezier_d2(c);
    -dot(bezier_d1(c, 0.0), a) / dot(a, a)
}

pub fn curvature(c: [P; 3], u: f64) -> f64 {
    let d1 = bezier_d1(c, u);
    cross(d1, bezier_d2(c)) / norm(d1).powi(3)
}

/// Relative rounding sensitivity of [`curvature`] at the vertex: the
/// cancellation in `P0 - 2P1 + P2` and in the control polygon determinant.
pub fn curvature_condition(c: [P; 3]) -> f64 {
    let size = norm(c[0]) + 2.0 * norm(c[1]) + norm(c[2]);
    let cond_n = (2.0 * size / norm(bezier_d2(c))).powi(2);
    let det = cross(sub(c[1], c[0]), sub(c[2], c[1]));
    let cond_det = (norm(c[0]) + norm(c[1])) * (norm(c[1]) + norm(c[2])) / det.abs();
    cond_n + cond_det
}

/// Largest control point norm, at least one.
pub fn size(c: [P; 3]) -> f64 {
    c.iter().map(|q| norm(*q)).fold(1.0, f64::max)
}

/// Foci and axis directions in the order `A, B, C`.
pub fn altitude_residual(foci: [P; 3], axes: [(P, P); 3], r: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        let (q, d) = axes[i];
        worst = worst.max(line_distance(q, d, foci[i]) / r);
        let side = sub(foci[(i + 2) % 3], foci[(i + 1) % 3]);
        worst = worst.max((dot(d, side) / (norm(d) * norm(side))).abs());
    }
    worst
}
