mod common;

use common::*;
use exparabolas::cubic::max_cubic_half;
use exparabolas::geometry::Vertex;
use exparabolas::sampling::{random_parameter, random_triangle};
use exparabolas::{
    axis_cubic_coeffs, max_cubic_coeffs, max_exparabola_roots, solve_cubic, steiner_residual,
    CubicCoeffs, Exparabola, Homogeneous3, RootKind, Side, Triangle,
};
use proptest::prelude::*;

/// Control points `((A - tC)/(1-t), C, (B + (t-1)C)/t)`.
fn controls(tri: &Triangle, t: f64) -> [P; 3] {
    let [a, b, c] = tri_points(tri);
    [
        scale(sub(a, scale(c, t)), 1.0 / (1.0 - t)),
        c,
        scale(add(b, scale(c, t - 1.0)), 1.0 / t),
    ]
}

/// Squared curvature radius at the vertex, from the curvature oracle, with
/// a rounding-error bound driven by the cancellation in `P0 - 2P1 + P2`.
fn rho2(tri: &Triangle, t: f64) -> (f64, f64) {
    let c = controls(tri, t);
    let k = curvature(c, vertex_param(c));
    let size = norm(c[0]) + 2.0 * norm(c[1]) + norm(c[2]);
    let cond_n = (2.0 * size / norm(bezier_d2(c))).powi(2);
    let det = cross(sub(c[1], c[0]), sub(c[2], c[1]));
    let cond_det = (norm(c[0]) + norm(c[1])) * (norm(c[1]) + norm(c[2])) / det.abs();
    (1.0 / (k * k), 1e-13 * (cond_n + cond_det))
}

/// The same quantity from side lengths alone: with control polygon legs
/// `(C-A)/(1-t)` and `(B-C)/t`, `ϱ² = 64Δ⁴ t²(1-t)² / q³` where
/// `q = (1-t)a² + t b² - t(1-t)c²`. Evaluated in double-double so finite
/// differences see a smooth function.
fn rho2_sides(tri: &Triangle, t: f64) -> f64 {
    let [a, b, c] = tri_points(tri);
    let diff = |p: P, q: P| {
        [
            D::from(p[0]).sub(D::from(q[0])),
            D::from(p[1]).sub(D::from(q[1])),
        ]
    };
    let sq = |v: [D; 2]| v[0].mul(v[0]).add(v[1].mul(v[1]));
    let (ab, ac, bc) = (diff(b, a), diff(c, a), diff(c, b));
    let (la2, lb2, lc2) = (sq(bc), sq(ac), sq(ab));
    let area2 = ab[0].mul(ac[1]).sub(ab[1].mul(ac[0]));
    let t = D::from(t);
    let u = D::from(1.0).sub(t);
    let q = u.mul(la2).add(t.mul(lb2)).sub(t.mul(u).mul(lc2));
    let (area2, q, s) = (area2.val(), q.val(), t.mul(u).val());
    4.0 * area2.powi(4) * s * s / q.powi(3)
}

/// Relative rounding sensitivity of [`rho2_sides`]: `q` enters cubed and the
/// area (a cancelling cross product) to the fourth power.
fn rho2_condition(tri: &Triangle, t: f64) -> f64 {
    let [a, b, c] = tri_points(tri);
    let (la, lb, lc) = (dist(b, c), dist(c, a), dist(a, b));
    let terms = [(1.0 - t) * la * la, t * lb * lb, -t * (1.0 - t) * lc * lc];
    let cond_q = terms.iter().map(|x| x.abs()).sum::<f64>() / terms.iter().sum::<f64>().abs();
    let cond_area = lb * lc / cross(sub(b, a), sub(c, a)).abs();
    3.0 * cond_q + 4.0 * cond_area
}

proptest! {

    #[test]
    fn focus_on_circumcircle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let tri = random_triangle(&mut r);
        let t = random_parameter(&mut r, -10.0, 10.0);
        let ex = Exparabola::new(&tri, t).unwrap();
        let [a, b, c] = tri_points(&tri);
        let o = circumcenter(a, b, c);
        let rad = dist(o, a);
        let f = p(ex.focus());
        prop_assert!((dist(f, o) - rad).abs() < 1e-10 * rad, "t={t} off by {}", (dist(f, o) - rad).abs() / rad);
    }

    #[test]
    fn tangency_is_double_contact(seed in any::<u64>()) {
        let mut r = rng(seed);
        let tri = random_triangle(&mut r);
        let t = random_parameter(&mut r, -10.0, 10.0);
        let ex = Exparabola::new(&tri, t).unwrap();
        let [a, b, _] = tri_points(&tri);
        let n = [-(b[1] - a[1]), b[0] - a[0]];
        let cp = [p(ex.curve.p0), p(ex.curve.p1), p(ex.curve.p2)];
        let g: Vec<f64> = cp.iter().map(|q| dot(n, sub(*q, a))).collect();
        let disc = g[1] * g[1] - g[0] * g[2];
        // relative to the magnitude of the inputs, |n| times the largest
        // point involved, since the g's themselves may cancel
        let size = cp.iter().chain([&a]).map(|q| norm(*q)).fold(0.0, f64::max);
        let scale_ = norm(n) * size;
        prop_assert!(disc.abs() < 1e-10 * scale_ * scale_, "relative disc {}", disc / (scale_ * scale_));
        // the contact point is reached at u = t
        let c1 = p(ex.tangency_on_ab());
        prop_assert!(dist(bezier(cp, t), c1) < 1e-9 * (1.0 + norm(c1)));
        prop_assert!(cross(sub(b, a), sub(c1, a)).abs() < 1e-12 * (1.0 + dot(c1, c1)));
    }

    #[test]
    fn ceva_and_steiner(t in -10.0f64..10.0) {
        prop_assume!(t.abs() > 1e-3 && (t - 1.0).abs() > 1e-3);
        let tp = exparabolas::tangency_points(t).unwrap();
        // ratios BA0/A0C · CB2/B2A · AC1/C1B from the barycentric weights
        let ratio = |h: Homogeneous3, from: usize, to: usize| {
            let w = h.as_array();
            w[to] / w[from]
        };
        let prod = ratio(tp.on_bc, 1, 2) * ratio(tp.on_ca, 2, 0) * ratio(tp.on_ab, 0, 1);
        prop_assert!((prod - 1.0).abs() < 1e-12 * (1.0 + t.abs()).powi(3), "product {prod}");
        let cp = exparabolas::cevian_point(t).unwrap();
        prop_assert!(steiner_residual(cp).unwrap() < 1e-12);
    }

    #[test]
    fn opposite_vertex_matches_segment_membership(t in -10.0f64..10.0) {
        prop_assume!(t.abs() > 1e-9 && (t - 1.0).abs() > 1e-9);
        let w = exparabolas::tangency_points(t).unwrap();
        let inside = |h: Homogeneous3| {
            let s = h.sum();
            h.as_array().iter().all(|x| x / s >= 0.0)
        };
        let expected = if inside(w.on_ab) {
            Vertex::C
        } else if inside(w.on_bc) {
            Vertex::A
        } else {
            prop_assert!(inside(w.on_ca));
            Vertex::B
        };
        prop_assert_eq!(exparabolas::opposite_vertex(t).unwrap(), expected);
    }

    #[test]
    fn max_roots_interlace_and_are_stationary_maxima(seed in any::<u64>()) {
        let tri = random_triangle(&mut rng(seed));
        let roots = max_exparabola_roots(&tri).unwrap();
        let [t0, t1, t2] = roots;
        prop_assert!(t0 < 0.0 && 0.0 < t1 && t1 < 1.0 && 1.0 < t2);
        for t in roots {
            let s = 1.0 + t.abs();
            let r0 = rho2_sides(&tri, t);
            let step = 1e-4 * s;
            let (up, down) = (rho2_sides(&tri, t + step), rho2_sides(&tri, t - step));
            prop_assert!(up < r0 && down < r0);
            // local scale: the peak width sqrt(ϱ² / |ϱ²''|), refined until the
            // second difference resolves it
            let mut k = step;
            let mut width = s;
            for _ in 0..4 {
                let curv = (2.0 * r0 - rho2_sides(&tri, t + k) - rho2_sides(&tri, t - k)) / (k * k);
                width = (r0 / curv).sqrt().min(s);
                if k <= 0.1 * width {
                    break;
                }
                k = 0.1 * width;
            }
            let h = (1e-6 * s).min(1e-2 * width);
            let d = (rho2_sides(&tri, t + h) - rho2_sides(&tri, t - h)) / (2.0 * h);
            prop_assert!((d * width / r0).abs() < 1e-6, "t={t} slope {}", d * width / r0);
            let lib = Exparabola::new(&tri, t).unwrap().squared_parameter();
            let cond = rho2_condition(&tri, t);
            prop_assert!((lib - r0).abs() < 1e-14 * cond * r0, "library {lib} vs {r0}, cond {cond}");
            let (k, err) = rho2(&tri, t);
            prop_assert!((k - r0).abs() < (err + 1e-14 * cond) * r0, "curvature {k} vs {r0}");
        }
    }

    #[test]
    fn cyclic_cubics_and_sign_pattern(seed in any::<u64>()) {
        let tri = random_triangle(&mut rng(seed));
        let (a2, b2, _) = tri.side_lengths().squared();
        let e = max_cubic_half(&tri);
        prop_assert_eq!(e.eval(0.0), a2);
        prop_assert!((e.eval(1.0) + b2).abs() <= 4.0 * f64::EPSILON * e.max_abs());
        let ec = max_cubic_coeffs(&tri, Side::C).as_array();
        for (x, y) in ec.iter().zip(e.as_array()) {
            prop_assert_eq!(*x, 2.0 * y);
        }
        // relabelling the vertices B, C, A turns e_a into e_c of the new triangle
        let [a, b, c] = tri.vertices();
        let rot = Triangle::new(b, c, a).unwrap();
        let ea = max_cubic_coeffs(&tri, Side::A).as_array();
        let ec_rot = max_cubic_coeffs(&rot, Side::C).as_array();
        for (x, y) in ea.iter().zip(ec_rot) {
            prop_assert!((x - y).abs() < 1e-12 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn centroid_axis_cubic_has_max_roots(seed in any::<u64>()) {
        let tri = random_triangle(&mut rng(seed));
        let f = axis_cubic_coeffs(&tri, Homogeneous3::new(1.0, 1.0, 1.0)).unwrap();
        let roots = solve_cubic(f).unwrap();
        prop_assert_eq!(roots.kind, RootKind::ThreeReal);
        let m = max_exparabola_roots(&tri).unwrap();
        for (x, y) in roots.reals.iter().zip(m) {
            prop_assert!((x - y).abs() < 1e-10 * y.abs().max(1e-300), "{x} vs {y}");
        }
    }

    #[test]
    fn solver_residuals_and_vieta(k in prop::array::uniform4(-10.0f64..10.0)) {
        prop_assume!(k[0].abs() > 1e-3);
        let c = CubicCoeffs::new(k[0], k[1], k[2], k[3]);
        let roots = solve_cubic(c).unwrap();
        let z = roots.all_complex();
        prop_assert_eq!(z.len(), 3);
        for r in &z {
            let scale_ = c.residual_scale(r.re).max(c.residual_scale(r.norm()));
            prop_assert!(c.eval_complex(*r).norm() < 1e-9 * scale_, "root {r} residual {}", c.eval_complex(*r).norm());
        }
        let s1 = z[0] + z[1] + z[2];
        let s2 = z[0] * z[1] + z[1] * z[2] + z[2] * z[0];
        let s3 = z[0] * z[1] * z[2];
        let mag = z.iter().map(|r| r.norm()).fold(1.0, f64::max);
        // Vieta: e1 = -k2/k3, e2 = k1/k3, e3 = -k0/k3
        prop_assert!((s1.re + k[1] / k[0]).abs() + s1.im.abs() < 1e-8 * mag);
        prop_assert!((s2.re - k[2] / k[0]).abs() + s2.im.abs() < 1e-8 * mag * mag);
        prop_assert!((s3.re + k[3] / k[0]).abs() + s3.im.abs() < 1e-8 * mag * mag * mag);
        prop_assert!(roots.reals.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn steiner_grid_over_random_triangles() {
    let mut r = rng(17);
    for _ in 0..100 {
        let tri = random_triangle(&mut r);
        for i in 0..=400 {
            let t = -10.0 + 0.05 * i as f64 + 0.0125;
            let ex = Exparabola::new(&tri, t).unwrap();
            let h = ex.cevian_point();
            assert!(steiner_residual(h).unwrap() < 1e-12);
            // and in Cartesian terms: the cevians through the tangency points meet there
            let q = p(tri.bary_to_cartesian(h).unwrap());
            let tp = ex.tangency_points();
            let [a, b, c] = tri_points(&tri);
            for (v, h) in [(a, tp.on_bc), (b, tp.on_ca), (c, tp.on_ab)] {
                let foot = p(tri.bary_to_cartesian(h).unwrap());
                let len = dist(v, foot).max(dist(v, q));
                assert!(
                    line_distance(v, sub(foot, v), q) < 1e-9 * len.max(1.0),
                    "t={t}"
                );
            }
        }
    }
}
