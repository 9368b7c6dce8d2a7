mod common;

use common::*;
use exparabolas::iteration::{limit_hexagon_with_cap, orthocenter_ratio, DEFAULT_CAP};
use exparabolas::sampling::{random_admissible_point, random_triangle};
use exparabolas::{
    contraction_ratio, iterate, iterate_with, limit_hexagon, BasePoint, Point2, Triangle,
};
use proptest::prelude::*;

fn hausdorff(s: &Triangle, t: &Triangle) -> f64 {
    let one_way = |a: &Triangle, b: &Triangle| {
        a.vertices()
            .iter()
            .map(|p| {
                b.vertices()
                    .iter()
                    .map(|q| p.distance(*q))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_way(s, t).max(one_way(t, s))
}

proptest! {
    #[test]
    fn circumcircle_is_shared_and_orthocenter_follows_centroid(seed in any::<u64>()) {
        let tri = random_triangle(&mut rng(seed));
        let steps = iterate(&tri, 50).unwrap();
        let [a, b, c] = tri_points(&tri);
        let o0 = circumcenter(a, b, c);
        let r0 = dist(o0, a);
        for w in steps.windows(2) {
            let [fa, fb, fc] = tri_points(&w[1].tri);
            let o = circumcenter(fa, fb, fc);
            prop_assert!(dist(o, o0) < 1e-9 * r0 && (dist(o, fa) - r0).abs() < 1e-9 * r0, "step {}", w[1].index);
            let h = orthocenter(fa, fb, fc);
            let [pa, pb, pc] = tri_points(&w[0].tri);
            let g = scale(add(add(pa, pb), pc), 1.0 / 3.0);
            prop_assert!(dist(h, g) < 1e-9 * r0, "step {}", w[1].index);
        }
    }

    #[test]
    fn centroid_distance_contracts_by_thirds(seed in any::<u64>()) {
        let tri = random_triangle(&mut rng(seed));
        let steps = iterate(&tri, 20).unwrap();
        let g0 = steps[0].centroid_offset.norm();
        let r0 = steps[0].circumradius;
        prop_assume!(g0 > 1e-6 * r0);
        for s in &steps {
            let want = g0 / 3f64.powi(s.index as i32);
            prop_assert!((s.centroid_offset.norm() - want).abs() < 1e-7 * want, "step {}", s.index);
        }
        for w in steps.windows(2) {
            let q = contraction_ratio(&w[0], &w[1]).unwrap();
            prop_assert!((q - 1.0 / 3.0).abs() < 1e-8);
            if w[0].index > 0 {
                let q = orthocenter_ratio(&w[0], &w[1]).unwrap();
                prop_assert!((q - 1.0 / 3.0).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn parity_subsequences_converge(seed in any::<u64>()) {
        let tri = random_triangle(&mut rng(seed));
        let steps = iterate(&tri, 40).unwrap();
        let r0 = steps[0].circumradius;
        let d: Vec<f64> = (0..=38).map(|i| hausdorff(&steps[i].tri, &steps[i + 2].tri)).collect();
        // geometric decay: each pair of steps shrinks the gap by a fixed factor
        for i in 0..20 {
            prop_assert!(d[i + 2] <= 0.2 * d[i] + 1e-12 * r0, "i={i}: {} -> {}", d[i], d[i + 2]);
        }
        prop_assert!(d[38] < 1e-12 * r0);
        prop_assert!(steps[40].equilateral_deviation < 1e-10);
    }

    #[test]
    fn limit_hexagon_is_regular(seed in any::<u64>()) {
        let tri = random_triangle(&mut rng(seed));
        let hex = limit_hexagon(&tri, 1e-9).unwrap();
        let [a, b, c] = tri_points(&tri);
        let o = circumcenter(a, b, c);
        let r0 = dist(o, a);
        let mut angles: Vec<f64> = hex.vertices.iter().map(|v| (v.y - o[1]).atan2(v.x - o[0])).collect();
        angles.sort_by(f64::total_cmp);
        for i in 0..6 {
            let v: Point2 = hex.vertices[i];
            prop_assert!((dist(p(v), o) - r0).abs() < 1e-8 * r0);
            let gap = (angles[(i + 1) % 6] - angles[i]).rem_euclid(std::f64::consts::TAU);
            prop_assert!((gap - std::f64::consts::FRAC_PI_3).abs() < 1e-8, "gap {gap}");
        }
        prop_assert!(hex.phase >= 0.0 && hex.phase < std::f64::consts::FRAC_PI_3);
        // alternate vertices come from alternate steps
        for i in 0..6 {
            prop_assert_ne!(hex.parity[i], hex.parity[(i + 1) % 6]);
        }
    }

    #[test]
    fn other_base_points_keep_the_circumcircle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let tri = random_triangle(&mut r);
        let x = random_admissible_point(&mut r, 0.5);
        let [a, b, c] = tri_points(&tri);
        let o0 = circumcenter(a, b, c);
        let r0 = dist(o0, a);
        // no convergence claim; only the shared circumcircle and H = previous X
        if let Ok(steps) = iterate_with(&tri, 5, BasePoint::Barycentric(x)) {
            for s in &steps {
                for v in s.tri.vertices() {
                    prop_assert!((dist(p(v), o0) - r0).abs() < 1e-9 * r0);
                }
                prop_assert!(s.orthocenter_step_residual < 1e-9 * r0);
            }
        }
    }
}

#[test]
fn cap_is_reported() {
    let tri = Triangle::new(
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(0.2, 0.5),
    )
    .unwrap();
    assert!(limit_hexagon_with_cap(&tri, 1e-9, 3).is_err());
    assert!(limit_hexagon_with_cap(&tri, 1e-9, DEFAULT_CAP).is_ok());
}
