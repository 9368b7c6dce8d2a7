//! Random inputs for property checks and the verification harness.

use rand::Rng;

use crate::geometry::{Homogeneous3, Point2, Triangle};

/// Largest accepted longest/shortest side ratio.
pub const MAX_ASPECT: f64 = 50.0;

/// Parameters closer than this to 0 or 1 are resampled.
pub const PARAM_MARGIN: f64 = 1e-2;

/// Three uniform points in the unit square, resampled until the triangle
/// is non-degenerate with aspect ratio at most [`MAX_ASPECT`].
pub fn random_triangle<R: Rng + ?Sized>(rng: &mut R) -> Triangle {
    loop {
        let mut p = || Point2::new(rng.random::<f64>(), rng.random::<f64>());
        let (a, b, c) = (p(), p(), p());
        if let Ok(tri) = Triangle::new(a, b, c) {
            let s = tri.side_lengths();
            if s.longest() <= MAX_ASPECT * s.shortest() {
                return tri;
            }
        }
    }
}

/// Normalized point strictly inside the anticomplementary triangle.
///
/// Drawn uniformly over the anticomplementary triangle, then pulled toward
/// the centroid by `shrink` (in `(0, 1]`) so the axis cubic stays away
/// from coincident roots.
pub fn random_admissible_point<R: Rng + ?Sized>(rng: &mut R, shrink: f64) -> Homogeneous3 {
    let (r1, r2): (f64, f64) = (rng.random(), rng.random());
    let (s, t) = if r1 + r2 > 1.0 {
        (1.0 - r1, 1.0 - r2)
    } else {
        (r1, r2)
    };
    let w = [s, t, 1.0 - s - t];
    // anticomplementary vertices (-1,1,1), (1,-1,1), (1,1,-1)
    let x = [w[1] + w[2] - w[0], w[0] + w[2] - w[1], w[0] + w[1] - w[2]];
    let c = 1.0 / 3.0;
    Homogeneous3::new(
        c + shrink * (x[0] - c),
        c + shrink * (x[1] - c),
        c + shrink * (x[2] - c),
    )
}

/// Uniform in `[lo, hi]`, avoiding `PARAM_MARGIN`-neighbourhoods of 0 and 1.
pub fn random_parameter<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    loop {
        let t = rng.random_range(lo..=hi);
        if t.abs() > PARAM_MARGIN && (t - 1.0).abs() > PARAM_MARGIN {
            return t;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::admissible;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_meet_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let tri = random_triangle(&mut rng);
            let s = tri.side_lengths();
            assert!(s.longest() / s.shortest() <= MAX_ASPECT);
            let x = random_admissible_point(&mut rng, 0.95);
            assert!((x.sum() - 1.0).abs() < 1e-12);
            assert!(admissible(x));
            let t = random_parameter(&mut rng, -10.0, 10.0);
            assert!(t.abs() > PARAM_MARGIN && (t - 1.0).abs() > PARAM_MARGIN);
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let a = random_triangle(&mut ChaCha8Rng::seed_from_u64(11));
        let b = random_triangle(&mut ChaCha8Rng::seed_from_u64(11));
        assert_eq!(a, b);
    }
}
