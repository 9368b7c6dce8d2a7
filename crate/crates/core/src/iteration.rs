//! The sequence of iterated focal triangles.
//!
//! Each step replaces `AᵢBᵢCᵢ` by its `Gᵢ`-focal triangle. All triangles
//! share the circumcircle, and `Gᵢ` approaches the circumcenter by a factor
//! 1/3 per step, so `|Gᵢ - O|` drops below f64 resolution (relative to `R`)
//! after roughly 30 steps. The kernel therefore carries the sequence in
//! double-double arithmetic and reports offsets from the circumcenter that
//! keep their relative accuracy.

use std::f64::consts::PI;

use serde::Serialize;

use crate::cubic::{solve_cubic, CubicCoeffs, RootKind};
use crate::dd::{Dd, Scalar};
use crate::error::{GeometryError, Result};
use crate::geometry::{Homogeneous3, Point2, Triangle, Vec2};
use crate::parabola::focus_formula;

/// Default iteration cap of [`limit_hexagon`].
pub const DEFAULT_CAP: usize = 200;

/// Default convergence tolerance on the equilateral deviation.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Accumulated drift (relative to `R₀`) that aborts the iteration.
pub const DRIFT_GUARD: f64 = 1e-6;

/// Point with respect to which each focal triangle is taken.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum BasePoint {
    #[default]
    Centroid,
    /// Fixed barycentric coordinates relative to each triangle in turn.
    /// Experimental: no convergence is asserted.
    Barycentric(Homogeneous3),
}

impl BasePoint {
    fn weights(&self) -> Result<[f64; 3]> {
        match self {
            BasePoint::Centroid => Ok([1.0 / 3.0; 3]),
            BasePoint::Barycentric(h) => Ok(h.normalized()?.as_array()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FocalStep {
    pub index: usize,
    pub tri: Triangle,
    pub circumcenter: Point2,
    pub centroid: Point2,
    pub orthocenter: Point2,
    pub circumradius: f64,
    /// `(longest - shortest) / longest` side.
    pub equilateral_deviation: f64,
    /// `Gᵢ - O₀` evaluated before rounding to f64.
    pub centroid_offset: Vec2,
    /// `Hᵢ - O₀` evaluated before rounding to f64.
    pub orthocenter_offset: Vec2,
    /// `|Hᵢ - Xᵢ₋₁|` (zero for step 0).
    pub orthocenter_step_residual: f64,
}

type P<S> = [S; 2];

fn k<S: Scalar>(v: f64) -> S {
    S::from_f64(v)
}

fn sub<S: Scalar>(p: P<S>, q: P<S>) -> P<S> {
    [p[0] - q[0], p[1] - q[1]]
}

fn norm<S: Scalar>(v: P<S>) -> S {
    (v[0] * v[0] + v[1] * v[1]).sqrt()
}

fn to_point<S: Scalar>(p: P<S>) -> Point2 {
    Point2::new(p[0].to_f64(), p[1].to_f64())
}

fn to_vec<S: Scalar>(p: P<S>) -> Vec2 {
    let q = to_point(p);
    Vec2::new(q.x, q.y)
}

struct Centers<S> {
    centroid: P<S>,
    circumcenter: P<S>,
    orthocenter: P<S>,
    circumradius: S,
}

fn centers<S: Scalar>(t: &[P<S>; 3]) -> Centers<S> {
    let [a, b, c] = *t;
    let three = k::<S>(3.0);
    let centroid = [(a[0] + b[0] + c[0]) / three, (a[1] + b[1] + c[1]) / three];
    let (ab, ac, bc) = (sub(b, a), sub(c, a), sub(c, b));
    let cross = ab[0] * ac[1] - ab[1] * ac[0];
    let d = k::<S>(2.0) * cross;
    let nb = ab[0] * ab[0] + ab[1] * ab[1];
    let nc = ac[0] * ac[0] + ac[1] * ac[1];
    let o = [(ac[1] * nb - ab[1] * nc) / d, (ab[0] * nc - ac[0] * nb) / d];
    let circumcenter = [a[0] + o[0], a[1] + o[1]];
    // altitudes from A and B, unknown H - A
    let r2 = ab[0] * ac[0] + ab[1] * ac[1];
    let det = bc[0] * ac[1] - bc[1] * ac[0];
    let h = [-(r2 * bc[1]) / det, (bc[0] * r2) / det];
    Centers {
        centroid,
        circumcenter,
        orthocenter: [a[0] + h[0], a[1] + h[1]],
        circumradius: norm(o),
    }
}

fn squared_sides<S: Scalar>(t: &[P<S>; 3]) -> [S; 3] {
    let [a, b, c] = *t;
    let sq = |v: P<S>| v[0] * v[0] + v[1] * v[1];
    [sq(sub(c, b)), sq(sub(a, c)), sq(sub(b, a))]
}

fn deviation<S: Scalar>(t: &[P<S>; 3]) -> f64 {
    let s = squared_sides(t).map(|x| x.sqrt().to_f64());
    let hi = s[0].max(s[1]).max(s[2]);
    let lo = s[0].min(s[1]).min(s[2]);
    (hi - lo) / hi
}

/// One focal step: roots of the axis cubic (seeded in f64, refined by
/// Newton in `S`), then the focus of each Bézier exparabola.
fn focal_map<S: Scalar>(t: &[P<S>; 3], weights: [f64; 3]) -> Result<([P<S>; 3], P<S>)> {
    let [a2, b2, c2] = squared_sides(t);
    let [x0, x1, x2] = weights.map(k::<S>);
    let two = k::<S>(2.0);
    let coeffs = [
        c2 * (x0 + x1),
        (a2 - b2) * x2 - (two * x0 + x1) * c2,
        (c2 - b2) * x0 - (two * x2 + x1) * a2,
        a2 * (x1 + x2),
    ];
    let f64_coeffs = coeffs.map(|c| c.to_f64());
    let roots = solve_cubic(CubicCoeffs::new(
        f64_coeffs[0],
        f64_coeffs[1],
        f64_coeffs[2],
        f64_coeffs[3],
    ))?;
    if roots.kind != RootKind::ThreeReal {
        return Err(GeometryError::Numerical(
            "focal step produced non-real exparabolas".into(),
        ));
    }
    let eval = |t: S| ((coeffs[0] * t + coeffs[1]) * t + coeffs[2]) * t + coeffs[3];
    let deriv = |t: S| (k::<S>(3.0) * coeffs[0] * t + two * coeffs[1]) * t + coeffs[2];
    let refine = |t0: f64| {
        let mut t = k::<S>(t0);
        for _ in 0..3 {
            let d = deriv(t);
            if d == S::zero() {
                break;
            }
            t = t - eval(t) / d;
        }
        t
    };
    let r = [
        refine(roots.reals[0]),
        refine(roots.reals[1]),
        refine(roots.reals[2]),
    ];

    let [pa, pb, pc] = *t;
    let one = S::one();
    let focus = |s: S| {
        // control points (B2, C, A0), relative to C
        let p0 = [
            (pa[0] - s * pc[0]) / (one - s) - pc[0],
            (pa[1] - s * pc[1]) / (one - s) - pc[1],
        ];
        let p2 = [
            (pb[0] + (s - one) * pc[0]) / s - pc[0],
            (pb[1] + (s - one) * pc[1]) / s - pc[1],
        ];
        let [fx, fy] = focus_formula(p0, [S::zero(); 2], p2);
        [pc[0] + fx, pc[1] + fy]
    };
    // ascending roots belong to the exparabolas opposite B, C, A
    let next = [focus(r[2]), focus(r[0]), focus(r[1])];
    let x_point = [
        x0 * pa[0] + x1 * pb[0] + x2 * pc[0],
        x0 * pa[1] + x1 * pb[1] + x2 * pc[1],
    ];
    Ok((next, x_point))
}

/// Lazily generated focal sequence. Yields step 0 (the input) first.
pub struct FocalSequence {
    current: [P<Dd>; 3],
    base: BasePoint,
    weights: [f64; 3],
    o0: P<Dd>,
    r0: f64,
    index: usize,
    prev_x: Option<P<Dd>>,
    failed: bool,
}

impl FocalSequence {
    pub fn new(tri0: &Triangle, base: BasePoint) -> Result<Self> {
        let current = tri0.vertices().map(|p| [Dd::new(p.x), Dd::new(p.y)]);
        let c = centers(&current);
        Ok(FocalSequence {
            current,
            base,
            weights: base.weights()?,
            o0: c.circumcenter,
            r0: c.circumradius.to_f64(),
            index: 0,
            prev_x: None,
            failed: false,
        })
    }

    pub fn initial_circumradius(&self) -> f64 {
        self.r0
    }

    pub fn base(&self) -> BasePoint {
        self.base
    }

    fn make_step(&self) -> Result<FocalStep> {
        let c = centers(&self.current);
        let tri = Triangle::new(
            to_point(self.current[0]),
            to_point(self.current[1]),
            to_point(self.current[2]),
        )?;
        let orthocenter_step_residual = self
            .prev_x
            .map_or(0.0, |x| norm(sub(c.orthocenter, x)).to_f64());
        let step = FocalStep {
            index: self.index,
            tri,
            circumcenter: to_point(c.circumcenter),
            centroid: to_point(c.centroid),
            orthocenter: to_point(c.orthocenter),
            circumradius: c.circumradius.to_f64(),
            equilateral_deviation: deviation(&self.current),
            centroid_offset: to_vec(sub(c.centroid, self.o0)),
            orthocenter_offset: to_vec(sub(c.orthocenter, self.o0)),
            orthocenter_step_residual,
        };
        let drift = norm(sub(c.circumcenter, self.o0)).to_f64();
        let radius_drift = (step.circumradius - self.r0).abs();
        let residual = drift.max(radius_drift).max(orthocenter_step_residual);
        if residual.is_nan() || residual > DRIFT_GUARD * self.r0 {
            return Err(GeometryError::IterationDiverged {
                step: self.index,
                residual,
            });
        }
        Ok(step)
    }
}

impl Iterator for FocalSequence {
    type Item = Result<FocalStep>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let step = match self.make_step() {
            Ok(s) => s,
            Err(e) => {
                self.failed = true;
                return Some(Err(e));
            }
        };
        match focal_map(&self.current, self.weights) {
            Ok((next, x)) => {
                self.current = next;
                self.prev_x = Some(x);
                self.index += 1;
            }
            Err(e) => {
                self.failed = true;
                return Some(Err(e));
            }
        }
        Some(Ok(step))
    }
}

/// Steps `0..=n` of the centroid focal sequence.
pub fn iterate(tri0: &Triangle, n: usize) -> Result<Vec<FocalStep>> {
    iterate_with(tri0, n, BasePoint::Centroid)
}

pub fn iterate_with(tri0: &Triangle, n: usize, base: BasePoint) -> Result<Vec<FocalStep>> {
    FocalSequence::new(tri0, base)?.take(n + 1).collect()
}

/// `|Gⱼ - O| / |Gᵢ - O|` for consecutive steps.
pub fn contraction_ratio(step_i: &FocalStep, step_j: &FocalStep) -> Result<f64> {
    offset_ratio(step_i, step_j, |s| s.centroid_offset)
}

/// `|Hⱼ - O| / |Hᵢ - O|` for consecutive steps.
pub fn orthocenter_ratio(step_i: &FocalStep, step_j: &FocalStep) -> Result<f64> {
    offset_ratio(step_i, step_j, |s| s.orthocenter_offset)
}

fn offset_ratio(a: &FocalStep, b: &FocalStep, f: impl Fn(&FocalStep) -> Vec2) -> Result<f64> {
    if b.index != a.index + 1 {
        return Err(GeometryError::Numerical(format!(
            "steps {} and {} are not consecutive",
            a.index, b.index
        )));
    }
    let base = f(a).norm();
    if base <= 1e-12 * a.circumradius {
        return Err(GeometryError::AlreadyConverged);
    }
    Ok(f(b).norm() / base)
}

/// Six limit vertices, ordered by angle about the common circumcenter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hexagon {
    pub vertices: [Point2; 6],
    /// Index parity (0 even, 1 odd) of the step each vertex came from.
    pub parity: [u8; 6],
    pub center: Point2,
    pub radius: f64,
    /// Angle of the first vertex about `center`, in `[0, π/3)`.
    pub phase: f64,
    /// Number of steps generated before convergence.
    pub steps: usize,
    pub final_deviation: f64,
    /// Largest `|gap - π/3|` between consecutive vertices, radians.
    pub max_gap_error: f64,
    /// Largest `|‖v - O‖ - R₀|`.
    pub max_radius_error: f64,
}

pub fn limit_hexagon(tri0: &Triangle, tol: f64) -> Result<Hexagon> {
    limit_hexagon_with_cap(tri0, tol, DEFAULT_CAP)
}

/// Iterates until two consecutive steps are equilateral within `tol`.
pub fn limit_hexagon_with_cap(tri0: &Triangle, tol: f64, cap: usize) -> Result<Hexagon> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(GeometryError::Numerical(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let seq = FocalSequence::new(tri0, BasePoint::Centroid)?;
    let (center, radius) = (to_point(seq.o0), seq.r0);
    let mut prev: Option<FocalStep> = None;
    let mut last_dev = f64::INFINITY;
    for step in seq.take(cap) {
        let step = step?;
        last_dev = step.equilateral_deviation;
        if let Some(p) = prev {
            if p.equilateral_deviation < tol && step.equilateral_deviation < tol {
                return Ok(hexagon_from(&p, &step, center, radius));
            }
        }
        prev = Some(step);
    }
    Err(GeometryError::IterationCap {
        cap,
        deviation: last_dev,
    })
}

fn hexagon_from(a: &FocalStep, b: &FocalStep, center: Point2, radius: f64) -> Hexagon {
    let mut tagged: Vec<(f64, Point2, u8)> = Vec::with_capacity(6);
    for s in [a, b] {
        for v in s.tri.vertices() {
            let ang = (v - center).angle().rem_euclid(2.0 * PI);
            tagged.push((ang, v, (s.index % 2) as u8));
        }
    }
    tagged.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut max_gap_error: f64 = 0.0;
    for i in 0..6 {
        let gap = (tagged[(i + 1) % 6].0 - tagged[i].0).rem_euclid(2.0 * PI);
        max_gap_error = max_gap_error.max((gap - PI / 3.0).abs());
    }
    let max_radius_error = tagged
        .iter()
        .map(|(_, v, _)| (v.distance(center) - radius).abs())
        .fold(0.0, f64::max);
    Hexagon {
        vertices: std::array::from_fn(|i| tagged[i].1),
        parity: std::array::from_fn(|i| tagged[i].2),
        center,
        radius,
        phase: tagged[0].0.rem_euclid(PI / 3.0),
        steps: b.index + 1,
        final_deviation: a.equilateral_deviation.max(b.equilateral_deviation),
        max_gap_error,
        max_radius_error,
    }
}
