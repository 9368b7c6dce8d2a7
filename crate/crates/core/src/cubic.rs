//! Real cubic solving, and the cubics whose roots pick out max-exparabolas
//! and exparabolas with axes through a given point.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::dd::{Dd, Scalar};
use crate::error::{GeometryError, Result};
use crate::geometry::{Homogeneous3, Triangle};

/// `k3 t³ + k2 t² + k1 t + k0`
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicCoeffs {
    pub k3: f64,
    pub k2: f64,
    pub k1: f64,
    pub k0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootKind {
    ThreeReal,
    OneRealComplexPair,
    /// Leading coefficient vanished; roots are those of the remaining
    /// quadratic (or linear) polynomial.
    Reduced,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CubicRoots {
    pub kind: RootKind,
    /// Real roots, ascending.
    pub reals: Vec<f64>,
    /// `(re, im)` with `im > 0`; the conjugate is implied.
    pub complex_pair: Option<(f64, f64)>,
    /// Discriminant within tolerance of zero (near-multiple roots).
    pub clustered: bool,
}

/// Relative size of `k3` below which the cubic is treated as a quadratic.
pub const LEADING_TOL: f64 = 1e-14;

/// Relative discriminant magnitude flagged as clustered.
pub const CLUSTER_TOL: f64 = 1e-12;

impl CubicCoeffs {
    pub const fn new(k3: f64, k2: f64, k1: f64, k0: f64) -> Self {
        CubicCoeffs { k3, k2, k1, k0 }
    }

    pub fn eval(&self, t: f64) -> f64 {
        ((self.k3 * t + self.k2) * t + self.k1) * t + self.k0
    }

    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        ((self.k3 * t + self.k2) * t + self.k1) * t + self.k0
    }

    pub fn derivative(&self, t: f64) -> f64 {
        (3.0 * self.k3 * t + 2.0 * self.k2) * t + self.k1
    }

    pub fn max_abs(&self) -> f64 {
        self.k3
            .abs()
            .max(self.k2.abs())
            .max(self.k1.abs())
            .max(self.k0.abs())
    }

    pub fn scaled(&self, s: f64) -> CubicCoeffs {
        CubicCoeffs::new(self.k3 * s, self.k2 * s, self.k1 * s, self.k0 * s)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.k3, self.k2, self.k1, self.k0]
    }

    /// Scale-aware residual bound used throughout:
    /// `max|kᵢ| · max(1, |t|)³`.
    pub fn residual_scale(&self, t: f64) -> f64 {
        self.max_abs() * t.abs().max(1.0).powi(3)
    }
}

impl CubicRoots {
    /// All roots as complex numbers: reals first, then the pair `(z, z̄)`.
    pub fn all_complex(&self) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = self.reals.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        if let Some((re, im)) = self.complex_pair {
            out.push(Complex64::new(re, im));
            out.push(Complex64::new(re, -im));
        }
        out
    }

    pub fn is_three_real(&self) -> bool {
        self.kind == RootKind::ThreeReal
    }
}

/// Solves a real cubic. Monic normalization, depression, then the
/// trigonometric method (three real roots) or Cardano's formula (one real
/// root), followed by two Newton steps on the original coefficients.
pub fn solve_cubic(c: CubicCoeffs) -> Result<CubicRoots> {
    if !c.as_array().iter().all(|k| k.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    let scale = c.max_abs();
    if scale == 0.0 {
        return Err(GeometryError::Numerical("zero polynomial".into()));
    }
    if c.k3.abs() <= LEADING_TOL * scale {
        return Ok(solve_reduced(c));
    }

    let (b, cc, d) = (c.k2 / c.k3, c.k1 / c.k3, c.k0 / c.k3);
    let shift = -b / 3.0;
    // t = s + shift:  s³ + p s + q = 0
    let p = cc - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + d;

    // 4p³ + 27q² < 0 ⇔ three distinct real roots
    let disc = 4.0 * p * p * p + 27.0 * q * q;
    let disc_scale = 4.0 * (p * p * p).abs() + 27.0 * q * q;
    let clustered = disc.abs() <= CLUSTER_TOL * disc_scale;

    let mut roots = if disc < 0.0 || clustered {
        let mut reals = if p < 0.0 {
            let m = 2.0 * (-p / 3.0).sqrt();
            let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
            let theta = arg.acos() / 3.0;
            let mut r: Vec<f64> = (0..3)
                .map(|k| m * (theta - 2.0 * PI * k as f64 / 3.0).cos() + shift)
                .collect();
            r.iter_mut().for_each(|t| *t = polish(&c, *t));
            r
        } else {
            // p ≈ 0 and q ≈ 0: triple root
            let t = (-q).cbrt() + shift;
            vec![t; 3]
        };
        reals.sort_by(f64::total_cmp);
        CubicRoots {
            kind: RootKind::ThreeReal,
            reals,
            complex_pair: None,
            clustered,
        }
    } else {
        let sq = (q * q / 4.0 + p * p * p / 27.0).sqrt();
        let big = -(q.signum()) * (q.abs() / 2.0 + sq).cbrt();
        let small = if big == 0.0 { 0.0 } else { -p / (3.0 * big) };
        let real = polish(&c, big + small + shift);
        let pair = polish_complex(
            &c,
            Complex64::new(
                -(big + small) / 2.0 + shift,
                (3f64.sqrt() / 2.0) * (big - small).abs(),
            ),
        );
        CubicRoots {
            kind: RootKind::OneRealComplexPair,
            reals: vec![real],
            complex_pair: Some((pair.re, pair.im.abs())),
            clustered,
        }
    };
    if roots.reals.iter().any(|r| !r.is_finite()) {
        return Err(GeometryError::Numerical("non-finite cubic root".into()));
    }
    roots.reals.sort_by(f64::total_cmp);
    Ok(roots)
}

fn solve_reduced(c: CubicCoeffs) -> CubicRoots {
    let (a, b, k) = (c.k2, c.k1, c.k0);
    let scale = c.max_abs();
    if a.abs() <= LEADING_TOL * scale {
        let reals = if b != 0.0 { vec![-k / b] } else { vec![] };
        return CubicRoots {
            kind: RootKind::Reduced,
            reals,
            complex_pair: None,
            clustered: false,
        };
    }
    let disc = b * b - 4.0 * a * k;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        let q = -0.5 * (b + b.signum() * sq);
        let mut reals = if q == 0.0 {
            vec![0.0, 0.0]
        } else {
            vec![q / a, k / q]
        };
        reals.sort_by(f64::total_cmp);
        CubicRoots {
            kind: RootKind::Reduced,
            reals,
            complex_pair: None,
            clustered: disc <= CLUSTER_TOL * b * b,
        }
    } else {
        CubicRoots {
            kind: RootKind::Reduced,
            reals: vec![],
            complex_pair: Some((-b / (2.0 * a), (-disc).sqrt() / (2.0 * a.abs()))),
            clustered: false,
        }
    }
}

/// Two Newton steps, each kept only if it lowers the residual.
fn polish(c: &CubicCoeffs, mut t: f64) -> f64 {
    for _ in 0..2 {
        let f = c.eval(t);
        let df = c.derivative(t);
        if df == 0.0 || f == 0.0 {
            break;
        }
        let next = t - f / df;
        if next.is_finite() && c.eval(next).abs() < f.abs() {
            t = next;
        }
    }
    t
}

fn polish_complex(c: &CubicCoeffs, mut z: Complex64) -> Complex64 {
    for _ in 0..2 {
        let f = c.eval_complex(z);
        let df = (3.0 * c.k3 * z + 2.0 * c.k2) * z + c.k1;
        if df.norm() == 0.0 || f.norm() == 0.0 {
            break;
        }
        let next = z - f / df;
        if next.re.is_finite() && next.im.is_finite() && c.eval_complex(next).norm() < f.norm() {
            z = next;
        }
    }
    z
}

/// Which of the three cyclic max-exparabola cubics to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
    C,
}

/// Coefficients of `e_a`, `e_b` or `e_c`. Each is obtained from the next by
/// cyclically permuting `(a, b, c)`.
pub fn max_cubic_coeffs(tri: &Triangle, side: Side) -> CubicCoeffs {
    let (a2, b2, c2) = tri.side_lengths().squared();
    // e_c in terms of (a², b², c²); e_a, e_b by cycling.
    let e = |a2: f64, b2: f64, c2: f64| {
        CubicCoeffs::new(
            2.0 * c2,
            a2 - b2 - 3.0 * c2,
            -(3.0 * a2 + b2 - c2),
            2.0 * a2,
        )
    };
    match side {
        Side::C => e(a2, b2, c2),
        Side::A => e(b2, c2, a2),
        Side::B => e(c2, a2, b2),
    }
}

/// The cubic `e` with `e_c = 2e`, stated with halved coefficients.
pub fn max_cubic_half(tri: &Triangle) -> CubicCoeffs {
    let (a2, b2, c2) = tri.side_lengths().squared();
    CubicCoeffs::new(
        c2,
        0.5 * (a2 - b2 - 3.0 * c2),
        -0.5 * (3.0 * a2 + b2 - c2),
        a2,
    )
}

/// Coefficients of the cubic `f` whose roots are the tangency parameters of
/// the exparabolas with axes through `x`. `x` is normalized internally.
pub fn axis_cubic_coeffs(tri: &Triangle, x: Homogeneous3) -> Result<CubicCoeffs> {
    let n = x.normalized()?;
    let (x0, x1, x2) = (n.x0, n.x1, n.x2);
    let (a2, b2, c2) = tri.side_lengths().squared();
    Ok(CubicCoeffs::new(
        c2 * (x0 + x1),
        (a2 - b2) * x2 - (2.0 * x0 + x1) * c2,
        (c2 - b2) * x0 - (2.0 * x2 + x1) * a2,
        a2 * (x1 + x2),
    ))
}

/// Squared side lengths `a², b², c²` in double-double.
fn squared_sides_dd(tri: &Triangle) -> [Dd; 3] {
    let [a, b, c] = tri.vertices().map(|p| [Dd::new(p.x), Dd::new(p.y)]);
    let sq = |p: [Dd; 2], q: [Dd; 2]| {
        let (dx, dy) = (p[0] - q[0], p[1] - q[1]);
        dx * dx + dy * dy
    };
    [sq(c, b), sq(a, c), sq(b, a)]
}

/// Newton steps on double-double coefficients, kept only while they stay
/// close to the f64 root.
fn refine_dd(c: &[Dd; 4], t0: f64) -> f64 {
    let eval = |t: Dd| ((c[0] * t + c[1]) * t + c[2]) * t + c[3];
    let deriv = |t: Dd| (Dd::new(3.0) * c[0] * t + Dd::new(2.0) * c[1]) * t + c[2];
    let mut t = Dd::new(t0);
    for _ in 0..3 {
        let d = deriv(t);
        if d.hi == 0.0 {
            break;
        }
        t = t - eval(t) / d;
    }
    let r = t.to_f64();
    if r.is_finite() && (r - t0).abs() <= 1e-8 * (1.0 + t0.abs()) {
        r
    } else {
        t0
    }
}

fn refine_reals(mut roots: CubicRoots, c: &[Dd; 4]) -> CubicRoots {
    if !roots.clustered {
        roots.reals.iter_mut().for_each(|t| *t = refine_dd(c, *t));
        roots.reals.sort_by(f64::total_cmp);
    }
    roots
}

/// Roots of the axis cubic for `x`, with real roots refined against
/// coefficients formed in double-double from the vertex coordinates.
pub fn axis_cubic_roots(tri: &Triangle, x: Homogeneous3) -> Result<CubicRoots> {
    let roots = solve_cubic(axis_cubic_coeffs(tri, x)?)?;
    let n = x.normalized()?;
    let [x0, x1, x2] = n.as_array().map(Dd::new);
    let [a2, b2, c2] = squared_sides_dd(tri);
    let two = Dd::new(2.0);
    let c = [
        c2 * (x0 + x1),
        (a2 - b2) * x2 - (two * x0 + x1) * c2,
        (c2 - b2) * x0 - (two * x2 + x1) * a2,
        a2 * (x1 + x2),
    ];
    Ok(refine_reals(roots, &c))
}

/// Roots `t0 < 0 < t1 < 1 < t2` of `e_c`.
pub fn max_exparabola_roots(tri: &Triangle) -> Result<[f64; 3]> {
    let [a2, b2, c2] = squared_sides_dd(tri);
    let (two, three) = (Dd::new(2.0), Dd::new(3.0));
    let exact = [
        two * c2,
        a2 - b2 - three * c2,
        -(three * a2 + b2 - c2),
        two * a2,
    ];
    let roots = refine_reals(solve_cubic(max_cubic_coeffs(tri, Side::C))?, &exact);
    if roots.kind != RootKind::ThreeReal {
        return Err(GeometryError::Numerical(format!(
            "e_c has a complex root pair: {roots:?}"
        )));
    }
    let [t0, t1, t2] = [roots.reals[0], roots.reals[1], roots.reals[2]];
    if !(t0 < 0.0 && 0.0 < t1 && t1 < 1.0 && 1.0 < t2) {
        return Err(GeometryError::Numerical(format!(
            "root interlacing violated: ({t0}, {t1}, {t2})"
        )));
    }
    Ok([t0, t1, t2])
}
