//! Exparabolas with axes through a point `X`, their focal triangle, and the
//! orthocenter identity tying the two together.

use num_complex::Complex64;
use serde::Serialize;

use crate::cubic::{axis_cubic_roots, max_exparabola_roots, CubicRoots, RootKind};
use crate::error::{GeometryError, Result};
use crate::exparabola::{cevian_point, Exparabola, PARAM_TOL};
use crate::geometry::{admissible, CanonicalFrame, Homogeneous3, Point2, Triangle, Vec2, Vertex};
use crate::parabola::Line2;

/// Roots closer than this (relative to `max(1, |t|)`) count as coincident.
pub const COINCIDENCE_TOL: f64 = 1e-10;

/// A tangency parameter that may be complex when `X` is not admissible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Param {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Param {
    fn from(z: Complex64) -> Self {
        Param { re: z.re, im: z.im }
    }
}

impl From<Param> for Complex64 {
    fn from(p: Param) -> Self {
        Complex64::new(p.re, p.im)
    }
}

/// Focal triangle `F_A F_B F_C` of `ABC` with respect to `X`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FocalResult {
    /// `[F_A, F_B, F_C]`; real parts when the parameters are complex.
    pub foci: [Point2; 3],
    /// Tangency parameters feeding `F_A`, `F_B`, `F_C`.
    pub params: [Param; 3],
    pub roots: CubicRoots,
    pub all_real: bool,
    pub admissible: bool,
    pub x: Point2,
    pub orthocenter: Option<Point2>,
    /// `|orthocenter - X|`, length units.
    pub orthocenter_residual: f64,
    /// Largest norm of the imaginary part of a focus (0 when all real).
    pub max_imaginary: f64,
    /// Largest distance between the closed-form foci and the foci of the
    /// corresponding Bézier curves. `None` unless all parameters are real
    /// and valid.
    pub focus_cross_check: Option<f64>,
}

impl FocalResult {
    pub fn focus(&self, v: Vertex) -> Point2 {
        self.foci[v.index()]
    }

    pub fn triangle(&self) -> Result<Triangle> {
        Triangle::new(self.foci[0], self.foci[1], self.foci[2])
    }
}

/// Focus of the exparabola with parameter `t`, in the canonical frame
/// `A = (0, 0)`, `B = (c, 0)`, `C = (c1, c2)`:
///
/// `F = c t / D · (c1² + c2² - c c1 (1-t), -c c2 (1-t))`,
/// `D = c² (1-t)² - 2 c c1 (1-t) + c1² + c2²`.
///
/// Evaluated with `m = c1 - c (1-t)` as `D = m² + c2²` and first numerator
/// `c1 m + c2²`, which keeps flat triangles accurate.
pub fn canonical_focus(c: f64, c1: f64, c2: f64, t: Complex64) -> [Complex64; 2] {
    let s = 1.0 - t;
    let m = c1 - c * s;
    let d = m * m + c2 * c2;
    let k = c * t / d;
    [k * (c1 * m + c2 * c2), k * (-c * c2 * s)]
}

/// Axis direction `(c (t-1) + c1, c2)` in the canonical frame.
pub fn canonical_axis(c: f64, c1: f64, c2: f64, t: f64) -> Vec2 {
    Vec2::new(c * (t - 1.0) + c1, c2)
}

/// Focus of the exparabola `t` through the closed form, in world
/// coordinates.
pub fn closed_form_focus(tri: &Triangle, t: f64) -> Point2 {
    let frame = tri.canonical_frame();
    let [x, y] = canonical_focus(frame.c, frame.c1, frame.c2, Complex64::new(t, 0.0));
    frame.to_world(Point2::new(x.re, y.re))
}

fn complex_focus_world(frame: &CanonicalFrame, t: Complex64) -> (Point2, Vec2) {
    let [x, y] = canonical_focus(frame.c, frame.c1, frame.c2, t);
    (
        frame.to_world(Point2::new(x.re, y.re)),
        frame.vec_to_world(Vec2::new(x.im, y.im)),
    )
}

fn is_coincident(s: f64, t: f64) -> bool {
    (s - t).abs() <= COINCIDENCE_TOL * s.abs().max(t.abs()).max(1.0)
}

fn label_of(t: f64) -> Vertex {
    if t < 0.0 {
        Vertex::B
    } else if t < 1.0 {
        Vertex::C
    } else {
        Vertex::A
    }
}

/// Distributes the three roots over the labels `A`, `B`, `C`.
///
/// Real roots take the label of the vertex their exparabola is opposite to.
/// Three real roots that do not interlace with 0 and 1 are assigned in
/// ascending order to `B`, `C`, `A`. A complex pair takes the two labels
/// left by the real root, in `A, B, C` order, positive imaginary part first.
fn assign_labels(roots: &CubicRoots) -> Result<[Complex64; 3]> {
    let mut out = [Complex64::new(f64::NAN, 0.0); 3];
    match roots.kind {
        RootKind::ThreeReal => {
            let r = &roots.reals;
            if is_coincident(r[0], r[1]) || is_coincident(r[1], r[2]) {
                return Err(GeometryError::CoincidentRoots(r.clone()));
            }
            let labels = [label_of(r[0]), label_of(r[1]), label_of(r[2])];
            let distinct =
                labels[0] != labels[1] && labels[1] != labels[2] && labels[0] != labels[2];
            let labels = if distinct {
                labels
            } else {
                [Vertex::B, Vertex::C, Vertex::A]
            };
            for (t, v) in r.iter().zip(labels) {
                out[v.index()] = Complex64::new(*t, 0.0);
            }
        }
        RootKind::OneRealComplexPair => {
            let real = roots.reals[0];
            let (re, im) = roots.complex_pair.expect("pair present");
            if im <= COINCIDENCE_TOL * re.abs().max(1.0) {
                return Err(GeometryError::CoincidentRoots(vec![real, re, re]));
            }
            let lr = label_of(real);
            out[lr.index()] = Complex64::new(real, 0.0);
            let mut rest = Vertex::ALL.iter().filter(|v| **v != lr);
            out[rest.next().expect("two left").index()] = Complex64::new(re, im);
            out[rest.next().expect("one left").index()] = Complex64::new(re, -im);
        }
        RootKind::Reduced => {
            return Err(GeometryError::Numerical(
                "axis cubic lost its leading coefficient (x0 + x1 = 0)".into(),
            ))
        }
    }
    Ok(out)
}

/// The `X`-focal triangle of `tri`. Handles complex roots (non-admissible
/// `X`) by evaluating the focus formula in complex arithmetic and reporting
/// real parts together with the largest imaginary magnitude.
pub fn focal_triangle(tri: &Triangle, x: Homogeneous3) -> Result<FocalResult> {
    let xn = x.normalized()?;
    let x_cart = tri.bary_to_cartesian(xn)?;
    let roots = axis_cubic_roots(tri, xn)?;
    let params = assign_labels(&roots)?;
    let frame = tri.canonical_frame();

    let mut foci = [Point2::ORIGIN; 3];
    let mut max_imaginary: f64 = 0.0;
    for (slot, t) in foci.iter_mut().zip(params) {
        let (re, im) = complex_focus_world(&frame, t);
        *slot = re;
        max_imaginary = max_imaginary.max(im.norm());
    }
    let all_real = params.iter().all(|t| t.im == 0.0);

    let orthocenter = Triangle::new(foci[0], foci[1], foci[2])
        .and_then(|t| t.orthocenter())
        .ok();
    let orthocenter_residual = orthocenter.map_or(f64::INFINITY, |h| h.distance(x_cart));

    let focus_cross_check = if all_real {
        let mut worst: f64 = 0.0;
        let mut ok = true;
        for (f, t) in foci.iter().zip(params) {
            match Exparabola::new(tri, t.re) {
                Ok(p) => worst = worst.max(p.focus().distance(*f)),
                Err(_) => ok = false,
            }
        }
        ok.then_some(worst)
    } else {
        None
    };

    Ok(FocalResult {
        foci,
        params: params.map(Param::from),
        roots,
        all_real,
        admissible: admissible(xn),
        x: x_cart,
        orthocenter,
        orthocenter_residual,
        max_imaginary,
        focus_cross_check,
    })
}

/// The three exparabolas with axes through an admissible `X`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XExparabolas {
    /// Opposite to `A`, `B`, `C` respectively.
    pub parabolas: [Exparabola; 3],
    pub roots: CubicRoots,
    pub x: Point2,
    /// Signed distance of `X` from each axis.
    pub axis_residuals: [f64; 3],
}

pub fn x_exparabolas(tri: &Triangle, x: Homogeneous3) -> Result<XExparabolas> {
    if !admissible(x) {
        return Err(GeometryError::NotAdmissible(x.x0, x.x1, x.x2));
    }
    let xn = x.normalized()?;
    let x_cart = tri.bary_to_cartesian(xn)?;
    let roots = axis_cubic_roots(tri, xn)?;
    if roots.kind != RootKind::ThreeReal {
        return Err(GeometryError::Numerical(format!(
            "admissible point produced non-real roots: {roots:?}"
        )));
    }
    let params = assign_labels(&roots)?;
    let mk = |v: Vertex| Exparabola::new(tri, params[v.index()].re);
    let parabolas = [mk(Vertex::A)?, mk(Vertex::B)?, mk(Vertex::C)?];
    let axis_residuals = parabolas.map(|p| p.axis_incidence_residual(x_cart));
    Ok(XExparabolas {
        parabolas,
        roots,
        x: x_cart,
        axis_residuals,
    })
}

/// The three max-exparabolas, opposite to `A`, `B`, `C`.
pub fn max_exparabolas(tri: &Triangle) -> Result<[Exparabola; 3]> {
    let [t0, t1, t2] = max_exparabola_roots(tri)?;
    Ok([
        Exparabola::new(tri, t2)?,
        Exparabola::new(tri, t0)?,
        Exparabola::new(tri, t1)?,
    ])
}

fn check_triple(u: f64, v: f64, w: f64) -> Result<()> {
    for t in [u, v, w] {
        if !t.is_finite() || t.abs() <= PARAM_TOL || (t - 1.0).abs() <= PARAM_TOL {
            return Err(GeometryError::InvalidParameter { t });
        }
    }
    Ok(())
}

/// The symmetric polynomial `h(u, v, w)` whose vanishing makes each axis
/// perpendicular to the opposite side of the focal triangle, divided by
/// `a² c² L²` (`L` the longest side) so that it is scale-free.
pub fn h_invariant(tri: &Triangle, u: f64, v: f64, w: f64) -> Result<f64> {
    check_triple(u, v, w)?;
    let sides = tri.side_lengths();
    let (a2, b2, c2) = sides.squared();
    let e1 = u + v + w;
    let e2 = u * v + v * w + w * u;
    let e3 = u * v * w;
    let h = c2 * ((a2 + b2) * c2 - (a2 - b2) * (a2 - b2)) * e3 + a2 * c2 * (a2 - b2 - c2) * e2
        - a2 * c2 * (a2 + b2 - c2) * e1
        + a2 * ((b2 + c2) * a2 - (b2 - c2) * (b2 - c2));
    let l = sides.longest();
    Ok(h / (a2 * c2 * l * l))
}

/// Cosines of the angles between each axis and the line through the other
/// two foci, for the exparabolas `p_A = w`, `p_B = u`, `p_C = v`. All three
/// vanish together exactly when the axes are the focal triangle's
/// altitudes.
pub fn perpendicularity_check(tri: &Triangle, u: f64, v: f64, w: f64) -> Result<[f64; 3]> {
    check_triple(u, v, w)?;
    let f = tri.canonical_frame();
    let focus = |t: f64| {
        let [x, y] = canonical_focus(f.c, f.c1, f.c2, Complex64::new(t, 0.0));
        Point2::new(x.re, y.re)
    };
    let (fa, fb, fc) = (focus(w), focus(u), focus(v));
    let cos = |a: Vec2, d: Vec2| a.dot(d) / (a.norm() * d.norm());
    Ok([
        cos(canonical_axis(f.c, f.c1, f.c2, w), fb - fc),
        cos(canonical_axis(f.c, f.c1, f.c2, u), fc - fa),
        cos(canonical_axis(f.c, f.c1, f.c2, v), fa - fb),
    ])
}

/// Triangle of cevian points of the three max-exparabolas, inscribed in the
/// Steiner circumellipse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteinerTriangle {
    /// `X1` (root `t2`), `X2` (root `t0`), `X3` (root `t1`).
    pub points: [Point2; 3],
    pub barycentric: [Homogeneous3; 3],
    /// Largest distance between the returned point and the pairwise
    /// intersections of its three cevians.
    pub concurrency_residual: f64,
}

pub fn steiner_inscribed_triangle(tri: &Triangle) -> Result<SteinerTriangle> {
    let [t0, t1, t2] = max_exparabola_roots(tri)?;
    let [a, b, c] = tri.vertices();
    let mut points = [Point2::ORIGIN; 3];
    let mut barycentric = [Homogeneous3::new(0.0, 0.0, 0.0); 3];
    let mut worst: f64 = 0.0;
    for (i, t) in [t2, t0, t1].into_iter().enumerate() {
        let h = cevian_point(t)?;
        let p = tri.bary_to_cartesian(h)?;
        let tp = crate::exparabola::tangency_points(t)?;
        let la = Line2::through(a, tri.bary_to_cartesian(tp.on_bc)?)?;
        let lb = Line2::through(b, tri.bary_to_cartesian(tp.on_ca)?)?;
        let lc = Line2::through(c, tri.bary_to_cartesian(tp.on_ab)?)?;
        for (l1, l2) in [(&la, &lb), (&lb, &lc), (&lc, &la)] {
            let q = l1
                .intersect(l2)
                .ok_or_else(|| GeometryError::Numerical("parallel cevians".into()))?;
            worst = worst.max(q.distance(p));
        }
        points[i] = p;
        barycentric[i] = h;
    }
    Ok(SteinerTriangle {
        points,
        barycentric,
        concurrency_residual: worst,
    })
}

/// Distance of each axis from its focal-triangle vertex, and the cosine of
/// the angle between each axis and the opposite side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AltitudeResiduals {
    pub through_vertex: [f64; 3],
    pub perpendicular: [f64; 3],
}

pub fn altitude_residuals(parabolas: &[Exparabola; 3], foci: &[Point2; 3]) -> AltitudeResiduals {
    let mut out = AltitudeResiduals {
        through_vertex: [0.0; 3],
        perpendicular: [0.0; 3],
    };
    for i in 0..3 {
        let axis = parabolas[i].axis_line();
        let side = foci[(i + 2) % 3] - foci[(i + 1) % 3];
        out.through_vertex[i] = axis.distance(foci[i]);
        out.perpendicular[i] = axis.direction.dot(side) / (axis.direction.norm() * side.norm());
    }
    out
}

/// Largest distance of `points` from the line through `p` and `q`; when `p`
/// and `q` coincide, the largest distance from `p`.
pub fn collinearity_residual(p: Point2, q: Point2, points: &[Point2]) -> f64 {
    match Line2::through(p, q) {
        Ok(line) if p.distance(q) > 0.0 => {
            points.iter().map(|x| line.distance(*x)).fold(0.0, f64::max)
        }
        _ => points.iter().map(|x| x.distance(p)).fold(0.0, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::steiner_residual;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn equilateral() -> Triangle {
        Triangle::new(
            Point2::ORIGIN,
            Point2::new(1.0, 0.0),
            Point2::new(0.5, SQRT3 / 2.0),
        )
        .unwrap()
    }

    fn scalene() -> Triangle {
        Triangle::new(
            Point2::new(0.1, 0.2),
            Point2::new(1.7, -0.3),
            Point2::new(0.6, 1.4),
        )
        .unwrap()
    }

    const CENTROID: Homogeneous3 = Homogeneous3::new(1.0, 1.0, 1.0);

    #[test]
    fn equilateral_x_exparabolas() {
        let xe = x_exparabolas(&equilateral(), CENTROID).unwrap();
        let ts = xe.parabolas.map(|p| p.t);
        for (t, want) in ts.iter().zip([2.0, -1.0, 0.5]) {
            assert!((t - want).abs() < 1e-15);
        }
        let axis = xe.parabolas[2].axis_line();
        assert!(axis.direction.dx.abs() < 1e-15);
        assert!((axis.point.x - 0.5).abs() < 1e-15);
        for r in xe.axis_residuals {
            assert!(r.abs() < 1e-15);
        }
    }

    #[test]
    fn non_admissible_rejected_by_x_exparabolas() {
        let r = x_exparabolas(&scalene(), Homogeneous3::new(3.0, -1.0, -1.0));
        assert!(matches!(r, Err(GeometryError::NotAdmissible(..))));
    }

    #[test]
    fn equilateral_focal_triangle_is_rotated_copy() {
        let tri = equilateral();
        let fr = focal_triangle(&tri, CENTROID).unwrap();
        let center = Point2::new(0.5, SQRT3 / 6.0);
        let base = Point2::new(0.5, -SQRT3 / 6.0) - center;
        let expected: Vec<Point2> = (0..3)
            .map(|k| center + base.rotated(2.0 * std::f64::consts::PI * k as f64 / 3.0))
            .collect();
        for f in fr.foci {
            assert!(expected.iter().any(|e| e.distance(f) < 1e-15), "{f}");
        }
        // each vertex of ABC rotated by 60° about the center is a focus
        for v in tri.vertices() {
            let rot = center + (v - center).rotated(std::f64::consts::PI / 3.0);
            assert!(fr.foci.iter().any(|f| f.distance(rot) < 1e-15));
        }
        assert!(fr.orthocenter_residual < 1e-15);
        assert!(fr.all_real && fr.admissible);
    }

    #[test]
    fn focal_triangle_orthocenter_and_circumcircle() {
        let tri = scalene();
        let (o, r) = tri.circumcircle().unwrap();
        for x in [
            CENTROID,
            Homogeneous3::new(0.5, 0.3, 0.2),
            Homogeneous3::new(0.7, 0.6, -0.3),
        ] {
            let fr = focal_triangle(&tri, x).unwrap();
            assert!(fr.all_real);
            assert!(
                fr.orthocenter_residual < 1e-12 * r,
                "{}",
                fr.orthocenter_residual
            );
            for f in fr.foci {
                assert!((f.distance(o) - r).abs() < 1e-13 * r);
            }
            assert!(fr.focus_cross_check.unwrap() < 1e-13 * r);
        }
    }

    #[test]
    fn complex_regime_reports_imaginary_parts() {
        let fr = focal_triangle(&scalene(), Homogeneous3::new(3.0, -1.0, -1.0)).unwrap();
        assert!(!fr.admissible);
        assert_eq!(fr.roots.kind, RootKind::OneRealComplexPair);
        assert!(!fr.all_real);
        assert!(fr.max_imaginary.is_finite());
        assert!(fr.focus_cross_check.is_none());
    }

    #[test]
    fn h_invariant_examples() {
        let tri = scalene();
        let roots = axis_cubic_roots(&tri, Homogeneous3::new(0.5, 0.3, 0.2)).unwrap();
        let [u, v, w] = [roots.reals[0], roots.reals[1], roots.reals[2]];
        assert!(h_invariant(&tri, u, v, w).unwrap().abs() < 1e-13);
        assert!(h_invariant(&tri, 0.5, 2.0, -1.0).unwrap().abs() > 1e-3);
        assert!(h_invariant(&tri, 0.0, 2.0, -1.0).is_err());
    }

    #[test]
    fn perpendicularity_examples() {
        let r = perpendicularity_check(&equilateral(), -1.0, 0.5, 2.0).unwrap();
        for x in r {
            assert!(x.abs() < 1e-12);
        }
        let r = perpendicularity_check(&scalene(), 0.5, 2.0, -1.0).unwrap();
        for x in r {
            assert!(x.abs() > 1e-6);
        }
    }

    #[test]
    fn steiner_triangle_equilateral() {
        let tri = equilateral();
        let st = steiner_inscribed_triangle(&tri).unwrap();
        let x3 = tri
            .bary_to_cartesian(Homogeneous3::new(-2.0, -2.0, 1.0))
            .unwrap();
        assert!(st.points[2].distance(x3) < 1e-14);
        assert!(st.concurrency_residual < 1e-12);
        for h in st.barycentric {
            assert!(steiner_residual(h).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn collinearity_residual_handles_coincident_anchor() {
        let p = Point2::new(1.0, 1.0);
        assert_eq!(collinearity_residual(p, p, &[p]), 0.0);
        let r = collinearity_residual(
            Point2::ORIGIN,
            Point2::new(1.0, 0.0),
            &[Point2::new(3.0, 0.5)],
        );
        assert!((r - 0.5).abs() < 1e-15);
    }
}
