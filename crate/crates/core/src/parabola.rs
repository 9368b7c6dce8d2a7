//! Metric data of parabolas given as quadratic Bézier curves
//! `P(u) = (1-u)² P0 + 2(1-u)u P1 + u² P2`.

use num_complex::Complex64;
use serde::Serialize;

use crate::dd::Scalar;
use crate::error::{GeometryError, Result};
use crate::geometry::{Point2, Vec2};

/// Control nets with `|det(P1-P0, P2-P0)| <= DEGENERACY_TOL * diameter²` are
/// treated as collinear.
pub const DEGENERACY_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BezierParabola {
    pub p0: Point2,
    pub p1: Point2,
    pub p2: Point2,
}

/// Line through `point` with nonzero `direction`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line2 {
    pub point: Point2,
    pub direction: Vec2,
}

impl Line2 {
    pub fn new(point: Point2, direction: Vec2) -> Result<Self> {
        if direction.norm() == 0.0 || !direction.is_finite() {
            return Err(GeometryError::Numerical(
                "line direction must be nonzero".into(),
            ));
        }
        Ok(Line2 { point, direction })
    }

    pub fn through(p: Point2, q: Point2) -> Result<Self> {
        Line2::new(p, q - p)
    }

    /// Signed perpendicular distance, positive to the left of `direction`.
    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.direction.cross(p - self.point) / self.direction.norm()
    }

    pub fn distance(&self, p: Point2) -> f64 {
        self.signed_distance(p).abs()
    }

    /// Intersection point, `None` for parallel lines.
    pub fn intersect(&self, other: &Line2) -> Option<Point2> {
        let den = self.direction.cross(other.direction);
        let scale = self.direction.norm() * other.direction.norm();
        if den.abs() <= 1e-15 * scale {
            return None;
        }
        let s = (other.point - self.point).cross(other.direction) / den;
        Some(self.point + self.direction * s)
    }
}

/// Intermediate points of de Casteljau's algorithm at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeCasteljau {
    pub left: Point2,
    pub right: Point2,
    pub point: Point2,
}

impl BezierParabola {
    pub fn new(p0: Point2, p1: Point2, p2: Point2) -> Result<Self> {
        if !(p0.is_finite() && p1.is_finite() && p2.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let p = BezierParabola { p0, p1, p2 };
        let diam = p0.distance(p1).max(p1.distance(p2)).max(p0.distance(p2));
        if p.collinearity().abs() <= DEGENERACY_TOL * diam * diam {
            return Err(GeometryError::DegenerateParabola);
        }
        Ok(p)
    }

    /// `x0y1 - x0y2 - x1y0 + x1y2 + x2y0 - x2y1`, i.e. `det(P1-P0, P2-P0)`.
    pub fn collinearity(&self) -> f64 {
        (self.p1 - self.p0).cross(self.p2 - self.p0)
    }

    pub fn eval(&self, u: f64) -> Point2 {
        let v = 1.0 - u;
        let (w0, w1, w2) = (v * v, 2.0 * v * u, u * u);
        Point2::new(
            w0 * self.p0.x + w1 * self.p1.x + w2 * self.p2.x,
            w0 * self.p0.y + w1 * self.p1.y + w2 * self.p2.y,
        )
    }

    pub fn de_casteljau(&self, u: f64) -> DeCasteljau {
        let left = self.p0.lerp(self.p1, u);
        let right = self.p1.lerp(self.p2, u);
        DeCasteljau {
            left,
            right,
            point: left.lerp(right, u),
        }
    }

    /// `P'(u) = 2(P0 - 2P1 + P2) u + 2(P1 - P0)`
    pub fn derivative(&self, u: f64) -> Vec2 {
        self.second_difference() * (2.0 * u) + (self.p1 - self.p0) * 2.0
    }

    /// `P''(u) = 2(P0 - 2P1 + P2)`
    pub fn second_derivative(&self) -> Vec2 {
        self.second_difference() * 2.0
    }

    fn second_difference(&self) -> Vec2 {
        (self.p0 - self.p1) + (self.p2 - self.p1)
    }

    /// Leading coefficient of `P(u)`; points from the vertex into the
    /// parabola's interior.
    pub fn axis_direction(&self) -> Result<Vec2> {
        let a = self.second_difference();
        if a.norm() == 0.0 {
            return Err(GeometryError::DegenerateParabola);
        }
        Ok(a)
    }

    pub fn vertex_param(&self) -> Result<f64> {
        let a = self.axis_direction()?;
        Ok(-a.dot(self.p1 - self.p0) / a.norm_squared())
    }

    pub fn vertex(&self) -> Result<Point2> {
        Ok(self.eval(self.vertex_param()?))
    }

    /// Squared parameter `ϱ² = 4 det⁴ / N³` (squared curvature radius at the
    /// vertex).
    pub fn squared_parameter(&self) -> Result<f64> {
        // N = (x0+x2)² + (y0+y2)² - 4x1(x0-x1+x2) - 4y1(y0-y1+y2) is
        // |P0 - 2P1 + P2|², evaluated here in that translation-free form.
        let n = self.axis_direction()?.norm_squared();
        let det = self.collinearity();
        let d2 = det * det;
        Ok(4.0 * d2 * d2 / (n * n * n))
    }

    pub fn parameter(&self) -> Result<f64> {
        Ok(self.squared_parameter()?.sqrt())
    }

    /// Parameter values `(u₊, u₋)` of the points whose tangents have the
    /// isotropic directions `(1, i)` and `(1, -i)` respectively.
    pub fn isotropic_params(&self) -> Result<(Complex64, Complex64)> {
        let a = self.axis_direction()?;
        let (p0, p1) = (self.p0, self.p1);
        let i = Complex64::i();
        let num_plus = (p0.y - p1.y) - (p0.x - p1.x) * i;
        let den_plus = a.dy - a.dx * i;
        let num_minus = (p0.y - p1.y) + (p0.x - p1.x) * i;
        let den_minus = a.dy + a.dx * i;
        if den_plus.norm() == 0.0 || den_minus.norm() == 0.0 {
            return Err(GeometryError::DegenerateParabola);
        }
        Ok((num_plus / den_plus, num_minus / den_minus))
    }

    /// Complex curve point and derivative, for evaluating `P` at a complex
    /// parameter.
    pub fn eval_complex(&self, u: Complex64) -> ([Complex64; 2], [Complex64; 2]) {
        let v = 1.0 - u;
        let (w0, w1, w2) = (v * v, 2.0 * v * u, u * u);
        let pos = [
            w0 * self.p0.x + w1 * self.p1.x + w2 * self.p2.x,
            w0 * self.p0.y + w1 * self.p1.y + w2 * self.p2.y,
        ];
        let a = self.second_difference();
        let d = self.p1 - self.p0;
        let der = [2.0 * (a.dx * u + d.dx), 2.0 * (a.dy * u + d.dy)];
        (pos, der)
    }

    /// Focal point as the intersection of the two isotropic tangents, in
    /// closed form. Evaluated with `P1` moved to the origin.
    pub fn focus(&self) -> Result<Point2> {
        self.axis_direction()?;
        let q0 = self.p0 - self.p1;
        let q2 = self.p2 - self.p1;
        let [fx, fy] = focus_formula([q0.dx, q0.dy], [0.0, 0.0], [q2.dx, q2.dy]);
        Ok(self.p1 + Vec2::new(fx, fy))
    }

    /// Directrix built from vertex, axis and parameter only: perpendicular
    /// to the axis at distance `ϱ/2` behind the vertex.
    pub fn directrix(&self) -> Result<Line2> {
        let axis = self.axis_direction()?.normalized();
        let vertex = self.vertex()?;
        let half = 0.5 * self.parameter()?;
        Line2::new(vertex - axis * half, axis.perp())
    }

    /// Line through the vertex along the axis direction.
    pub fn axis_line(&self) -> Result<Line2> {
        Line2::new(self.vertex()?, self.axis_direction()?)
    }

    pub fn translated(&self, v: Vec2) -> BezierParabola {
        BezierParabola {
            p0: self.p0 + v,
            p1: self.p1 + v,
            p2: self.p2 + v,
        }
    }

    /// Same curve traversed backwards.
    pub fn reversed(&self) -> BezierParabola {
        BezierParabola {
            p0: self.p2,
            p1: self.p1,
            p2: self.p0,
        }
    }

    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> BezierParabola {
        BezierParabola {
            p0: f(self.p0),
            p1: f(self.p1),
            p2: f(self.p2),
        }
    }
}

/// Focus of the parabola with control points `p0`, `p1`, `p2`:
/// `F = (f1, f2) / ((x0-2x1+x2)² + (y0-2y1+y2)²)`.
pub(crate) fn focus_formula<S: Scalar>(p0: [S; 2], p1: [S; 2], p2: [S; 2]) -> [S; 2] {
    let k = S::from_f64;
    let (two, four) = (k(2.0), k(4.0));
    let ([x0, y0], [x1, y1], [x2, y2]) = (p0, p1, p2);
    let f1 = x0 * x0 * x2 - x0 * x1 * x1 - two * x0 * x1 * x2 + x0 * x2 * x2 + two * x1 * x1 * x1
        - x1 * x1 * x2
        - x1 * y0 * y0
        - two * x1 * y0 * y1
        + four * x1 * y0 * y2
        + two * x1 * y1 * y1
        - two * x1 * y1 * y2
        - x1 * y2 * y2
        + x0 * (y1 - y2) * (y1 - y2)
        + x1 * (y0 - y2) * (y0 - y2)
        + x2 * (y0 - y1) * (y0 - y1);
    let f2 = -x0 * x0 * y1 - two * x0 * x1 * y1 + four * x0 * x2 * y1 + two * x1 * x1 * y1
        - two * x1 * x2 * y1
        - x2 * x2 * y1
        + y0 * y0 * y2
        - y0 * y1 * y1
        - two * y0 * y1 * y2
        + y0 * y2 * y2
        + two * y1 * y1 * y1
        - y1 * y1 * y2
        + y0 * (x1 - x2) * (x1 - x2)
        + y1 * (x0 - x2) * (x0 - x2)
        + y2 * (x0 - x1) * (x0 - x1);
    let ax = x0 - two * x1 + x2;
    let ay = y0 - two * y1 + y2;
    let den = ax * ax + ay * ay;
    [f1 / den, f2 / den]
}
