//! Cartesian and barycentric primitives, triangle centers and the
//! Steiner-circumellipse / admissibility predicates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};

/// A triangle is rejected when `|signed area| <= DEGENERACY_TOL * longest²`.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Maximum perpendicular deviation, relative to segment length, accepted by
/// [`affine_ratio`].
pub const COLLINEARITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub dx: f64,
    pub dy: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(self, other: Point2) -> f64 {
        (other - self).norm()
    }

    /// Position vector relative to the origin.
    pub fn to_vec(self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    /// `(1 - s) * self + s * other`
    pub fn lerp(self, other: Point2, s: f64) -> Point2 {
        self + (other - self) * s
    }

    /// Weighted combination `Σ wᵢ pᵢ / Σ wᵢ`.
    pub fn affine_combination(points: &[Point2], weights: &[f64]) -> Point2 {
        let sum: f64 = weights.iter().sum();
        let (mut x, mut y) = (0.0, 0.0);
        for (p, w) in points.iter().zip(weights) {
            x += w * p.x;
            y += w * p.y;
        }
        Point2::new(x / sum, y / sum)
    }
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { dx: 0.0, dy: 0.0 };

    pub const fn new(dx: f64, dy: f64) -> Self {
        Vec2 { dx, dy }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.dx * other.dx + self.dy * other.dy
    }

    /// 2D cross product (determinant of the two column vectors), with
    /// Kahan's FMA correction so near-parallel inputs keep full relative
    /// accuracy.
    pub fn cross(self, other: Vec2) -> f64 {
        diff_of_products(self.dx, other.dy, self.dy, other.dx)
    }

    pub fn norm(self) -> f64 {
        self.dx.hypot(self.dy)
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    /// Counter-clockwise rotation by 90°.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.dy, self.dx)
    }

    pub fn normalized(self) -> Vec2 {
        self * (1.0 / self.norm())
    }

    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.dx - s * self.dy, s * self.dx + c * self.dy)
    }

    pub fn angle(self) -> f64 {
        self.dy.atan2(self.dx)
    }

    pub fn is_finite(self) -> bool {
        self.dx.is_finite() && self.dy.is_finite()
    }
}

/// `a b - c d` to within about one ulp.
pub(crate) fn diff_of_products(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let w = c * d;
    let e = (-c).mul_add(d, w);
    a.mul_add(b, -w) + e
}

impl Sub for Point2 {
    type Output = Vec2;
    fn sub(self, rhs: Point2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Add<Vec2> for Point2 {
    type Output = Point2;
    fn add(self, rhs: Vec2) -> Point2 {
        Point2::new(self.x + rhs.dx, self.y + rhs.dy)
    }
}

impl Sub<Vec2> for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Vec2) -> Point2 {
        Point2::new(self.x - rhs.dx, self.y - rhs.dy)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.dx + rhs.dx, self.dy + rhs.dy)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.dx - rhs.dx, self.dy - rhs.dy)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.dx * rhs, self.dy * rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.dx, -self.dy)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Triangle vertex label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Vertex {
    A,
    B,
    C,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A, Vertex::B, Vertex::C];

    pub fn index(self) -> usize {
        match self {
            Vertex::A => 0,
            Vertex::B => 1,
            Vertex::C => 2,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Vertex::A => "A",
            Vertex::B => "B",
            Vertex::C => "C",
        };
        f.write_str(s)
    }
}

/// A non-degenerate triangle `ABC`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Triangle {
    vertices: [Point2; 3],
}

/// Side lengths `a = |BC|`, `b = |CA|`, `c = |AB|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SideLengths {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl SideLengths {
    pub fn squared(&self) -> (f64, f64, f64) {
        (self.a * self.a, self.b * self.b, self.c * self.c)
    }

    pub fn longest(&self) -> f64 {
        self.a.max(self.b).max(self.c)
    }

    pub fn shortest(&self) -> f64 {
        self.a.min(self.b).min(self.c)
    }
}

/// Centroid, circumcenter, orthocenter and circumradius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Centers {
    pub centroid: Point2,
    pub circumcenter: Point2,
    pub orthocenter: Point2,
    pub circumradius: f64,
}

impl Triangle {
    pub fn new(a: Point2, b: Point2, c: Point2) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let tri = Triangle {
            vertices: [a, b, c],
        };
        let area = tri.signed_area();
        let longest = tri.side_lengths_unchecked().longest();
        if area.abs() <= DEGENERACY_TOL * longest * longest {
            return Err(GeometryError::DegenerateTriangle { area, longest });
        }
        Ok(tri)
    }

    /// Places a triangle with the given side lengths canonically:
    /// `A = (0, 0)`, `B = (c, 0)`, `C = (b cos α, b sin α)` with `sin α > 0`.
    pub fn from_sides(a: f64, b: f64, c: f64) -> Result<Self> {
        let sides_ok = [a, b, c].iter().all(|s| s.is_finite() && *s > 0.0)
            && a < b + c
            && b < c + a
            && c < a + b;
        if !sides_ok {
            return Err(GeometryError::InvalidSides { a, b, c });
        }
        let cos_alpha = ((b * b + c * c - a * a) / (2.0 * b * c)).clamp(-1.0, 1.0);
        let c1 = b * cos_alpha;
        let c2 = b * (1.0 - cos_alpha * cos_alpha).sqrt();
        Triangle::new(Point2::ORIGIN, Point2::new(c, 0.0), Point2::new(c1, c2))
    }

    pub fn vertices(&self) -> [Point2; 3] {
        self.vertices
    }

    pub fn vertex(&self, v: Vertex) -> Point2 {
        self.vertices[v.index()]
    }

    pub fn vertex_a(&self) -> Point2 {
        self.vertices[0]
    }

    pub fn vertex_b(&self) -> Point2 {
        self.vertices[1]
    }

    pub fn vertex_c(&self) -> Point2 {
        self.vertices[2]
    }

    /// Positive for counter-clockwise orientation.
    pub fn signed_area(&self) -> f64 {
        let [a, b, c] = self.vertices;
        0.5 * (b - a).cross(c - a)
    }

    fn side_lengths_unchecked(&self) -> SideLengths {
        let [a, b, c] = self.vertices;
        SideLengths {
            a: b.distance(c),
            b: c.distance(a),
            c: a.distance(b),
        }
    }

    pub fn side_lengths(&self) -> SideLengths {
        self.side_lengths_unchecked()
    }

    /// Cosine of the interior angle at `at`, by the law of cosines.
    pub fn angle_cosine(&self, at: Vertex) -> f64 {
        let SideLengths { a, b, c } = self.side_lengths();
        let (opposite, s1, s2) = match at {
            Vertex::A => (a, b, c),
            Vertex::B => (b, c, a),
            Vertex::C => (c, a, b),
        };
        (s1 * s1 + s2 * s2 - opposite * opposite) / (2.0 * s1 * s2)
    }

    pub fn centroid(&self) -> Point2 {
        let [a, b, c] = self.vertices;
        Point2::new((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0)
    }

    /// Circumcenter and circumradius. Computed relative to `A`.
    pub fn circumcircle(&self) -> Result<(Point2, f64)> {
        let [a, b, c] = self.vertices;
        let (ab, ac) = (b - a, c - a);
        let d = 2.0 * ab.cross(ac);
        let (nb, nc) = (ab.norm_squared(), ac.norm_squared());
        let offset = Vec2::new((ac.dy * nb - ab.dy * nc) / d, (ab.dx * nc - ac.dx * nb) / d);
        if !offset.is_finite() {
            return Err(GeometryError::Numerical(
                "circumcenter overflow on near-degenerate triangle".into(),
            ));
        }
        Ok((a + offset, offset.norm()))
    }

    /// Orthocenter as the intersection of the altitudes from `A` and `B`.
    pub fn orthocenter(&self) -> Result<Point2> {
        let [a, b, c] = self.vertices;
        // (P - A)·(C - B) = 0 and (P - B)·(C - A) = 0, unknown P - A.
        let (bc, ac, ab) = (c - b, c - a, b - a);
        let r1 = 0.0;
        let r2 = ab.dot(ac);
        let det = bc.cross(ac);
        let offset = Vec2::new(
            (r1 * ac.dy - r2 * bc.dy) / det,
            (bc.dx * r2 - ac.dx * r1) / det,
        );
        if !offset.is_finite() {
            return Err(GeometryError::Numerical(
                "orthocenter overflow on near-degenerate triangle".into(),
            ));
        }
        Ok(a + offset)
    }

    pub fn centers(&self) -> Result<Centers> {
        let (circumcenter, circumradius) = self.circumcircle()?;
        Ok(Centers {
            centroid: self.centroid(),
            circumcenter,
            orthocenter: self.orthocenter()?,
            circumradius,
        })
    }

    pub fn bary_to_cartesian(&self, h: Homogeneous3) -> Result<Point2> {
        let sum = h.sum();
        let scale = h.max_abs();
        if scale == 0.0 {
            return Err(GeometryError::ZeroTriple);
        }
        if sum.abs() <= 1e-14 * scale {
            return Err(GeometryError::PointAtInfinity);
        }
        let [a, b, c] = self.vertices;
        // Relative to A for conditioning.
        let (ab, ac) = (b - a, c - a);
        Ok(a + ab * (h.x1 / sum) + ac * (h.x2 / sum))
    }

    /// Normalized barycentric coordinates of `p` (summing to one).
    pub fn cartesian_to_bary(&self, p: Point2) -> Homogeneous3 {
        let [a, b, c] = self.vertices;
        let total = (b - a).cross(c - a);
        let wa = (b - p).cross(c - p) / total;
        let wb = (c - p).cross(a - p) / total;
        let wc = 1.0 - wa - wb;
        Homogeneous3::new(wa, wb, wc)
    }

    /// Applies `f` to each vertex. The image must be non-degenerate.
    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> Result<Triangle> {
        let [a, b, c] = self.vertices;
        Triangle::new(f(a), f(b), f(c))
    }

    /// The rigid motion taking `A` to the origin and `B` onto the positive
    /// x-axis, together with the local coordinates `c`, `c1`, `c2`.
    pub fn canonical_frame(&self) -> CanonicalFrame {
        let [a, b, c] = self.vertices;
        let ab = b - a;
        let len = ab.norm();
        let (cos, sin) = (ab.dx / len, ab.dy / len);
        let ac = c - a;
        CanonicalFrame {
            origin: a,
            cos,
            sin,
            c: len,
            c1: cos * ac.dx + sin * ac.dy,
            c2: -sin * ac.dx + cos * ac.dy,
        }
    }
}

/// Local frame with `A = (0, 0)`, `B = (c, 0)`, `C = (c1, c2)`.
///
/// `c2` is negative for clockwise triangles; the formulas evaluated in this
/// frame are polynomial in `c1`, `c2` and do not care.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalFrame {
    pub origin: Point2,
    pub cos: f64,
    pub sin: f64,
    pub c: f64,
    pub c1: f64,
    pub c2: f64,
}

impl CanonicalFrame {
    pub fn to_world(&self, local: Point2) -> Point2 {
        self.origin + self.vec_to_world(local.to_vec())
    }

    pub fn vec_to_world(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.cos * v.dx - self.sin * v.dy,
            self.sin * v.dx + self.cos * v.dy,
        )
    }

    pub fn to_local(&self, p: Point2) -> Point2 {
        let d = p - self.origin;
        Point2::new(
            self.cos * d.dx + self.sin * d.dy,
            -self.sin * d.dx + self.cos * d.dy,
        )
    }
}

/// Homogeneous barycentric coordinates `(x0 : x1 : x2)` with respect to
/// `A`, `B`, `C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Homogeneous3 {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
}

impl Homogeneous3 {
    pub const fn new(x0: f64, x1: f64, x2: f64) -> Self {
        Homogeneous3 { x0, x1, x2 }
    }

    pub fn sum(&self) -> f64 {
        self.x0 + self.x1 + self.x2
    }

    pub fn max_abs(&self) -> f64 {
        self.x0.abs().max(self.x1.abs()).max(self.x2.abs())
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x0, self.x1, self.x2]
    }

    pub fn scaled(&self, s: f64) -> Homogeneous3 {
        Homogeneous3::new(self.x0 * s, self.x1 * s, self.x2 * s)
    }

    /// Representative with coordinate sum one.
    pub fn normalized(&self) -> Result<Homogeneous3> {
        let scale = self.max_abs();
        if scale == 0.0 {
            return Err(GeometryError::ZeroTriple);
        }
        let sum = self.sum();
        if sum.abs() <= 1e-14 * scale {
            return Err(GeometryError::PointAtInfinity);
        }
        Ok(self.scaled(1.0 / sum))
    }
}

/// Signed ratio `XZ / ZY` of three collinear points.
pub fn affine_ratio(x: Point2, y: Point2, z: Point2) -> Result<f64> {
    let scale = x.distance(y).max(x.distance(z)).max(z.distance(y));
    if z.distance(y) <= f64::EPSILON * scale || scale == 0.0 {
        return Err(GeometryError::InfiniteRatio);
    }
    let dir = if x.distance(y) > f64::EPSILON * scale {
        (y - x).normalized()
    } else {
        (z - x).normalized()
    };
    let deviation = (y - x).cross(dir).abs().max((z - x).cross(dir).abs());
    if deviation > COLLINEARITY_TOL * scale {
        return Err(GeometryError::NotCollinear { deviation });
    }
    Ok((z - x).dot(dir) / (y - z).dot(dir))
}

/// `x0 x1 + x1 x2 + x2 x0` evaluated on the unit-norm representative; zero
/// exactly on the Steiner circumellipse.
pub fn steiner_residual(h: Homogeneous3) -> Result<f64> {
    let norm = (h.x0 * h.x0 + h.x1 * h.x1 + h.x2 * h.x2).sqrt();
    if norm == 0.0 {
        return Err(GeometryError::ZeroTriple);
    }
    let [x0, x1, x2] = h.scaled(1.0 / norm).as_array();
    Ok(x0 * x1 + x1 * x2 + x2 * x0)
}

/// Whether all three pairwise sums of the normalized coordinates share a
/// strictly positive product, i.e. `X` lies strictly inside the
/// anticomplementary triangle. Boundary points are not admissible.
pub fn admissible(x: Homogeneous3) -> bool {
    let Ok(n) = x.normalized() else {
        return false;
    };
    let s01 = n.x0 + n.x1;
    let s12 = n.x1 + n.x2;
    let s02 = n.x0 + n.x2;
    s01 * s12 > 0.0 && s02 * s12 > 0.0 && s01 * s02 > 0.0
}
