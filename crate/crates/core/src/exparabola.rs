//! Exparabolas: parabolas tangent to the three side lines of a triangle,
//! parametrized by the barycentric weight `t` of their tangency points.

use serde::Serialize;

use crate::error::{GeometryError, Result};
use crate::geometry::{Homogeneous3, Point2, Triangle, Vertex};
use crate::parabola::{BezierParabola, Line2};

/// Values of `t` within this distance of 0 or 1 are rejected.
pub const PARAM_TOL: f64 = 1e-12;

fn check_param(t: f64) -> Result<()> {
    if !t.is_finite() || t.abs() <= PARAM_TOL || (t - 1.0).abs() <= PARAM_TOL {
        return Err(GeometryError::InvalidParameter { t });
    }
    Ok(())
}

/// Tangency points on `BC`, `CA`, `AB`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangencyPoints {
    pub on_bc: Homogeneous3,
    pub on_ca: Homogeneous3,
    pub on_ab: Homogeneous3,
}

/// `A0 = (0, 1, t-1)`, `B2 = (1, 0, -t)`, `C1 = (1-t, t, 0)`.
pub fn tangency_points(t: f64) -> Result<TangencyPoints> {
    check_param(t)?;
    Ok(TangencyPoints {
        on_bc: Homogeneous3::new(0.0, 1.0, t - 1.0),
        on_ca: Homogeneous3::new(1.0, 0.0, -t),
        on_ab: Homogeneous3::new(1.0 - t, t, 0.0),
    })
}

/// Common point `(t-1, -t, t(1-t))` of the three cevians through the
/// tangency points. Lies on the Steiner circumellipse.
pub fn cevian_point(t: f64) -> Result<Homogeneous3> {
    check_param(t)?;
    Ok(Homogeneous3::new(t - 1.0, -t, t * (1.0 - t)))
}

/// Vertex opposite to the side the exparabola touches in an interior point.
pub fn opposite_vertex(t: f64) -> Result<Vertex> {
    check_param(t)?;
    Ok(if t < 0.0 {
        Vertex::B
    } else if t < 1.0 {
        Vertex::C
    } else {
        Vertex::A
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Exparabola {
    pub tri: Triangle,
    pub t: f64,
    pub curve: BezierParabola,
}

impl Exparabola {
    /// Bézier control points `(B2, C, A0)` in Cartesian coordinates.
    pub fn new(tri: &Triangle, t: f64) -> Result<Self> {
        let tp = tangency_points(t)?;
        let p0 = tri.bary_to_cartesian(tp.on_ca)?;
        let p2 = tri.bary_to_cartesian(tp.on_bc)?;
        let curve = BezierParabola::new(p0, tri.vertex_c(), p2)?;
        Ok(Exparabola {
            tri: *tri,
            t,
            curve,
        })
    }

    pub fn tangency_points(&self) -> TangencyPoints {
        tangency_points(self.t).expect("validated on construction")
    }

    pub fn opposite_vertex(&self) -> Vertex {
        opposite_vertex(self.t).expect("validated on construction")
    }

    pub fn cevian_point(&self) -> Homogeneous3 {
        cevian_point(self.t).expect("validated on construction")
    }

    /// Cartesian tangency point on `AB`, reached at curve parameter `u = t`.
    pub fn tangency_on_ab(&self) -> Point2 {
        self.tri
            .bary_to_cartesian(self.tangency_points().on_ab)
            .expect("coordinate sum is one")
    }

    pub fn focus(&self) -> Point2 {
        self.curve.focus().expect("non-degenerate by construction")
    }

    pub fn vertex(&self) -> Point2 {
        self.curve.vertex().expect("non-degenerate by construction")
    }

    pub fn axis_line(&self) -> Line2 {
        self.curve
            .axis_line()
            .expect("non-degenerate by construction")
    }

    /// `ϱ² = 64Δ⁴ t²(1-t)² / q³` with `q = (1-t)a² + t b² - t(1-t)c²`,
    /// i.e. `|P0 - 2P1 + P2|² t²(1-t)²` expanded in the side lengths. Avoids
    /// the cancellation in the control-point form when the curve is flat.
    pub fn squared_parameter(&self) -> f64 {
        let t = self.t;
        let (a2, b2, c2) = self.tri.side_lengths().squared();
        let area = self.tri.signed_area();
        let q = (1.0 - t) * a2 + t * b2 - t * (1.0 - t) * c2;
        let s = t * (1.0 - t);
        let a4 = area * area * area * area;
        64.0 * a4 * s * s / (q * q * q)
    }

    /// `det(V - X, a) / |a|`: signed distance of `x` from the axis.
    pub fn axis_incidence_residual(&self, x: Point2) -> f64 {
        self.axis_line().signed_distance(x)
    }
}

/// Squared parameter of the exparabola with tangency parameter `t`.
pub fn squared_parameter_at(tri: &Triangle, t: f64) -> Result<f64> {
    Ok(Exparabola::new(tri, t)?.squared_parameter())
}

/// The nine tangency points of three exparabolas with parameters `t0`,
/// `t1`, `t2`. Each exparabola `tᵢ` touches `AB` in `Cᵢ`; the labels on
/// `BC` and `CA` follow the cyclic index shift below.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct TangencyGrid {
    pub A0: Homogeneous3,
    pub A1: Homogeneous3,
    pub A2: Homogeneous3,
    pub B0: Homogeneous3,
    pub B1: Homogeneous3,
    pub B2: Homogeneous3,
    pub C0: Homogeneous3,
    pub C1: Homogeneous3,
    pub C2: Homogeneous3,
}

pub fn tangency_grid(t0: f64, t1: f64, t2: f64) -> Result<TangencyGrid> {
    for t in [t0, t1, t2] {
        check_param(t)?;
    }
    if t0 == t1 || t1 == t2 || t0 == t2 {
        return Err(GeometryError::CoincidentRoots(vec![t0, t1, t2]));
    }
    let on_bc = |t: f64| Homogeneous3::new(0.0, 1.0, t - 1.0);
    let on_ca = |t: f64| Homogeneous3::new(1.0, 0.0, -t);
    let on_ab = |t: f64| Homogeneous3::new(1.0 - t, t, 0.0);
    Ok(TangencyGrid {
        A0: on_bc(t1),
        A1: on_bc(t2),
        A2: on_bc(t0),
        B0: on_ca(t2),
        B1: on_ca(t0),
        B2: on_ca(t1),
        C0: on_ab(t0),
        C1: on_ab(t1),
        C2: on_ab(t2),
    })
}

impl TangencyGrid {
    /// `(label, point)` pairs in `A0..C2` order.
    pub fn labeled(&self) -> [(&'static str, Homogeneous3); 9] {
        [
            ("A0", self.A0),
            ("A1", self.A1),
            ("A2", self.A2),
            ("B0", self.B0),
            ("B1", self.B1),
            ("B2", self.B2),
            ("C0", self.C0),
            ("C1", self.C1),
            ("C2", self.C2),
        ]
    }
}
