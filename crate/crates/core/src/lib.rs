//! Exparabolas of a triangle.
//!
//! An exparabola is a parabola tangent to the three side lines of a
//! triangle. The family is one-parametric; three members have locally
//! maximal parameter, and for any point `X` three members have axes through
//! `X`. The foci of those three form the `X`-focal triangle, whose
//! orthocenter is `X`. Iterating the centroid-focal triangle converges to a
//! pair of equilateral triangles forming a regular hexagon.

pub mod cubic;
mod dd;
pub mod error;
pub mod exparabola;
pub mod focal;
pub mod geometry;
pub mod iteration;
pub mod parabola;
pub mod sampling;

pub use cubic::{
    axis_cubic_coeffs, axis_cubic_roots, max_cubic_coeffs, max_exparabola_roots, solve_cubic,
    CubicCoeffs, CubicRoots, RootKind, Side,
};
pub use error::{GeometryError, Result};
pub use exparabola::{
    cevian_point, opposite_vertex, tangency_grid, tangency_points, Exparabola, TangencyGrid,
};
pub use focal::{
    focal_triangle, h_invariant, max_exparabolas, perpendicularity_check,
    steiner_inscribed_triangle, x_exparabolas, FocalResult, XExparabolas,
};
pub use geometry::{
    admissible, affine_ratio, steiner_residual, Centers, Homogeneous3, Point2, Triangle, Vec2,
    Vertex,
};
pub use iteration::{
    contraction_ratio, iterate, iterate_with, limit_hexagon, BasePoint, FocalStep, Hexagon,
};
pub use parabola::{BezierParabola, Line2};
