use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("degenerate triangle: |signed area| = {area:e} is within tolerance of zero (longest side {longest:e})")]
    DegenerateTriangle { area: f64, longest: f64 },

    #[error("side lengths ({a}, {b}, {c}) violate the strict triangle inequality")]
    InvalidSides { a: f64, b: f64, c: f64 },

    #[error("non-finite coordinate in input")]
    NonFinite,

    #[error("barycentric coordinates sum to zero: point at infinity")]
    PointAtInfinity,

    #[error("all three homogeneous coordinates are zero")]
    ZeroTriple,

    #[error("points are not collinear (deviation {deviation:e})")]
    NotCollinear { deviation: f64 },

    #[error("affine ratio is infinite: Z coincides with Y")]
    InfiniteRatio,

    #[error("degenerate parabola: control points are collinear")]
    DegenerateParabola,

    #[error("tangency parameter t = {t} is too close to 0 or 1")]
    InvalidParameter { t: f64 },

    #[error(
        "point ({0}, {1}, {2}) is not admissible: its three axis exparabolas are not all real"
    )]
    NotAdmissible(f64, f64, f64),

    #[error("two of the three exparabolas coincide (roots {0:?})")]
    CoincidentRoots(Vec<f64>),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("iteration cap of {cap} steps exceeded (last equilateral deviation {deviation:e})")]
    IterationCap { cap: usize, deviation: f64 },

    #[error("iteration drifted at step {step}: residual {residual:e} exceeds guard")]
    IterationDiverged { step: usize, residual: f64 },

    #[error("centroid coincides with circumcenter: sequence already converged")]
    AlreadyConverged,
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
