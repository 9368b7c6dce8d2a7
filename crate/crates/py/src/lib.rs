//! Python bindings for the exparabola library.
//!
//! Points are `(x, y)` tuples and barycentric triples are `(x0, x1, x2)`
//! tuples. Geometry errors surface as `ValueError`, iteration failures as
//! `RuntimeError`.

use exparabolas as core;
use exparabolas::{GeometryError, Homogeneous3, Point2};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

type Xy = (f64, f64);

fn to_py(e: GeometryError) -> PyErr {
    match e {
        GeometryError::IterationCap { .. }
        | GeometryError::IterationDiverged { .. }
        | GeometryError::Numerical(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn xy(p: Point2) -> Xy {
    (p.x, p.y)
}

fn pt(p: Xy) -> Point2 {
    Point2::new(p.0, p.1)
}

fn bary(x: (f64, f64, f64)) -> Homogeneous3 {
    Homogeneous3::new(x.0, x.1, x.2)
}

/// Non-degenerate triangle ABC.
#[pyclass(frozen, skip_from_py_object, module = "pyexparabola")]
#[derive(Clone, Copy)]
pub struct Triangle {
    inner: core::Triangle,
}

#[pymethods]
impl Triangle {
    #[new]
    fn new(a: Xy, b: Xy, c: Xy) -> PyResult<Self> {
        let inner = core::Triangle::new(pt(a), pt(b), pt(c)).map_err(to_py)?;
        Ok(Triangle { inner })
    }

    /// Triangle with the given side lengths in a canonical position.
    #[staticmethod]
    fn from_sides(a: f64, b: f64, c: f64) -> PyResult<Self> {
        let inner = core::Triangle::from_sides(a, b, c).map_err(to_py)?;
        Ok(Triangle { inner })
    }

    fn vertices(&self) -> [Xy; 3] {
        self.inner.vertices().map(xy)
    }

    fn side_lengths(&self) -> (f64, f64, f64) {
        let s = self.inner.side_lengths();
        (s.a, s.b, s.c)
    }

    fn signed_area(&self) -> f64 {
        self.inner.signed_area()
    }

    fn centroid(&self) -> Xy {
        xy(self.inner.centroid())
    }

    fn circumcircle(&self) -> PyResult<(Xy, f64)> {
        let (o, r) = self.inner.circumcircle().map_err(to_py)?;
        Ok((xy(o), r))
    }

    fn orthocenter(&self) -> PyResult<Xy> {
        self.inner.orthocenter().map(xy).map_err(to_py)
    }

    fn bary_to_cartesian(&self, x: (f64, f64, f64)) -> PyResult<Xy> {
        self.inner.bary_to_cartesian(bary(x)).map(xy).map_err(to_py)
    }

    fn cartesian_to_bary(&self, p: Xy) -> (f64, f64, f64) {
        let h = self.inner.cartesian_to_bary(pt(p));
        (h.x0, h.x1, h.x2)
    }

    fn __repr__(&self) -> String {
        let [a, b, c] = self.inner.vertices();
        format!(
            "Triangle(({}, {}), ({}, {}), ({}, {}))",
            a.x, a.y, b.x, b.y, c.x, c.y
        )
    }
}

/// Exparabola with tangency parameter `t` relative to a triangle.
#[pyclass(frozen, skip_from_py_object, module = "pyexparabola")]
#[derive(Clone, Copy)]
pub struct Exparabola {
    inner: core::Exparabola,
}

#[pymethods]
impl Exparabola {
    #[new]
    fn new(tri: PyRef<'_, Triangle>, t: f64) -> PyResult<Self> {
        let inner = core::Exparabola::new(&tri.inner, t).map_err(to_py)?;
        Ok(Exparabola { inner })
    }

    #[getter]
    fn t(&self) -> f64 {
        self.inner.t
    }

    fn control_points(&self) -> [Xy; 3] {
        let c = self.inner.curve;
        [xy(c.p0), xy(c.p1), xy(c.p2)]
    }

    fn eval(&self, u: f64) -> Xy {
        xy(self.inner.curve.eval(u))
    }

    fn focus(&self) -> Xy {
        xy(self.inner.focus())
    }

    fn vertex(&self) -> Xy {
        xy(self.inner.vertex())
    }

    fn squared_parameter(&self) -> f64 {
        self.inner.squared_parameter()
    }

    /// Vertex label `"A"`, `"B"` or `"C"` opposite the side touched
    /// inside its segment.
    fn opposite_vertex(&self) -> String {
        format!("{:?}", self.inner.opposite_vertex())
    }

    fn __repr__(&self) -> String {
        format!("Exparabola(t={})", self.inner.t)
    }
}

/// Focal triangle of a point with respect to a triangle.
#[pyclass(frozen, module = "pyexparabola")]
pub struct FocalResult {
    inner: core::FocalResult,
}

#[pymethods]
impl FocalResult {
    /// Foci `F_A`, `F_B`, `F_C`.
    #[getter]
    fn foci(&self) -> [Xy; 3] {
        self.inner.foci.map(xy)
    }

    /// Axis cubic roots as `(re, im)` pairs in `F_A`, `F_B`, `F_C` order.
    #[getter]
    fn params(&self) -> [(f64, f64); 3] {
        self.inner.params.map(|p| (p.re, p.im))
    }

    #[getter]
    fn admissible(&self) -> bool {
        self.inner.admissible
    }

    #[getter]
    fn orthocenter(&self) -> Option<Xy> {
        self.inner.orthocenter.map(xy)
    }

    #[getter]
    fn orthocenter_residual(&self) -> f64 {
        self.inner.orthocenter_residual
    }

    fn triangle(&self) -> PyResult<Triangle> {
        let inner = self.inner.triangle().map_err(to_py)?;
        Ok(Triangle { inner })
    }
}

/// Limit hexagon of the centroid-focal iteration.
#[pyclass(frozen, module = "pyexparabola")]
pub struct Hexagon {
    inner: core::Hexagon,
}

#[pymethods]
impl Hexagon {
    #[getter]
    fn vertices(&self) -> [Xy; 6] {
        self.inner.vertices.map(xy)
    }

    #[getter]
    fn center(&self) -> Xy {
        xy(self.inner.center)
    }

    #[getter]
    fn radius(&self) -> f64 {
        self.inner.radius
    }

    #[getter]
    fn steps(&self) -> usize {
        self.inner.steps
    }

    #[getter]
    fn max_gap_error(&self) -> f64 {
        self.inner.max_gap_error
    }

    #[getter]
    fn max_radius_error(&self) -> f64 {
        self.inner.max_radius_error
    }
}

/// Parameters `(t0, t1, t2)` of the three max-exparabolas, ascending.
#[pyfunction]
fn max_exparabola_roots(tri: PyRef<'_, Triangle>) -> PyResult<(f64, f64, f64)> {
    let [t0, t1, t2] = core::max_exparabola_roots(&tri.inner).map_err(to_py)?;
    Ok((t0, t1, t2))
}

/// The three max-exparabolas.
#[pyfunction]
fn max_exparabolas(tri: PyRef<'_, Triangle>) -> PyResult<Vec<Exparabola>> {
    let ps = core::max_exparabolas(&tri.inner).map_err(to_py)?;
    Ok(ps.iter().map(|&inner| Exparabola { inner }).collect())
}

/// Focal triangle of the point with barycentric coordinates `x`.
#[pyfunction]
fn focal_triangle(tri: PyRef<'_, Triangle>, x: (f64, f64, f64)) -> PyResult<FocalResult> {
    let inner = core::focal_triangle(&tri.inner, bary(x)).map_err(to_py)?;
    Ok(FocalResult { inner })
}

/// Triangles `T_0 .. T_n` of the centroid-focal sequence.
#[pyfunction]
fn iterate(tri: PyRef<'_, Triangle>, n: usize) -> PyResult<Vec<Triangle>> {
    let steps = core::iterate(&tri.inner, n).map_err(to_py)?;
    Ok(steps.iter().map(|s| Triangle { inner: s.tri }).collect())
}

/// Iterate until the triangle is equilateral within `tol` and return the
/// hexagon formed by the last two triangles.
#[pyfunction]
#[pyo3(signature = (tri, tol = 1e-12))]
fn limit_hexagon(tri: PyRef<'_, Triangle>, tol: f64) -> PyResult<Hexagon> {
    let inner = core::limit_hexagon(&tri.inner, tol).map_err(to_py)?;
    Ok(Hexagon { inner })
}

/// Whether the three axis exparabolas through `x` are real.
#[pyfunction]
fn admissible(x: (f64, f64, f64)) -> bool {
    core::admissible(bary(x))
}

#[pymodule]
fn pyexparabola(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Triangle>()?;
    m.add_class::<Exparabola>()?;
    m.add_class::<FocalResult>()?;
    m.add_class::<Hexagon>()?;
    m.add_function(wrap_pyfunction!(max_exparabola_roots, m)?)?;
    m.add_function(wrap_pyfunction!(max_exparabolas, m)?)?;
    m.add_function(wrap_pyfunction!(focal_triangle, m)?)?;
    m.add_function(wrap_pyfunction!(iterate, m)?)?;
    m.add_function(wrap_pyfunction!(limit_hexagon, m)?)?;
    m.add_function(wrap_pyfunction!(admissible, m)?)?;
    Ok(())
}
