//! The `max`, `xfocal` and `iterate` subcommands.

use exparabolas::cubic::{max_cubic_coeffs, Side};
use exparabolas::iteration::{orthocenter_ratio, DEFAULT_CAP};
use exparabolas::{
    axis_cubic_coeffs, contraction_ratio, focal_triangle, h_invariant, iterate_with, limit_hexagon,
    max_exparabola_roots, max_exparabolas, steiner_residual, tangency_grid, x_exparabolas,
    BasePoint, CubicRoots, Exparabola, GeometryError, Homogeneous3, Point2, Triangle, Vec2, Vertex,
};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::input::TriangleSpec;
use crate::oracle::{self, P};
use crate::report::{Check, Report};

/// Tolerance on the iteration invariants (relative to `R₀`).
pub const ITERATION_TOL: f64 = 1e-9;

/// Tolerance on the contraction ratios.
pub const RATIO_TOL: f64 = 1e-8;

fn pt(p: Point2) -> [f64; 2] {
    [p.x, p.y]
}

fn vc(v: Vec2) -> [f64; 2] {
    [v.dx, v.dy]
}

fn triangle_json(tri: &Triangle) -> CliResult<Value> {
    let s = tri.side_lengths();
    let c = tri.centers()?;
    Ok(json!({
        "vertices": tri.vertices().map(pt),
        "sides": {"a": s.a, "b": s.b, "c": s.c},
        "centroid": pt(c.centroid),
        "circumcenter": pt(c.circumcenter),
        "orthocenter": pt(c.orthocenter),
        "circumradius": c.circumradius,
    }))
}

fn input_json(spec: &TriangleSpec) -> Value {
    serde_json::to_value(spec).expect("plain numbers")
}

fn roots_json(r: &CubicRoots) -> Value {
    json!({
        "kind": r.kind,
        "real": r.reals,
        "complex_pair": r.complex_pair.map(|(re, im)| json!({"re": re, "im": im})),
        "clustered": r.clustered,
    })
}

fn exparabola_json(label: Vertex, e: &Exparabola, g: Point2, r: f64) -> Value {
    let axis = e.axis_line();
    json!({
        "opposite": label,
        "t": e.t,
        "control_points": [pt(e.curve.p0), pt(e.curve.p1), pt(e.curve.p2)],
        "focus": pt(e.focus()),
        "vertex": pt(e.vertex()),
        "axis": {"point": pt(axis.point), "direction": vc(axis.direction)},
        "squared_parameter": e.squared_parameter(),
        "centroid_incidence": e.axis_incidence_residual(g).abs() / r,
    })
}

fn foci_on_circle(foci: &[Point2], o: P, r: f64) -> f64 {
    foci.iter()
        .map(|f| (oracle::dist(oracle::p(*f), o) - r).abs() / r)
        .fold(0.0, f64::max)
}

/// Max-exparabolas: roots of `e_c`, tangency points, foci and axes.
pub fn cmd_max(spec: &TriangleSpec, tol: f64, seed: u64) -> CliResult<Report> {
    let tri = spec.triangle()?;
    let coeffs = max_cubic_coeffs(&tri, Side::C);
    let roots = max_exparabola_roots(&tri)?;
    let [t0, t1, t2] = roots;
    let flags = [t0 < 0.0, 0.0 < t1 && t1 < 1.0, t2 > 1.0];
    let parabolas = max_exparabolas(&tri)?;
    let grid = tangency_grid(t0, t1, t2)?;
    let (o, r) = oracle::circle(&tri);
    let g = tri.centroid();

    let mut tangency = Vec::new();
    let mut steiner: f64 = 0.0;
    for (label, h) in grid.labeled() {
        tangency.push(json!({
            "label": label,
            "barycentric": h.as_array(),
            "point": pt(tri.bary_to_cartesian(h)?),
        }));
    }
    for e in &parabolas {
        steiner = steiner.max(steiner_residual(e.cevian_point())?);
    }
    let foci = parabolas.map(|e| e.focus());
    let incidence = parabolas
        .iter()
        .map(|e| e.axis_incidence_residual(g).abs() / r)
        .fold(0.0, f64::max);
    let root_residual = roots
        .iter()
        .map(|&t| coeffs.eval(t).abs() / coeffs.residual_scale(t))
        .fold(0.0, f64::max);

    let result = json!({
        "triangle": triangle_json(&tri)?,
        "cubic": {"coefficients": coeffs.as_array()},
        "roots": [t0, t1, t2],
        "interlacing": {
            "t0_negative": flags[0],
            "t1_between_0_and_1": flags[1],
            "t2_above_1": flags[2],
        },
        "tangency_points": tangency,
        "exparabolas": [
            exparabola_json(Vertex::A, &parabolas[0], g, r),
            exparabola_json(Vertex::B, &parabolas[1], g, r),
            exparabola_json(Vertex::C, &parabolas[2], g, r),
        ],
        "foci": {"F_A": pt(foci[0]), "F_B": pt(foci[1]), "F_C": pt(foci[2])},
    });
    let invariants = vec![
        Check::flag("interlacing", flags.iter().all(|f| *f)),
        Check::new("root_residual", root_residual, tol),
        Check::new("axes_through_centroid", incidence, tol),
        Check::new("foci_on_circumcircle", foci_on_circle(&foci, o, r), tol),
        Check::new("cevian_points_on_steiner_ellipse", steiner, tol),
    ];
    Ok(Report::new(
        "max",
        seed,
        json!({"triangle": input_json(spec)}),
        result,
        invariants,
    ))
}

/// `X`-focal triangle, including the complex regime.
pub fn cmd_xfocal(spec: &TriangleSpec, x: Homogeneous3, tol: f64, seed: u64) -> CliResult<Report> {
    let tri = spec.triangle()?;
    let xn = x.normalized()?;
    let coeffs = axis_cubic_coeffs(&tri, xn)?;
    let fr = focal_triangle(&tri, xn)?;
    let (o, r) = oracle::circle(&tri);
    let x_cart = tri.bary_to_cartesian(xn)?;

    let mut invariants = vec![Check::new(
        "root_residual",
        fr.roots
            .all_complex()
            .iter()
            .map(|z| coeffs.eval_complex(*z).norm() / coeffs.residual_scale(z.norm()))
            .fold(0.0, f64::max),
        tol,
    )];
    if fr.all_real {
        let [w, u, v] = fr.params.map(|q| q.re);
        let [fa, fb, fc] = fr.foci.map(oracle::p);
        let h = oracle::orthocenter(fa, fb, fc);
        invariants.push(Check::new(
            "orthocenter_is_x",
            oracle::dist(h, oracle::p(x_cart)) / r,
            tol,
        ));
        invariants.push(Check::new(
            "h_invariant",
            h_invariant(&tri, u, v, w)?.abs(),
            tol,
        ));
        invariants.push(Check::new(
            "foci_on_circumcircle",
            foci_on_circle(&fr.foci, o, r),
            tol,
        ));
        if let Some(d) = fr.focus_cross_check {
            invariants.push(Check::new("focus_formulas_agree", d / r, tol));
        }
        if fr.admissible {
            let xe = x_exparabolas(&tri, xn)?;
            let axes = xe.parabolas.map(|e| {
                let l = e.axis_line();
                (oracle::p(l.point), [l.direction.dx, l.direction.dy])
            });
            invariants.push(Check::new(
                "axes_are_altitudes",
                oracle::altitude_residual([fa, fb, fc], axes, r),
                tol,
            ));
        }
    }
    let labels = ["F_A", "F_B", "F_C"];
    let params: serde_json::Map<String, Value> = labels
        .iter()
        .zip(fr.params)
        .map(|(l, q)| (l.to_string(), json!({"re": q.re, "im": q.im})))
        .collect();
    let foci: serde_json::Map<String, Value> = labels
        .iter()
        .zip(fr.foci)
        .map(|(l, f)| (l.to_string(), json!(pt(f))))
        .collect();
    let result = json!({
        "triangle": triangle_json(&tri)?,
        "x": {
            "normalized": xn.as_array(),
            "point": pt(x_cart),
            "admissible": fr.admissible,
        },
        "cubic": {"coefficients": coeffs.as_array()},
        "roots": roots_json(&fr.roots),
        "complex": !fr.all_real,
        "parameters": params,
        "foci": foci,
        "max_imaginary": fr.max_imaginary,
        "orthocenter": fr.orthocenter.map(pt),
        "orthocenter_residual": fr.orthocenter_residual,
        "orthocenter_residual_relative": fr.orthocenter_residual / r,
        "focus_cross_check": fr.focus_cross_check,
    });
    Ok(Report::new(
        "xfocal",
        seed,
        json!({"triangle": input_json(spec), "x": x.as_array()}),
        result,
        invariants,
    ))
}

#[derive(Debug, Clone, Copy)]
pub struct IterateOptions {
    pub steps: usize,
    pub tol: f64,
    pub cap: usize,
    pub base: Option<Homogeneous3>,
}

impl Default for IterateOptions {
    fn default() -> Self {
        IterateOptions {
            steps: 40,
            tol: 1e-9,
            cap: DEFAULT_CAP,
            base: None,
        }
    }
}

fn ratio_json(r: Result<f64, GeometryError>) -> CliResult<Value> {
    match r {
        Ok(q) => Ok(json!(q)),
        Err(GeometryError::AlreadyConverged) => Ok(json!("converged")),
        Err(e) => Err(e.into()),
    }
}

/// Iterated `G`-focal triangles (or another base point, experimentally).
pub fn cmd_iterate(spec: &TriangleSpec, opts: IterateOptions, seed: u64) -> CliResult<Report> {
    if opts.steps == 0 {
        return Err(CliError::Input("steps must be at least 1".into()));
    }
    if opts.steps > opts.cap {
        return Err(CliError::Cap(format!(
            "{} steps requested, cap is {}",
            opts.steps, opts.cap
        )));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(CliError::Input(format!(
            "tolerance must be positive, got {}",
            opts.tol
        )));
    }
    let tri = spec.triangle()?;
    let base = match opts.base {
        Some(h) => BasePoint::Barycentric(h),
        None => BasePoint::Centroid,
    };
    let steps = iterate_with(&tri, opts.steps, base)?;
    let r0 = steps[0].circumradius;
    let o0 = steps[0].circumcenter;

    let mut rows = Vec::with_capacity(steps.len());
    let (mut worst_ratio, mut worst_h_ratio) = (0.0f64, 0.0f64);
    let (mut drift, mut follow) = (0.0f64, 0.0f64);
    for (i, s) in steps.iter().enumerate() {
        let (ratio, h_ratio) = if i == 0 {
            (Value::Null, Value::Null)
        } else {
            let q = contraction_ratio(&steps[i - 1], s);
            if let Ok(q) = q {
                worst_ratio = worst_ratio.max((q - 1.0 / 3.0).abs());
            }
            let hq = orthocenter_ratio(&steps[i - 1], s);
            if let Ok(hq) = hq {
                worst_h_ratio = worst_h_ratio.max((hq - 1.0 / 3.0).abs());
            }
            (ratio_json(q)?, ratio_json(hq)?)
        };
        drift = drift
            .max(s.circumcenter.distance(o0) / r0)
            .max((s.circumradius - r0).abs() / r0);
        follow = follow.max(s.orthocenter_step_residual / r0);
        rows.push(json!({
            "index": s.index,
            "vertices": s.tri.vertices().map(pt),
            "circumcenter": pt(s.circumcenter),
            "centroid": pt(s.centroid),
            "orthocenter": pt(s.orthocenter),
            "circumradius": s.circumradius,
            "deviation": s.equilateral_deviation,
            "centroid_distance": s.centroid_offset.norm(),
            "ratio": ratio,
            "orthocenter_ratio": h_ratio,
        }));
    }

    let hexagon = if base == BasePoint::Centroid {
        match limit_hexagon(&tri, opts.tol) {
            Ok(h) if h.steps <= steps.len() => Some(h),
            Ok(_) | Err(GeometryError::IterationCap { .. }) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };

    let mut invariants = vec![
        Check::new("circumcircle_drift", drift, ITERATION_TOL),
        Check::new("orthocenter_is_previous_base_point", follow, ITERATION_TOL),
    ];
    if base == BasePoint::Centroid {
        invariants.push(Check::new("contraction_ratio", worst_ratio, RATIO_TOL));
        invariants.push(Check::new(
            "orthocenter_contraction_ratio",
            worst_h_ratio,
            RATIO_TOL,
        ));
    }
    if let Some(h) = &hexagon {
        invariants.push(Check::new("hexagon_radius", h.max_radius_error / r0, 1e-8));
        invariants.push(Check::new("hexagon_gaps", h.max_gap_error, 1e-8));
    }
    let last = steps.last().expect("at least one step");
    let result = json!({
        "triangle": triangle_json(&tri)?,
        "base": base,
        "steps": rows,
        "final_deviation": last.equilateral_deviation,
        "converged": hexagon.is_some(),
        "hexagon": hexagon,
    });
    Ok(Report::new(
        "iterate",
        seed,
        json!({
            "triangle": input_json(spec),
            "steps": opts.steps,
            "tol": opts.tol,
            "cap": opts.cap,
            "base": opts.base.map(|h| h.as_array()),
        }),
        result,
        invariants,
    ))
}
