//! Randomized verification harness: every module's invariants on sampled
//! triangles, parameters and points.

use std::f64::consts::{FRAC_PI_3, TAU};

use exparabolas::cubic::Side;
use exparabolas::focal::{altitude_residuals, closed_form_focus};
use exparabolas::iteration::orthocenter_ratio;
use exparabolas::sampling::{random_admissible_point, random_parameter, random_triangle};
use exparabolas::{
    admissible, affine_ratio, axis_cubic_roots, cevian_point, contraction_ratio, focal_triangle,
    h_invariant, iterate, limit_hexagon, max_cubic_coeffs, max_exparabola_roots, opposite_vertex,
    perpendicularity_check, solve_cubic, steiner_residual, tangency_points, x_exparabolas,
    Exparabola, GeometryError, Homogeneous3, Point2, Triangle, Vertex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::oracle::{self as o, P};
use crate::report::{Check, Report};

/// Everything a trial draws from its random stream. Serialized for replay.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub seed: u64,
    pub trial: u64,
    pub vertices: [[f64; 2]; 3],
    /// Exparabola parameter.
    pub t: f64,
    /// Normalized admissible point.
    pub x: [f64; 3],
    /// Curve parameter for pointwise checks.
    pub u: f64,
    /// Direct isometry: rotation angle and translation.
    pub rotation: f64,
    pub shift: [f64; 2],
}

impl Sample {
    /// Trial `trial` of the run with `seed`; each trial owns ChaCha stream
    /// `trial`, so samples do not depend on scheduling.
    pub fn draw(seed: u64, trial: u64) -> Sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let tri = random_triangle(&mut rng);
        let t = random_parameter(&mut rng, -10.0, 10.0);
        let x = random_admissible_point(&mut rng, 0.95);
        Sample {
            seed,
            trial,
            vertices: tri.vertices().map(|p| [p.x, p.y]),
            t,
            x: x.as_array(),
            u: rng.random_range(-1.0..2.0),
            rotation: rng.random_range(0.0..TAU),
            shift: [rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)],
        }
    }

    fn triangle(&self) -> Result<Triangle, GeometryError> {
        let p = self.vertices.map(|[x, y]| Point2::new(x, y));
        Triangle::new(p[0], p[1], p[2])
    }
}

/// Absolute rounding allowance for `|F - V| = ϱ/2` on sharply curved
/// parabolas, in ulps of the coordinate scale times `(1 + |u_V|)²`.
pub const ROUNDING_FLOOR_ULPS: f64 = 100.0;

const FOCUS_VERTEX_TOL: f64 = 1e-10;

/// `(name, tolerance)` of every check, in report order.
pub const CHECKS: &[(&str, f64)] = &[
    ("geometry.euler_line", 1e-12),
    ("geometry.barycentric_round_trip", 1e-12),
    ("geometry.centroid_admissible", 0.0),
    ("geometry.affine_ratio_invariance", 1e-9),
    ("parabola.de_casteljau", 1e-13),
    ("parabola.focus_directrix", 1e-10),
    ("parabola.focus_vertex_half_parameter", FOCUS_VERTEX_TOL),
    ("parabola.curvature_oracle", 1e-12),
    ("parabola.isometry_equivariance", 1e-10),
    ("parabola.reversal_invariance", 1e-10),
    ("exparabola.focus_on_circumcircle", 1e-10),
    ("exparabola.ceva", 1e-12),
    ("exparabola.steiner_ellipse", 1e-12),
    ("exparabola.tangency_double_contact", 1e-10),
    ("exparabola.opposite_vertex", 0.0),
    ("cubic.interlacing", 0.0),
    ("cubic.local_maximality", 0.0),
    ("cubic.root_residual", 1e-12),
    ("cubic.sign_pattern", 0.0),
    ("cubic.centroid_coincidence", 1e-10),
    ("focal.orthocenter", 1e-9),
    ("focal.h_invariant", 1e-9),
    ("focal.perpendicularity", 1e-9),
    ("focal.foci_on_circumcircle", 1e-10),
    ("focal.altitudes", 1e-9),
    ("focal.euler_line", 1e-9),
    ("focal.focus_cross_oracle", 1e-10),
    ("iteration.contraction_ratio", 1e-8),
    ("iteration.orthocenter_follows_centroid", 1e-9),
    ("iteration.circumcircle_drift", 1e-9),
    ("iteration.hexagon", 1e-8),
    ("trial.error", 0.0),
];

/// Residual of every check for one sample, in [`CHECKS`] order. A trial
/// whose computation fails reports `trial.error = 1` and NaN elsewhere.
pub fn run_sample(s: &Sample) -> (Vec<f64>, Option<String>) {
    match residuals(s) {
        Ok(mut v) => {
            v.push(0.0);
            (v, None)
        }
        Err(e) => {
            let mut v = vec![f64::NAN; CHECKS.len() - 1];
            v.push(1.0);
            (v, Some(e.to_string()))
        }
    }
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn residuals(s: &Sample) -> Result<Vec<f64>, GeometryError> {
    let tri = s.triangle()?;
    let [a, b, c] = o::tri_points(&tri);
    let (oc, r) = o::circle(&tri);
    let l = tri.side_lengths().longest();
    let x = Homogeneous3::new(s.x[0], s.x[1], s.x[2]);
    let mut out = Vec::with_capacity(CHECKS.len());

    // core geometry
    let ctr = tri.centers()?;
    let euler = o::sub(
        o::sub(o::p(ctr.orthocenter), o::p(ctr.circumcenter)),
        o::scale(o::sub(o::p(ctr.centroid), o::p(ctr.circumcenter)), 3.0),
    );
    out.push(o::norm(euler) / r);
    let xc = tri.bary_to_cartesian(x)?;
    let w = tri.cartesian_to_bary(xc);
    let back = tri.bary_to_cartesian(w)?;
    out.push(back.distance(xc) / ((xc.x.abs() + xc.y.abs()).max(1.0) + l * w.max_abs()));
    out.push(flag(admissible(tri.cartesian_to_bary(tri.centroid()))));
    {
        // Z with AZ = t ZB on line AB, moved by the sample's isometry
        let t = s.t;
        let z = Point2::new((a[0] + t * b[0]) / (1.0 + t), (a[1] + t * b[1]) / (1.0 + t));
        let iso = isometry(s);
        let r0 = affine_ratio(tri.vertex_a(), tri.vertex_b(), z)?;
        let r1 = affine_ratio(iso(tri.vertex_a()), iso(tri.vertex_b()), iso(z))?;
        out.push((r1 - r0).abs().max((r0 - t).abs()) / (1.0 + t.abs()));
    }

    // parabola, on the exparabola of the sample
    let ex = Exparabola::new(&tri, s.t)?;
    let curve = ex.curve;
    let cp = o::controls(&curve);
    let size = o::size(cp);
    let u = s.u;
    let q = curve.eval(u);
    out.push(
        o::dist(o::p(curve.de_casteljau(u).point), o::p(q)).max(o::dist(o::p(q), o::bezier(cp, u)))
            / (size * (1.0 + u.abs()).powi(2)),
    );
    let f = curve.focus()?;
    let dir = curve.directrix()?;
    let rho2 = curve.squared_parameter()?;
    let rho = rho2.sqrt();
    // positions scale with the control net or, for flat parabolas, with ϱ
    let len = size.max(rho);
    let cond = o::curvature_condition(cp);
    out.push((q.distance(f) - dir.distance(q)).abs() / (len * (1.0 + u.abs()).powi(2)));
    let v = curve.vertex()?;
    let uv = curve.vertex_param()?;
    let floor = ROUNDING_FLOOR_ULPS * f64::EPSILON * len * (1.0 + uv.abs()).powi(2);
    out.push((f.distance(v) - rho / 2.0).abs() / (rho / 2.0 + floor / FOCUS_VERTEX_TOL));
    let k = o::curvature(cp, o::vertex_param(cp));
    out.push((1.0 / (k * k) - rho2).abs() / (rho2 * cond));
    {
        let iso = isometry(s);
        let moved = curve.map(&iso);
        let scale = len + o::norm(s.shift);
        let mut e: f64 = 0.0;
        e = e.max(moved.focus()?.distance(iso(f)) / scale);
        e = e.max(moved.vertex()?.distance(iso(v)) / scale);
        e = e.max((moved.squared_parameter()? - rho2).abs() / (rho2 * cond));
        out.push(e);
        let rev = curve.reversed();
        let mut e: f64 = 0.0;
        e = e.max(rev.focus()?.distance(f) / len);
        e = e.max(rev.vertex()?.distance(v) / len);
        e = e.max((rev.squared_parameter()? - rho2).abs() / (rho2 * cond));
        let (l0, l1) = (curve.axis_line()?, rev.axis_line()?);
        e = e.max(
            l0.direction.cross(l1.direction).abs() / (l0.direction.norm() * l1.direction.norm()),
        );
        e = e.max(l0.distance(l1.point) / len);
        out.push(e);
    }

    // exparabola
    out.push((o::dist(o::p(ex.focus()), oc) - r).abs() / r);
    let tp = tangency_points(s.t)?;
    {
        let ratio = |h: Homogeneous3, from: usize, to: usize| h.as_array()[to] / h.as_array()[from];
        let prod = ratio(tp.on_bc, 1, 2) * ratio(tp.on_ca, 2, 0) * ratio(tp.on_ab, 0, 1);
        out.push((prod - 1.0).abs() / (1.0 + s.t.abs()).powi(3));
    }
    out.push(steiner_residual(cevian_point(s.t)?)?);
    {
        let n = [-(b[1] - a[1]), b[0] - a[0]];
        let g: Vec<f64> = cp.iter().map(|q| o::dot(n, o::sub(*q, a))).collect();
        let mag = o::norm(n)
            * cp.iter()
                .chain([&a])
                .map(|q| o::norm(*q))
                .fold(0.0, f64::max);
        out.push((g[1] * g[1] - g[0] * g[2]).abs() / (mag * mag));
    }
    {
        let inside = |h: Homogeneous3| h.as_array().iter().all(|w| w / h.sum() >= 0.0);
        let expect = if inside(tp.on_ab) {
            Vertex::C
        } else if inside(tp.on_bc) {
            Vertex::A
        } else {
            Vertex::B
        };
        out.push(flag(
            opposite_vertex(s.t)? == expect && (expect != Vertex::B || inside(tp.on_ca)),
        ));
    }

    // cubic roots
    let ec = max_cubic_coeffs(&tri, Side::C);
    let raw = solve_cubic(ec)?;
    let interlaced = raw.is_three_real()
        && raw.reals[0] < 0.0
        && 0.0 < raw.reals[1]
        && raw.reals[1] < 1.0
        && raw.reals[2] > 1.0;
    out.push(flag(interlaced));
    let roots = max_exparabola_roots(&tri)?;
    {
        let mut ok = true;
        for t in roots {
            let st = 1e-4 * (1.0 + t.abs());
            let r0 = Exparabola::new(&tri, t)?.squared_parameter();
            ok &= Exparabola::new(&tri, t + st)?.squared_parameter() < r0;
            ok &= Exparabola::new(&tri, t - st)?.squared_parameter() < r0;
        }
        out.push(flag(ok));
    }
    out.push(
        roots
            .iter()
            .map(|&t| ec.eval(t).abs() / ec.residual_scale(t))
            .fold(0.0, f64::max),
    );
    {
        let big = 1e3 * (1.0 + roots[2].abs() + roots[0].abs());
        out.push(flag(
            ec.eval(-big) < 0.0 && ec.eval(0.0) > 0.0 && ec.eval(1.0) < 0.0 && ec.eval(big) > 0.0,
        ));
    }
    {
        let f = axis_cubic_roots(&tri, Homogeneous3::new(1.0, 1.0, 1.0))?;
        let worst = if f.is_three_real() {
            f.reals
                .iter()
                .zip(roots)
                .map(|(p, q)| (p - q).abs() / q.abs())
                .fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        out.push(worst);
    }

    // focal
    let fr = focal_triangle(&tri, x)?;
    let foci: [P; 3] = fr.foci.map(o::p);
    out.push(o::dist(o::orthocenter(foci[0], foci[1], foci[2]), o::p(xc)) / r);
    let [w_, u_, v_] = fr.params.map(|q| q.re);
    out.push(h_invariant(&tri, u_, v_, w_)?.abs());
    out.push(
        perpendicularity_check(&tri, u_, v_, w_)?
            .iter()
            .fold(0.0, |m: f64, c| m.max(c.abs())),
    );
    out.push(
        foci.iter()
            .map(|f| (o::dist(*f, oc) - r).abs() / r)
            .fold(0.0, f64::max),
    );
    {
        let xe = x_exparabolas(&tri, x)?;
        let axes = xe.parabolas.map(|e| {
            let c = o::controls(&e.curve);
            (o::bezier(c, o::vertex_param(c)), o::bezier_d2(c))
        });
        let lib = altitude_residuals(&xe.parabolas, &fr.foci);
        let lib_worst = lib
            .through_vertex
            .iter()
            .map(|d| d / r)
            .chain(lib.perpendicular.iter().map(|c| c.abs()))
            .fold(0.0, f64::max);
        out.push(o::altitude_residual(foci, axes, r).max(lib_worst));
    }
    {
        let g = o::centroid(a, b, c);
        let gf = focal_triangle(&tri, Homogeneous3::new(1.0, 1.0, 1.0))?;
        let [fa, fb, fc] = gf.foci.map(o::p);
        let pts = [
            o::circumcenter(fa, fb, fc),
            o::centroid(fa, fb, fc),
            o::orthocenter(fa, fb, fc),
        ];
        let d = o::sub(g, oc);
        let res = if o::norm(d) > 1e-6 * r {
            pts.iter()
                .map(|q| o::line_distance(oc, d, *q) / r)
                .fold(0.0, f64::max)
        } else {
            pts.iter().map(|q| o::dist(*q, oc) / r).fold(0.0, f64::max)
        };
        out.push(res);
    }
    out.push(closed_form_focus(&tri, s.t).distance(ex.focus()) / r);

    // iteration
    let steps = iterate(&tri, 20)?;
    let (mut ratio, mut follow, mut drift) = (0.0f64, 0.0f64, 0.0f64);
    for pair in steps.windows(2) {
        for q in [
            contraction_ratio(&pair[0], &pair[1]),
            orthocenter_ratio(&pair[0], &pair[1]),
        ] {
            match q {
                Ok(q) => ratio = ratio.max((q - 1.0 / 3.0).abs()),
                Err(GeometryError::AlreadyConverged) => {}
                Err(e) => return Err(e),
            }
        }
        let [fa, fb, fc] = o::tri_points(&pair[1].tri);
        let [pa, pb, pc] = o::tri_points(&pair[0].tri);
        follow = follow.max(o::dist(o::orthocenter(fa, fb, fc), o::centroid(pa, pb, pc)) / r);
        let oi = o::circumcenter(fa, fb, fc);
        drift = drift
            .max(o::dist(oi, oc) / r)
            .max((o::dist(oi, fa) - r).abs() / r);
    }
    out.push(ratio);
    out.push(follow);
    out.push(drift);
    let hex = limit_hexagon(&tri, 1e-9)?;
    let mut angles: Vec<f64> = hex
        .vertices
        .iter()
        .map(|v| (v.y - oc[1]).atan2(v.x - oc[0]))
        .collect();
    angles.sort_by(f64::total_cmp);
    let mut hex_err: f64 = 0.0;
    for i in 0..6 {
        hex_err = hex_err.max((o::dist(o::p(hex.vertices[i]), oc) - r).abs() / r);
        let gap = (angles[(i + 1) % 6] - angles[i]).rem_euclid(TAU);
        hex_err = hex_err.max((gap - FRAC_PI_3).abs());
    }
    out.push(hex_err);

    debug_assert_eq!(out.len(), CHECKS.len() - 1);
    Ok(out)
}

fn isometry(s: &Sample) -> impl Fn(Point2) -> Point2 {
    let (sn, cs) = s.rotation.sin_cos();
    let [dx, dy] = s.shift;
    move |q: Point2| Point2::new(cs * q.x - sn * q.y + dx, sn * q.x + cs * q.y + dy)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub tolerance: f64,
    pub worst: f64,
    pub worst_trial: u64,
    pub median: f64,
    pub p99: f64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailingSample {
    pub sample: Sample,
    pub failed: Vec<String>,
    pub error: Option<String>,
}

/// Samples kept in a failing report.
pub const MAX_FAILING_SAMPLES: usize = 20;

fn finite(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        f64::MAX
    }
}

fn summarize(
    samples: &[Sample],
    outcomes: &[(Vec<f64>, Option<String>)],
) -> (Vec<CheckSummary>, Vec<FailingSample>) {
    let mut summaries = Vec::with_capacity(CHECKS.len());
    for (k, (name, tol)) in CHECKS.iter().enumerate() {
        let mut vals: Vec<(f64, u64)> = outcomes
            .iter()
            .zip(samples)
            .map(|((v, _), s)| (finite(v[k]), s.trial))
            .collect();
        let failures = vals.iter().filter(|(v, _)| v.is_nan() || *v > *tol).count() as u64;
        vals.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        let (worst, worst_trial) = *vals.last().expect("at least one trial");
        let pick = |q: f64| vals[((vals.len() - 1) as f64 * q).round() as usize].0;
        summaries.push(CheckSummary {
            name: name.to_string(),
            tolerance: *tol,
            worst,
            worst_trial,
            median: pick(0.5),
            p99: pick(0.99),
            failures,
        });
    }
    let failing = outcomes
        .iter()
        .zip(samples)
        .filter_map(|((v, err), s)| {
            let failed: Vec<String> = CHECKS
                .iter()
                .zip(v)
                .filter(|((_, tol), r)| r.is_nan() || **r > *tol)
                .map(|((name, _), _)| name.to_string())
                .collect();
            (!failed.is_empty()).then(|| FailingSample {
                sample: *s,
                failed,
                error: err.clone(),
            })
        })
        .take(MAX_FAILING_SAMPLES)
        .collect();
    (summaries, failing)
}

fn report(command_input: serde_json::Value, seed: u64, samples: &[Sample]) -> Report {
    let outcomes: Vec<(Vec<f64>, Option<String>)> = samples.par_iter().map(run_sample).collect();
    let (summaries, failing) = summarize(samples, &outcomes);
    let invariants = summaries
        .iter()
        .map(|c| Check::new(c.name.clone(), c.worst, c.tolerance))
        .collect();
    let result = json!({
        "trials": samples.len(),
        "checks": summaries,
        "failing_samples": failing,
    });
    Report::new("verify", seed, command_input, result, invariants)
}

/// Runs `trials` samples drawn from `seed`.
pub fn cmd_verify(trials: u64, seed: u64) -> Report {
    let samples: Vec<Sample> = (0..trials).map(|i| Sample::draw(seed, i)).collect();
    report(json!({"trials": trials, "seed": seed}), seed, &samples)
}

/// Re-runs serialized samples (a single sample or a list).
pub fn cmd_replay(samples: &[Sample]) -> Report {
    let seed = samples.first().map_or(0, |s| s.seed);
    report(json!({"replay": samples}), seed, samples)
}
