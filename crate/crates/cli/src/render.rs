//! SVG figures of the constructions.

use std::fmt::Write as _;

use exparabolas::{
    focal_triangle, iterate, limit_hexagon, max_exparabolas, x_exparabolas, Exparabola,
    Homogeneous3, Point2, Triangle, Vertex,
};

use crate::error::{CliError, CliResult};
use crate::input::TriangleSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    /// One exparabola with its focus, Steiner circumellipse and circumcircle.
    Exparabola,
    /// The three max-exparabolas and their axes.
    Max,
    /// The admissible region and the exparabolas with axes through `X`.
    Anticomplementary,
    /// The focal triangle of the max-exparabolas with its altitudes.
    Focal,
    /// Four steps of the iterated focal triangle sequence.
    Sequence,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub figure: Figure,
    /// Parameter for the `exparabola` figure.
    pub t: f64,
    /// Point for the `anticomplementary` figure.
    pub x: Homogeneous3,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            figure: Figure::Max,
            t: 0.35,
            x: Homogeneous3::new(1.0, 1.0, 1.0),
        }
    }
}

/// Width of the drawing area in SVG user units.
const WIDTH: f64 = 1000.0;
const MARGIN: f64 = 0.05;

const BLUE: &str = "#1f77b4";
const ORANGE: &str = "#ff7f0e";
const GREEN: &str = "#2ca02c";
const RED: &str = "#d62728";
const PURPLE: &str = "#9467bd";
const GRAY: &str = "#8c8c8c";
const CURVES: [&str; 3] = [RED, GREEN, PURPLE];

#[derive(Debug, Clone, Copy)]
struct BBox {
    min: [f64; 2],
    max: [f64; 2],
}

impl BBox {
    fn new() -> Self {
        BBox {
            min: [f64::INFINITY; 2],
            max: [f64::NEG_INFINITY; 2],
        }
    }

    fn add(&mut self, p: Point2) {
        self.min = [self.min[0].min(p.x), self.min[1].min(p.y)];
        self.max = [self.max[0].max(p.x), self.max[1].max(p.y)];
    }

    fn add_circle(&mut self, c: Point2, r: f64) {
        self.add(Point2::new(c.x - r, c.y - r));
        self.add(Point2::new(c.x + r, c.y + r));
    }

    fn padded(&self) -> BBox {
        let w = (self.max[0] - self.min[0]).max(self.max[1] - self.min[1]);
        let m = MARGIN * w;
        BBox {
            min: [self.min[0] - m, self.min[1] - m],
            max: [self.max[0] + m, self.max[1] + m],
        }
    }
}

/// World-to-SVG map: uniform scale, y flipped.
#[derive(Debug, Clone, Copy)]
struct View {
    min_x: f64,
    max_y: f64,
    k: f64,
    w: f64,
    h: f64,
}

impl View {
    fn fit(b: &BBox) -> View {
        let b = b.padded();
        let (bw, bh) = (b.max[0] - b.min[0], b.max[1] - b.min[1]);
        let k = WIDTH / bw.max(bh);
        View {
            min_x: b.min[0],
            max_y: b.max[1],
            k,
            w: bw * k,
            h: bh * k,
        }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        ((p.x - self.min_x) * self.k, (self.max_y - p.y) * self.k)
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

/// Elements of one panel, in SVG user units of that panel.
struct Panel {
    view: View,
    id: String,
    body: String,
}

impl Panel {
    fn new(view: View, id: &str) -> Self {
        Panel {
            view,
            id: id.to_string(),
            body: String::new(),
        }
    }

    fn xy(&self, p: Point2) -> String {
        let (x, y) = self.view.map(p);
        format!("{},{}", num(x), num(y))
    }

    fn polygon(&mut self, pts: &[Point2], stroke: &str, fill: &str, width: f64) {
        let list: Vec<String> = pts.iter().map(|p| self.xy(*p)).collect();
        let _ = writeln!(
            self.body,
            r#"<polygon points="{}" fill="{fill}" stroke="{stroke}" stroke-width="{}" stroke-linejoin="round"/>"#,
            list.join(" "),
            num(width)
        );
    }

    fn line(&mut self, p: Point2, q: Point2, stroke: &str, width: f64, dash: bool) {
        let (x1, y1) = self.view.map(p);
        let (x2, y2) = self.view.map(q);
        let dash = if dash {
            r#" stroke-dasharray="8,6""#
        } else {
            ""
        };
        let _ = writeln!(
            self.body,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="{}"{dash}/>"#,
            num(x1),
            num(y1),
            num(x2),
            num(y2),
            num(width)
        );
    }

    /// Infinite line through `p` with direction `d`, cut well outside the view.
    fn full_line(&mut self, p: Point2, d: [f64; 2], stroke: &str, width: f64, dash: bool) {
        let n = d[0].hypot(d[1]);
        let reach = 4.0 * self.view.w.max(self.view.h) / self.view.k;
        let s = reach / n;
        let a = Point2::new(p.x - s * d[0], p.y - s * d[1]);
        let b = Point2::new(p.x + s * d[0], p.y + s * d[1]);
        self.line(a, b, stroke, width, dash);
    }

    fn circle(&mut self, c: Point2, r: f64, stroke: &str, width: f64) {
        let (x, y) = self.view.map(c);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="{stroke}" stroke-width="{}"/>"#,
            num(x),
            num(y),
            num(r * self.view.k),
            num(width)
        );
    }

    fn dot(&mut self, p: Point2, fill: &str, label: &str) {
        let (x, y) = self.view.map(p);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{}" cy="{}" r="5" fill="{fill}"/>"#,
            num(x),
            num(y)
        );
        if !label.is_empty() {
            let _ = writeln!(
                self.body,
                r#"<text x="{}" y="{}" font-family="serif" font-size="22" fill="{fill}">{label}</text>"#,
                num(x + 8.0),
                num(y - 8.0)
            );
        }
    }

    /// Ellipse `c + cos θ u + sin θ v`.
    fn ellipse(&mut self, c: Point2, u: [f64; 2], v: [f64; 2], stroke: &str, width: f64) {
        // semi-axes of the image of the unit circle under [u v]
        let p = u[0] * u[0] + v[0] * v[0];
        let q = u[0] * u[1] + v[0] * v[1];
        let r = u[1] * u[1] + v[1] * v[1];
        let mid = 0.5 * (p + r);
        let rad = (0.25 * (p - r) * (p - r) + q * q).sqrt();
        let (l1, l2) = (mid + rad, (mid - rad).max(0.0));
        let angle = 0.5 * (2.0 * q).atan2(p - r);
        let (x, y) = self.view.map(c);
        let _ = writeln!(
            self.body,
            r#"<ellipse cx="{}" cy="{}" rx="{}" ry="{}" transform="rotate({} {} {})" fill="none" stroke="{stroke}" stroke-width="{}"/>"#,
            num(x),
            num(y),
            num(l1.sqrt() * self.view.k),
            num(l2.sqrt() * self.view.k),
            num(-angle.to_degrees()),
            num(x),
            num(y),
            num(width)
        );
    }

    /// Exparabola arc as one quadratic segment covering all three tangency
    /// points with some overshoot on both ends.
    fn exparabola(&mut self, e: &Exparabola, stroke: &str, width: f64) {
        let (p0, p1, p2) = (e.curve.p0, e.curve.p1, e.curve.p2);
        let a = e.tri.vertex_a();
        let n = [-(e.tri.vertex_b().y - a.y), e.tri.vertex_b().x - a.x];
        let g = |p: Point2| n[0] * (p.x - a.x) + n[1] * (p.y - a.y);
        let (g0, g1, g2) = (g(p0), g(p1), g(p2));
        let den = g0 - 2.0 * g1 + g2;
        let u_ab = if den != 0.0 { (g0 - g1) / den } else { 0.5 };
        let (lo, hi) = (u_ab.min(0.0), u_ab.max(1.0));
        let span = hi - lo;
        let (u0, u1) = (lo - 0.6 * span, hi + 0.6 * span);
        let blossom = |s: f64, t: f64| {
            let w0 = (1.0 - s) * (1.0 - t);
            let w1 = (1.0 - s) * t + s * (1.0 - t);
            let w2 = s * t;
            Point2::new(
                w0 * p0.x + w1 * p1.x + w2 * p2.x,
                w0 * p0.y + w1 * p1.y + w2 * p2.y,
            )
        };
        let (q0, q1, q2) = (blossom(u0, u0), blossom(u0, u1), blossom(u1, u1));
        let _ = writeln!(
            self.body,
            r#"<path d="M {} Q {} {}" fill="none" stroke="{stroke}" stroke-width="{}"/>"#,
            self.xy(q0),
            self.xy(q1),
            self.xy(q2),
            num(width)
        );
    }

    fn axis(&mut self, e: &Exparabola, stroke: &str) {
        let l = e.axis_line();
        self.full_line(l.point, [l.direction.dx, l.direction.dy], stroke, 1.5, true);
    }

    fn triangle(&mut self, tri: &Triangle, stroke: &str, labels: bool) {
        self.polygon(&tri.vertices(), stroke, "none", 2.5);
        if labels {
            for v in Vertex::ALL {
                self.dot(tri.vertex(v), "black", &v.to_string());
            }
        }
    }

    fn finish(&self, x: f64, y: f64) -> String {
        let (w, h) = (num(self.view.w), num(self.view.h));
        format!(
            "<svg x=\"{}\" y=\"{}\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
             <defs><clipPath id=\"{id}\"><rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\"/></clipPath></defs>\n\
             <rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n\
             <g clip-path=\"url(#{id})\">\n{}</g>\n</svg>\n",
            num(x),
            num(y),
            self.body,
            id = self.id
        )
    }
}

fn document(width: f64, height: f64, panels: &[(f64, f64, &Panel)]) -> String {
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(width),
        h = num(height)
    );
    for (x, y, p) in panels {
        s.push_str(&p.finish(*x, *y));
    }
    s.push_str("</svg>\n");
    s
}

fn single(panel: Panel) -> String {
    document(panel.view.w, panel.view.h, &[(0.0, 0.0, &panel)])
}

fn bary(tri: &Triangle, w: [f64; 3]) -> CliResult<Point2> {
    Ok(tri.bary_to_cartesian(Homogeneous3::new(w[0], w[1], w[2]))?)
}

/// Conjugate semi-diameters of the Steiner circumellipse.
fn steiner_axes(tri: &Triangle) -> (Point2, [f64; 2], [f64; 2]) {
    let [a, b, c] = tri.vertices();
    let g = tri.centroid();
    let s = 1.0 / 3f64.sqrt();
    (
        g,
        [a.x - g.x, a.y - g.y],
        [s * (c.x - b.x), s * (c.y - b.y)],
    )
}

fn steiner_box(b: &mut BBox, tri: &Triangle) {
    let (g, u, v) = steiner_axes(tri);
    b.add_circle(g, u[0].hypot(u[1]) + v[0].hypot(v[1]));
}

fn exparabola_figure(tri: &Triangle, t: f64) -> CliResult<String> {
    let e = Exparabola::new(tri, t)?;
    let (o, r) = tri.circumcircle()?;
    let f = e.focus();
    let tp = e.tangency_points();
    let touch = [
        bary(tri, tp.on_bc.as_array())?,
        bary(tri, tp.on_ca.as_array())?,
        bary(tri, tp.on_ab.as_array())?,
    ];
    let cev = bary(tri, e.cevian_point().as_array())?;
    let mut b = BBox::new();
    b.add_circle(o, r);
    steiner_box(&mut b, tri);
    for p in touch.iter().chain([&f, &cev]) {
        b.add(*p);
    }
    let mut pn = Panel::new(View::fit(&b), "clip-exparabola");
    pn.circle(o, r, GRAY, 1.5);
    let (g, u, v) = steiner_axes(tri);
    pn.ellipse(g, u, v, GREEN, 1.5);
    for v in Vertex::ALL {
        let p = tri.vertex(v);
        let q = tri.vertex(Vertex::ALL[(v.index() + 1) % 3]);
        pn.full_line(p, [q.x - p.x, q.y - p.y], GRAY, 1.0, false);
    }
    for (v, q) in Vertex::ALL.iter().zip(touch) {
        pn.line(tri.vertex(*v), cev, GREEN, 1.0, true);
        pn.dot(q, BLUE, "");
    }
    pn.exparabola(&e, RED, 2.5);
    pn.triangle(tri, BLUE, true);
    pn.dot(f, RED, "F");
    pn.dot(cev, GREEN, "");
    Ok(single(pn))
}

fn max_figure(tri: &Triangle) -> CliResult<String> {
    let ex = max_exparabolas(tri)?;
    let (o, r) = tri.circumcircle()?;
    let mut b = BBox::new();
    b.add_circle(o, r);
    let mut pn = Panel::new(View::fit(&b), "clip-max");
    pn.circle(o, r, GRAY, 1.5);
    for (e, col) in ex.iter().zip(CURVES) {
        pn.exparabola(e, col, 2.0);
        pn.axis(e, col);
    }
    pn.triangle(tri, BLUE, true);
    for (e, (col, v)) in ex.iter().zip(CURVES.iter().zip(Vertex::ALL)) {
        pn.dot(e.focus(), col, &format!("F{v}"));
    }
    pn.dot(tri.centroid(), "black", "G");
    Ok(single(pn))
}

fn anticomplementary_figure(tri: &Triangle, x: Homogeneous3) -> CliResult<String> {
    let anti = [
        bary(tri, [-1.0, 1.0, 1.0])?,
        bary(tri, [1.0, -1.0, 1.0])?,
        bary(tri, [1.0, 1.0, -1.0])?,
    ];
    let xp = tri.bary_to_cartesian(x)?;
    let mut b = BBox::new();
    for p in anti.iter().chain([&xp]) {
        b.add(*p);
    }
    let mut pn = Panel::new(View::fit(&b), "clip-anticomplementary");
    pn.polygon(&anti, GRAY, "#ececec", 1.5);
    if exparabolas::admissible(x) {
        let xe = x_exparabolas(tri, x)?;
        for (e, col) in xe.parabolas.iter().zip(CURVES) {
            pn.exparabola(e, col, 2.0);
            pn.axis(e, col);
        }
    }
    pn.triangle(tri, BLUE, true);
    pn.dot(xp, "black", "X");
    Ok(single(pn))
}

fn focal_figure(tri: &Triangle) -> CliResult<String> {
    let ex = max_exparabolas(tri)?;
    let fr = focal_triangle(tri, Homogeneous3::new(1.0, 1.0, 1.0))?;
    let (o, r) = tri.circumcircle()?;
    let mut b = BBox::new();
    b.add_circle(o, r);
    let mut pn = Panel::new(View::fit(&b), "clip-focal");
    pn.circle(o, r, GRAY, 1.5);
    for (e, col) in ex.iter().zip(CURVES) {
        pn.exparabola(e, col, 1.2);
        pn.axis(e, col);
    }
    pn.polygon(&fr.foci, ORANGE, "none", 2.5);
    pn.triangle(tri, BLUE, true);
    for (f, v) in fr.foci.iter().zip(Vertex::ALL) {
        pn.dot(*f, ORANGE, &format!("F{v}"));
    }
    pn.dot(tri.centroid(), "black", "G");
    Ok(single(pn))
}

fn sequence_figure(tri: &Triangle) -> CliResult<String> {
    let steps = iterate(tri, 4)?;
    let hex = limit_hexagon(tri, 1e-9)?;
    let (o, r) = tri.circumcircle()?;
    let mut b = BBox::new();
    b.add_circle(o, r);
    let view = View::fit(&b);
    let limits: Vec<Vec<Point2>> = (0..2u8)
        .map(|par| {
            hex.vertices
                .iter()
                .zip(hex.parity)
                .filter(|(_, p)| *p == par)
                .map(|(v, _)| *v)
                .collect()
        })
        .collect();
    let mut panels = Vec::new();
    for i in 0..4 {
        let mut pn = Panel::new(view, &format!("clip-step-{i}"));
        pn.circle(o, r, GRAY, 1.0);
        for l in &limits {
            pn.polygon(l, GRAY, "none", 1.0);
        }
        pn.polygon(&steps[i].tri.vertices(), BLUE, "none", 2.5);
        pn.polygon(&steps[i + 1].tri.vertices(), ORANGE, "none", 2.5);
        pn.dot(steps[i].centroid, BLUE, &format!("G{i}"));
        pn.dot(steps[i].orthocenter, BLUE, &format!("H{i}"));
        pn.dot(steps[i + 1].orthocenter, ORANGE, &format!("H{}", i + 1));
        panels.push(pn);
    }
    let gap = 20.0;
    let (w, h) = (view.w, view.h);
    let placed: Vec<(f64, f64, &Panel)> = panels
        .iter()
        .enumerate()
        .map(|(i, p)| ((i % 2) as f64 * (w + gap), (i / 2) as f64 * (h + gap), p))
        .collect();
    Ok(document(2.0 * w + gap, 2.0 * h + gap, &placed))
}

/// Renders a figure as a standalone SVG 1.1 document.
pub fn render(spec: &TriangleSpec, opts: RenderOptions) -> CliResult<String> {
    let tri = spec.triangle()?;
    match opts.figure {
        Figure::Exparabola => {
            if !opts.t.is_finite() {
                return Err(CliError::Input(format!("invalid parameter t = {}", opts.t)));
            }
            exparabola_figure(&tri, opts.t)
        }
        Figure::Max => max_figure(&tri),
        Figure::Anticomplementary => anticomplementary_figure(&tri, opts.x),
        Figure::Focal => focal_figure(&tri),
        Figure::Sequence => sequence_figure(&tri),
    }
}
