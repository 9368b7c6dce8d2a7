use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use exparabola_cli::verify::{run_sample, Sample};
use serde_json::Value;

const SCALENE: &str = "[[0.1,0.2],[1.7,-0.3],[0.6,1.4]]";
const EQUILATERAL: &str = r#"{"a": 2, "b": 2, "c": 2}"#;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_exparabola"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

fn all_pass(report: &Value) -> bool {
    report["pass"].as_bool().unwrap()
        && report["invariants"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["pass"].as_bool().unwrap())
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("exparabola-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn max_report_passes_and_echoes_input() {
    let r = json(&run(&["max"], SCALENE));
    assert!(all_pass(&r), "{r:#}");
    assert_eq!(r["command"], "max");
    assert_eq!(r["tool"]["name"], "exparabola");
    assert_eq!(r["seed"], 0);
    assert_eq!(
        r["input"]["triangle"],
        serde_json::from_str::<Value>(SCALENE).unwrap()
    );
    assert_eq!(r["result"]["tangency_points"].as_array().unwrap().len(), 9);
    assert_eq!(r["result"]["exparabolas"].as_array().unwrap().len(), 3);
}

#[test]
fn xfocal_at_centroid_matches_max() {
    let m = json(&run(&["max"], SCALENE));
    let x = json(&run(&["xfocal", "--x", "1,1,1"], SCALENE));
    assert!(all_pass(&x), "{x:#}");
    let a = floats(&m["result"]["roots"]);
    let b = floats(&x["result"]["roots"]["real"]);
    for (p, q) in a.iter().zip(&b) {
        assert!((p - q).abs() <= 1e-10 * q.abs(), "{a:?} vs {b:?}");
    }
}

#[test]
fn xfocal_admissible_point_has_orthocenter_x() {
    let x = json(&run(&["xfocal", "--x", "0.5,0.3,0.2"], SCALENE));
    assert!(all_pass(&x));
    assert_eq!(x["result"]["x"]["admissible"], true);
    assert!(
        x["result"]["orthocenter_residual_relative"]
            .as_f64()
            .unwrap()
            < 1e-9
    );
    let names: Vec<&str> = x["invariants"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"orthocenter_is_x") && names.contains(&"axes_are_altitudes"));
}

#[test]
fn xfocal_outside_region_flags_complex_pair() {
    let x = json(&run(&["xfocal", "--x", "3,-1,-1"], SCALENE));
    assert_eq!(x["result"]["complex"], true);
    assert_eq!(x["result"]["x"]["admissible"], false);
    assert!(x["result"]["roots"]["complex_pair"]["im"].as_f64().unwrap() > 0.0);
    assert!(x["result"]["max_imaginary"].as_f64().unwrap() > 0.0);
}

#[test]
fn iterate_equilateral_is_converged() {
    let r = json(&run(&["iterate", "--steps", "4"], EQUILATERAL));
    assert!(all_pass(&r), "{r:#}");
    let rows = r["result"]["steps"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for row in &rows[1..] {
        assert_eq!(row["ratio"], "converged");
    }
    assert!(r["result"]["hexagon"].is_object());
}

#[test]
fn iterate_scalene_contracts_by_a_third() {
    let r = json(&run(&["iterate", "--steps", "40"], SCALENE));
    assert!(all_pass(&r), "{r:#}");
    assert!(r["result"]["final_deviation"].as_f64().unwrap() < 1e-10);
    for row in r["result"]["steps"].as_array().unwrap().iter().skip(1) {
        if let Some(q) = row["ratio"].as_f64() {
            assert!((q - 1.0 / 3.0).abs() < 1e-8, "{q}");
        }
    }
    assert_eq!(r["result"]["converged"], true);
}

#[test]
fn experimental_base_point_runs_without_convergence_claims() {
    let r = json(&run(
        &["iterate", "--steps", "10", "--base", "0.5,0.3,0.2"],
        SCALENE,
    ));
    let names: Vec<&str> = r["invariants"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(!names.contains(&"contraction_ratio"));
    assert!(r["result"]["hexagon"].is_null());
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["max"], "not json")), 2);
    assert_eq!(code(&run(&["max"], "[[0,0],[1,1],[2,2]]")), 2);
    assert_eq!(code(&run(&["max"], r#"{"a": 1, "b": 1, "c": 3}"#)), 2);
    assert_eq!(code(&run(&["iterate", "--steps", "0"], SCALENE)), 2);
    assert_eq!(
        code(&run(&["iterate", "--steps", "50", "--cap", "20"], SCALENE)),
        4
    );
    assert_eq!(
        code(&run(&["max", "--in", "/nonexistent/spec.json"], "")),
        2
    );
    assert_eq!(
        code(&run(&["max", "--out", "/nonexistent/dir/r.json"], SCALENE)),
        2
    );
    // x0 + x1 = 0 drops the leading coefficient of the axis cubic
    assert_eq!(code(&run(&["xfocal", "--x", "1,-1,1"], SCALENE)), 3);
    let out = run(&["max"], "[[0,0],[1,1],[2,2]]");
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    for args in [
        &["max"][..],
        &["xfocal", "--x", "0.2,0.5,0.3"],
        &["iterate", "--steps", "12"],
    ] {
        let a = run(args, SCALENE);
        let b = run(args, SCALENE);
        assert_eq!(a.stdout, b.stdout);
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        let once = serde_json::to_string(&v).unwrap();
        let twice = serde_json::to_string(&serde_json::from_str::<Value>(&once).unwrap()).unwrap();
        assert_eq!(once, twice);
        // the report type itself reproduces the emitted bytes
        let r: exparabola_cli::Report = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(r.to_json(false).as_bytes(), &a.stdout[..]);
    }
}

#[test]
fn pretty_and_compact_carry_the_same_report() {
    let a: Value = json(&run(&["max", "--pretty"], SCALENE));
    let b: Value = json(&run(&["max", "--json"], SCALENE));
    assert_eq!(a, b);
}

#[test]
fn verify_small_run_and_seed_echo() {
    let started = std::time::Instant::now();
    let out = run(&["verify", "--trials", "1", "--seed", "3"], "");
    assert!(started.elapsed().as_secs_f64() < 1.0);
    let r = json(&out);
    assert!(all_pass(&r));
    assert_eq!(r["seed"], 3);
    assert_eq!(r["result"]["trials"], 1);
}

#[test]
fn replay_reproduces_residuals() {
    let s = Sample::draw(9, 4);
    let path = temp("sample.json");
    std::fs::write(&path, serde_json::to_string(&s).unwrap()).unwrap();
    let a = json(&run(&["verify", "--replay", path.to_str().unwrap()], ""));
    let b = json(&run(&["verify", "--replay", path.to_str().unwrap()], ""));
    assert_eq!(a, b);
    let (direct, _) = run_sample(&s);
    for (check, want) in a["result"]["checks"].as_array().unwrap().iter().zip(direct) {
        assert_eq!(
            check["worst"].as_f64().unwrap().to_bits(),
            want.to_bits(),
            "{check}"
        );
    }
}

#[test]
fn replay_of_a_broken_sample_fails_with_exit_1() {
    let mut s = Sample::draw(9, 4);
    s.vertices = [[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]];
    let path = temp("broken.json");
    std::fs::write(&path, serde_json::to_string(&[s]).unwrap()).unwrap();
    let out = run(&["verify", "--replay", path.to_str().unwrap()], "");
    assert_eq!(code(&out), 1);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failing = r["result"]["failing_samples"].as_array().unwrap();
    assert_eq!(failing.len(), 1);
    assert!(failing[0]["error"].is_string());

    // a failing report can itself be replayed
    let report = temp("report.json");
    std::fs::write(&report, &out.stdout).unwrap();
    assert_eq!(
        code(&run(&["verify", "--replay", report.to_str().unwrap()], "")),
        1
    );
}

fn svg(args: &[&str], spec: &str) -> String {
    let out = run(args, spec);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let s = String::from_utf8(out.stdout).unwrap();
    roxmltree::Document::parse(&s).unwrap();
    assert!(s.len() < 1 << 20);
    s
}

#[test]
fn every_figure_is_well_formed_svg() {
    for fig in [
        "exparabola",
        "max",
        "anticomplementary",
        "focal",
        "sequence",
    ] {
        let a = svg(&["render", "--figure", fig], SCALENE);
        assert_eq!(a, svg(&["render", "--figure", fig], SCALENE));
        let doc = roxmltree::Document::parse(&a).unwrap();
        let root = doc.root_element();
        assert_eq!(root.tag_name().name(), "svg");
        assert_eq!(root.attribute("version"), Some("1.1"));
    }
}

#[test]
fn sequence_figure_has_four_panels() {
    let s = svg(&["render", "--figure", "sequence"], SCALENE);
    let doc = roxmltree::Document::parse(&s).unwrap();
    let panels = doc
        .root_element()
        .children()
        .filter(|n| n.has_tag_name("svg"))
        .count();
    assert_eq!(panels, 4);
}

#[test]
fn render_to_file_and_unwritable_path() {
    let path = temp("max.svg");
    let out = run(
        &["render", "--figure", "max", "--out", path.to_str().unwrap()],
        SCALENE,
    );
    assert_eq!(code(&out), 0);
    roxmltree::Document::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let out = run(
        &[
            "render",
            "--figure",
            "max",
            "--out",
            "/nonexistent/dir/max.svg",
        ],
        SCALENE,
    );
    assert_eq!(code(&out), 2);
}

fn path_endpoints(s: &str) -> Vec<[[f64; 2]; 2]> {
    let doc = roxmltree::Document::parse(s).unwrap();
    doc.descendants()
        .filter(|n| n.has_tag_name("path"))
        .map(|n| {
            let nums: Vec<f64> = n
                .attribute("d")
                .unwrap()
                .split([' ', ','])
                .filter_map(|t| t.parse().ok())
                .collect();
            [[nums[0], nums[1]], [nums[4], nums[5]]]
        })
        .collect()
}

#[test]
fn equilateral_max_arcs_have_threefold_symmetry() {
    let s = svg(
        &["render", "--figure", "max"],
        "[[0,0],[1,0],[0.5,0.8660254037844386]]",
    );
    let arcs = path_endpoints(&s);
    assert_eq!(arcs.len(), 3);
    let pts: Vec<[f64; 2]> = arcs.iter().flatten().copied().collect();
    let c = [
        pts.iter().map(|p| p[0]).sum::<f64>() / 6.0,
        pts.iter().map(|p| p[1]).sum::<f64>() / 6.0,
    ];
    let (sn, cs) = (2.0 * std::f64::consts::PI / 3.0).sin_cos();
    let rot = |p: [f64; 2]| {
        let (dx, dy) = (p[0] - c[0], p[1] - c[1]);
        [c[0] + cs * dx - sn * dy, c[1] + sn * dx + cs * dy]
    };
    let close = |p: [f64; 2], q: [f64; 2]| (p[0] - q[0]).hypot(p[1] - q[1]) < 0.02;
    for arc in &arcs {
        let image = [rot(arc[0]), rot(arc[1])];
        let hit = arcs.iter().any(|other| {
            (close(image[0], other[0]) && close(image[1], other[1]))
                || (close(image[0], other[1]) && close(image[1], other[0]))
        });
        assert!(hit, "{arc:?} has no rotated partner among {arcs:?}");
    }
}
