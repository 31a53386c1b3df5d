use std::f64::consts::TAU;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use porism_cli::{emit_scene, parse_scene_str, render_svg, CliError, FigureSpec};
use porism_core::porism::fertile_arcs;
use porism_core::sample::{random_scene, Placement};
use porism_core::Point;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EQUILATERAL: &str =
    r#"{"triangle": [[1,0],[-0.5,0.8660254037844386],[-0.5,-0.8660254037844386]], "pedal_point": [0,0]}"#;
/// D between the triangle and its circumcircle: hyperbolic inconic.
const HYPERBOLIC: &str = r#"{"triangle": [[0,0],[4,0],[1,3]], "pedal_point": [3.5,2.2]}"#;
/// D inside the triangle.
const ELLIPTIC: &str = r#"{"triangle": [[0,0],[4,0],[1,3]], "pedal_point": [1.5,1.0]}"#;

fn porism(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_porism")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn construct_equilateral_pedal() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(dir.path(), "eq.json", EQUILATERAL);
    let o = porism(&["construct", "--scene", scene.to_str().unwrap(), "--algorithm", "pedal", "--start", "0.3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut angles: Vec<f64> = text
        .lines()
        .filter(|l| l.starts_with("  "))
        .map(|l| {
            let f: Vec<f64> = l.split_whitespace().skip(1).map(|x| x.parse().unwrap()).collect();
            Point::new(f[0], f[1]).angle()
        })
        .collect();
    angles.sort_by(f64::total_cmp);
    let mut want = [0.3, 0.3 + TAU / 3.0, 0.3 + 2.0 * TAU / 3.0];
    want.sort_by(f64::total_cmp);
    for (g, w) in angles.iter().zip(want) {
        assert!((g - w).abs() < 1e-10, "{text}");
    }
    assert!(text.contains("status: pass"));
}

#[test]
fn construct_infertile_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(dir.path(), "h.json", HYPERBOLIC);
    let s = parse_scene_str(HYPERBOLIC).unwrap();
    let arcs = fertile_arcs(s.circumcircle(), s.inconic(), s.tolerance()).unwrap();
    let bad = (0..100).map(|i| i as f64 * TAU / 100.0).find(|a| !arcs.contains(*a)).unwrap();
    let o = porism(&["construct", "--scene", scene.to_str().unwrap(), "--start", &bad.to_string()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("infertile start"));
}

#[test]
fn construct_seed_vertex_reproduces_seed() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(dir.path(), "e.json", ELLIPTIC);
    let s = parse_scene_str(ELLIPTIC).unwrap();
    let start = s.circumcircle().angle_of(s.seed().c());
    let o = porism(&["construct", "--scene", scene.to_str().unwrap(), "--start", &format!("{start:.17}")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for v in s.seed().vertices() {
        let found = text.lines().filter(|l| l.starts_with("  ")).any(|l| {
            let f: Vec<f64> = l.split_whitespace().skip(1).map(|x| x.parse().unwrap()).collect();
            Point::new(f[0], f[1]).dist(v) < 1e-9
        });
        assert!(found, "{v:?} missing from\n{text}");
    }
}

#[test]
fn usage_and_io_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let o = porism(&["construct", "--scene", dir.path().join("nope.json").to_str().unwrap(), "--start", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let on_side = write(dir.path(), "side.json", r#"{"triangle": [[0,0],[4,0],[0,3]], "pedal_point": [2,0]}"#);
    let o = porism(&["construct", "--scene", on_side.to_str().unwrap(), "--start", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("pedal point on side"), "{}", stderr(&o));
    let scene = write(dir.path(), "eq.json", EQUILATERAL);
    let o = porism(&["sweep", "--scene", scene.to_str().unwrap(), "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(1));
    let o = porism(&["construct", "--scene", scene.to_str().unwrap(), "--start", "0", "--tolerance-scale", "-1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn scene_parse_errors_name_the_field() {
    match parse_scene_str(r#"{"triangle": [[0,0],[4,0],[0,3]]}"#) {
        Err(CliError::Parse { message, .. }) => assert!(message.contains("pedal_point")),
        other => panic!("{other:?}"),
    }
    match parse_scene_str(r#"{"triangle": [[0,0],[4,0],[0,3]], "pedal_point": [4.5,1.5]}"#) {
        Err(CliError::Validation { field, .. }) => assert_eq!(field, "pedal_point"),
        other => panic!("{other:?}"),
    }
    match parse_scene_str(r#"{"triangle": [[0,0],[1,1],[2,2]], "pedal_point": [4.5,1.5]}"#) {
        Err(CliError::Validation { field, .. }) => assert_eq!(field, "triangle"),
        other => panic!("{other:?}"),
    }
    match parse_scene_str(r#"{"triangle": [[0,0],[4,0],[0,3]], "pedal_point": [1,1], "inversion_radius_sq": -2}"#) {
        Err(CliError::Validation { field, .. }) => assert_eq!(field, "inversion_radius_sq"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        parse_scene_str(r#"{"triangle": [[0,0],[4,0],[0,3]], "pedal_point": [1,1], "extra": 1}"#),
        Err(CliError::Parse { .. })
    ));
}

#[test]
fn scenes_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let s = random_scene(&mut rng, Placement::Any);
        let back = parse_scene_str(&emit_scene(&s)).unwrap();
        assert_eq!(back.seed(), s.seed());
        assert_eq!(back.pedal_point(), s.pedal_point());
    }
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        &header[..6],
        ["start_angle", "outcome", "tangency_defect", "center_err", "radius_err", "closure_defect"]
    );
    r.records().map(|x| x.unwrap().iter().map(String::from).collect()).collect()
}

#[test]
fn sweep_equilateral_csv() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(dir.path(), "eq.json", EQUILATERAL);
    let out = dir.path().join("r.csv");
    let o = porism(&["sweep", "--scene", scene.to_str().unwrap(), "--samples", "360", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 360);
    assert!(rows.iter().all(|r| r[1] == "constructed" && r[7] == "ok"));
}

#[test]
fn sweep_hyperbolic_infertile_fraction() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(dir.path(), "h.json", HYPERBOLIC);
    let out = dir.path().join("r.csv");
    let o = porism(&["sweep", "--scene", scene.to_str().unwrap(), "--samples", "1000", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&out);
    let infertile = rows.iter().filter(|r| r[1] == "infertile").count() as f64 / rows.len() as f64;
    let s = parse_scene_str(HYPERBOLIC).unwrap();
    let arcs = fertile_arcs(s.circumcircle(), s.inconic(), s.tolerance()).unwrap();
    assert!(infertile > 0.0);
    assert!((infertile - (1.0 - arcs.fraction())).abs() < 0.01);
}

#[test]
fn sweep_threshold_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(dir.path(), "h.json", HYPERBOLIC);
    let out = dir.path().join("r.csv");
    let o = porism(&[
        "sweep",
        "--scene",
        scene.to_str().unwrap(),
        "--samples",
        "50",
        "--out",
        out.to_str().unwrap(),
        "--tolerance-scale",
        "1e-12",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(csv_rows(&out).iter().any(|r| r[7] == "FAILED"));
}

#[test]
fn verify_passes_on_elliptic_scene() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(dir.path(), "e.json", ELLIPTIC);
    let o = porism(&["verify", "--scene", scene.to_str().unwrap(), "--samples", "200"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL "));
}

fn count(svg: &str, needle: &str) -> usize {
    svg.matches(needle).count()
}

#[test]
fn overview_figure_element_counts() {
    let s = parse_scene_str(ELLIPTIC).unwrap();
    let spec =
        FigureSpec::parse(r#"{"circumcircle": true, "pedal_circle": true, "inconic": true, "starts": [0.5, 2.5]}"#)
            .unwrap();
    let svg = render_svg(&s, &spec, None).unwrap();
    assert!(svg.starts_with("<?xml") && svg.contains("version=\"1.1\"") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(count(&svg, "<circle "), 2);
    assert_eq!(count(&svg, "<polyline "), 1);
    assert_eq!(count(&svg, "class=\"edge\""), 6);
}

#[test]
fn empty_figure_has_frame_only() {
    let s = parse_scene_str(ELLIPTIC).unwrap();
    let svg = render_svg(&s, &FigureSpec::parse("{}").unwrap(), None).unwrap();
    assert_eq!(count(&svg, "<rect class=\"frame\""), 1);
    assert_eq!(count(&svg, "<circle "), 0);
    assert_eq!(count(&svg, "<polyline "), 0);
    assert_eq!(count(&svg, "class=\"edge\""), 0);
}

#[test]
fn figure_rejects_bad_start_angles() {
    let s = parse_scene_str(ELLIPTIC).unwrap();
    let spec = FigureSpec::parse(r#"{"starts": [7.0]}"#).unwrap();
    assert!(matches!(render_svg(&s, &spec, None), Err(CliError::Usage(_))));
}

fn group_edges(svg: &str, role_suffix: &str) -> Vec<[f64; 4]> {
    let start = svg.find(&format!("{role_suffix}\">")).unwrap_or_else(|| panic!("no group {role_suffix}"));
    svg[start..]
        .lines()
        .skip(1)
        .take(3)
        .map(|l| {
            let v: Vec<f64> = ["x1=\"", "y1=\"", "x2=\"", "y2=\""]
                .iter()
                .map(|k| {
                    let i = l.find(k).unwrap() + k.len();
                    l[i..i + l[i..].find('"').unwrap()].parse().unwrap()
                })
                .collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}

#[test]
fn homothety_figure_draws_parallel_sides() {
    let s = parse_scene_str(ELLIPTIC).unwrap();
    let spec = FigureSpec::parse(
        r#"{"circumcircle": true, "polar_circle": true, "negative_pedal_circle": true,
            "algorithms": ["polar", "negative-pedal"], "starts": [1.0]}"#,
    )
    .unwrap();
    let svg = render_svg(&s, &spec, None).unwrap();
    let polar = group_edges(&svg, " polar");
    let neg = group_edges(&svg, " negative-pedal");
    for (p, q) in polar.iter().zip(&neg) {
        let (u, v) = ((p[2] - p[0], p[3] - p[1]), (q[2] - q[0], q[3] - q[1]));
        let sin = (u.0 * v.1 - u.1 * v.0).abs() / ((u.0.hypot(u.1)) * (v.0.hypot(v.1)));
        assert!(sin < 1e-3, "{p:?} {q:?}");
    }
}

#[test]
fn hyperbolic_figure_marks_infertile_arcs() {
    let s = parse_scene_str(HYPERBOLIC).unwrap();
    let svg = render_svg(&s, &FigureSpec::overview(), Some(&["A".into(), "B".into(), "<C>".into()])).unwrap();
    assert!(count(&svg, "class=\"infertile-arc\"") >= 1);
    assert!(count(&svg, "<polyline class=\"inconic\"") >= 2, "both branches drawn");
    assert!(svg.contains("&lt;C&gt;"));
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(dir.path(), "h.json", HYPERBOLIC);
    let sc = scene.to_str().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    porism(&["sweep", "--scene", sc, "--algorithm", "polar", "--samples", "500", "--out", a.to_str().unwrap()]);
    porism(&["sweep", "--scene", sc, "--algorithm", "polar", "--samples", "500", "--out", b.to_str().unwrap()]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    porism(&["figure", "--scene", sc, "--out", a.to_str().unwrap()]);
    porism(&["figure", "--scene", sc, "--out", b.to_str().unwrap()]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn bad_arguments_exit_1_not_2() {
    assert_eq!(porism(&["construct"]).status.code(), Some(1));
    assert_eq!(porism(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(porism(&["--help"]).status.code(), Some(0));
}
