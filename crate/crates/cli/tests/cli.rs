use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("subspace-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subspace"))
        .args(args)
        .env_remove("SUBSPACE_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn dist_tilted_plane_in_degrees() {
    let (v, w) = (data("tilted_plane_v.json"), data("tilted_plane_w.json"));
    let o = run(&["dist", &v, &w, "--metric", "d_FS", "--degrees"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("52.2388 / 90.0000"), "{}", stdout(&o));
}

#[test]
fn dist_all_lists_nine_metrics() {
    let (v, w) = (data("tilted_plane_v.json"), data("tilted_plane_w.json"));
    let o = run(&["--json", "dist", &v, &w]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json(&o)["metrics"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 9);
    let bc = rows.iter().find(|r| r["metric"] == "d_BC").unwrap();
    let want = (5.0f64 / 8.0).sqrt();
    assert!((bc["d_vw"].as_f64().unwrap() - want).abs() < 1e-9);
}

#[test]
fn dist_of_a_subspace_to_itself_is_zero() {
    let v = data("tilted_plane_v.json");
    let o = run(&["--json", "dist", &v, &v, "--legacy"]);
    assert_eq!(o.status.code(), Some(0));
    let out = json(&o);
    for row in out["metrics"].as_array().unwrap() {
        for key in ["d_vw", "d_wv", "max", "min"] {
            assert!(row[key].as_f64().unwrap().abs() < 1e-7, "{row}");
        }
    }
    assert_eq!(out["legacy"].as_array().unwrap().len(), 9);
}

#[test]
fn angles_of_tilted_plane() {
    let (v, w) = (data("tilted_plane_v.json"), data("tilted_plane_w.json"));
    let o = run(&["angles", &v, &w]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degrees 30.0000 45.0000"), "{}", stdout(&o));
}

#[test]
fn angles_orthogonal_and_zero_inputs() {
    let x = scratch("x.json", r#"{"field": "real", "ambient": 3, "vectors": [[1, 0, 0]]}"#);
    let yz = scratch("yz.json", r#"{"field": "real", "ambient": 3, "vectors": [[0, 2, 0], [0, 1, 1]]}"#);
    let zero = scratch("zero.json", r#"{"field": "real", "ambient": 3, "vectors": []}"#);
    let out = json(&run(&["--json", "angles", &x, &yz]));
    assert_eq!(out["degrees"].as_array().unwrap(), &vec![Value::from(90.0)]);
    let out = json(&run(&["--json", "angles", &zero, &yz]));
    assert!(out["radians"].as_array().unwrap().is_empty());
}

#[test]
fn complex_angle_is_forty_five_degrees() {
    let (v, w) = (data("complex_line.json"), data("complex_plane.json"));
    let out = json(&run(&["--json", "angles", &v, &w]));
    let theta = out["theta_vw"].as_f64().unwrap();
    assert!((theta - std::f64::consts::FRAC_PI_4).abs() < 1e-9);
}

#[test]
fn mismatched_inputs_exit_3() {
    let (v, w) = (data("tilted_plane_v.json"), data("complex_plane.json"));
    assert_eq!(run(&["dist", &v, &w]).status.code(), Some(3));
    let real3 = scratch("real3.json", r#"{"field": "real", "ambient": 3, "vectors": [[1, 0, 0]]}"#);
    assert_eq!(run(&["angles", &real3, &w]).status.code(), Some(3));
}

#[test]
fn parse_errors_exit_2() {
    let w = data("tilted_plane_w.json");
    let short = scratch("short.json", r#"{"field": "real", "ambient": 5, "vectors": [[1, 0]]}"#);
    assert_eq!(run(&["dist", &short, &w]).status.code(), Some(2));
    let junk = scratch("junk.json", "not json");
    assert_eq!(run(&["dist", &junk, &w]).status.code(), Some(2));
    assert_eq!(run(&["dist", "/nonexistent.json", &w]).status.code(), Some(2));
    assert_eq!(run(&["dist", &w, &w, "--metric", "d_xyz"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn geodesic_types_and_length() {
    let (plane, three) = (data("tilted_plane_v.json"), data("tilted_plane_w.json"));
    let o = run(&["geodesic", &plane, &three, "--samples", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = json(&o);
    assert_eq!(out["type"], "I");
    assert_eq!(out["samples"].as_array().unwrap().len(), 5);
    let want = (std::f64::consts::FRAC_PI_6.powi(2) + std::f64::consts::FRAC_PI_4.powi(2)).sqrt();
    assert!((out["length"].as_f64().unwrap() - want).abs() < 1e-9);
    let samples = out["samples"].as_array().unwrap();
    assert_eq!(samples[0]["dim"], 2);
    assert_eq!(samples[4]["dim"], 3);

    let out = json(&run(&["geodesic", &three, &plane, "--topology", "forward"]));
    assert_eq!(out["type"], "II");
}

#[test]
fn geodesic_rejects_max_metrics_and_single_samples() {
    let (v, w) = (data("tilted_plane_v.json"), data("tilted_plane_w.json"));
    assert_eq!(run(&["geodesic", &v, &w, "--metric", "d_A"]).status.code(), Some(4));
    assert_eq!(run(&["geodesic", &v, &w, "--samples", "1"]).status.code(), Some(2));
}

#[test]
fn examples_all_pass() {
    let o = run(&["--json", "examples"]);
    assert_eq!(o.status.code(), Some(0));
    let out = json(&o);
    assert_eq!(out["pass"], true);
    assert!(out["checks"].as_array().unwrap().len() > 30);
}

#[test]
fn check_exit_codes() {
    assert_eq!(run(&["check", "--suite", "triangle", "--trials", "20"]).status.code(), Some(0));
    assert_eq!(run(&["check", "--suite", "t0", "--trials", "5", "--inject-bug"]).status.code(), Some(1));
    assert_eq!(run(&["check", "--suite", "no-such-suite"]).status.code(), Some(2));
    let o = run(&["check", "--suite", "nonmetric-demos", "--trials", "3", "--nmax", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("required found"));
}

#[test]
fn check_seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_subspace"))
        .args(["--json", "check", "--suite", "t0", "--trials", "3"])
        .env("SUBSPACE_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(json(&o)["seed"], 99);
    let a = stdout(&run(&["check", "--suite", "duality", "--trials", "4", "--seed", "5"]));
    let b = stdout(&run(&["check", "--suite", "duality", "--trials", "4", "--seed", "5"]));
    assert_eq!(a, b);
}
