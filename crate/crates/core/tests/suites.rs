use subspace_geometry::harness::{run_suite, SuiteParams};

fn assert_passes(name: &str, trials: usize, n_max: usize) {
    let report = run_suite(name, &SuiteParams::new(99, trials, n_max)).unwrap();
    assert!(report.pass, "{}", report.to_text());
    assert!(report.violations.is_empty());
}

#[test]
fn separation_suite() {
    assert_passes("t0", 500, 8);
}

#[test]
fn interlacing_suite() {
    assert_passes("interlacing", 500, 8);
}

#[test]
fn bc_decomposition_suite() {
    assert_passes("bc-decomposition", 300, 7);
}

#[test]
fn small_ambient_spaces() {
    for name in subspace_geometry::harness::SUITES {
        let report = run_suite(name, &SuiteParams::new(5, 40, 1)).unwrap();
        assert!(report.violations.is_empty(), "{}", report.to_text());
    }
}

#[test]
fn text_report_shape() {
    let report = run_suite("duality", &SuiteParams::new(1, 50, 6)).unwrap();
    let text = report.to_text();
    assert!(text.starts_with("suite duality\nseed 1\n"));
    assert!(text.lines().any(|l| l.starts_with("required found")));
    assert!(text.ends_with("result PASS\n"));
    let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(json["suite"], "duality");
    assert_eq!(json["pass"], true);
}
