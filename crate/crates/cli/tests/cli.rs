use std::path::PathBuf;
use std::process::{Command, Output};

use twinpara_core::{build_family, FamilyParams, ManifoldDocument};

fn twinpara(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twinpara"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn has_line(text: &str, line: &str) -> bool {
    text.lines().any(|l| l == line)
}

#[test]
fn fixture_matches_the_family_builder() {
    let m = build_family(&FamilyParams::from_ints(1, 2, 1).unwrap()).unwrap();
    let text = std::fs::read_to_string(fixture("family-1-2-1.json")).unwrap();
    let doc = ManifoldDocument::parse(&text).unwrap();
    assert_eq!(doc, ManifoldDocument::from_manifold(&m));
    assert_eq!(doc.to_manifold().unwrap(), m);
}

#[test]
fn validate_accepts_fixture() {
    let o = twinpara(&["validate", &fixture("family-1-2-1.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("valid: dim 4"));
}

#[test]
fn validate_rejects_jacobi_violation() {
    let o = twinpara(&["validate", &fixture("broken-jacobi.json")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("Jacobi"), "{}", stderr(&o));
    assert!(stderr(&o).contains("(X1, X2, X3)"), "{}", stderr(&o));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(twinpara(&["validate", empty.to_str().unwrap()]).status.code(), Some(2));

    let odd = dir.path().join("odd.json");
    std::fs::write(&odd, r#"{"dim": 3, "basis": ["a","b","c"], "brackets": [], "metric": [], "P": []}"#).unwrap();
    assert_eq!(twinpara(&["validate", odd.to_str().unwrap()]).status.code(), Some(2));

    let missing = dir.path().join("nope.json");
    assert_eq!(twinpara(&["validate", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn incompatible_metric_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let m = build_family(&FamilyParams::from_ints(1, 2, 1).unwrap()).unwrap();
    let mut doc = ManifoldDocument::from_manifold(&m);
    doc.metric[0][0] = "2".parse().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, doc.to_json()).unwrap();
    assert_eq!(twinpara(&["validate", path.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn report_family_sample_point() {
    let o = twinpara(&["report", "--family", "1", "2", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    for line in [
        "class: W1",
        "tau: -144",
        "tau_twin: 144",
        "snorm: 384",
        "all_passed: true",
    ] {
        assert!(has_line(&text, line), "missing {line}\n{text}");
    }
}

#[test]
fn report_file_agrees_with_family() {
    let from_file = twinpara(&["report", &fixture("family-1-2-1.json"), "--json"]);
    let from_family = twinpara(&["report", "--family", "1", "2", "1", "--json"]);
    let a: serde_json::Value = serde_json::from_slice(&from_file.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&from_family.stdout).unwrap();
    for key in ["tau", "tau_twin", "snorm", "snorm_twin", "classification", "checks"] {
        assert_eq!(a[key], b[key], "{key}");
    }
}

#[test]
fn report_special_points() {
    let origin = stdout(&twinpara(&["report", "--family", "0", "0", "1"]));
    assert!(has_line(&origin, "class: W0"));
    assert!(has_line(&origin, "abelian: true"));

    let null = stdout(&twinpara(&["report", "--family", "1", "1", "-1"]));
    for line in ["class: W1", "isotropic_w0: true", "scalar_flat: true"] {
        assert!(has_line(&null, line), "missing {line}\n{null}");
    }
}

#[test]
fn report_rational_parameters() {
    let o = twinpara(&["report", "--family", "1/2", "-3", "-1", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["source"], "family (1/2, -3, -1)");
}

#[test]
fn report_bad_epsilon_exits_2() {
    assert_eq!(twinpara(&["report", "--family", "1", "2", "3"]).status.code(), Some(2));
    assert_eq!(twinpara(&["report", "--family", "1", "x", "1"]).status.code(), Some(2));
}

#[test]
fn theorem_default_grid_reports_failures() {
    let o = twinpara(&["theorem"]);
    assert_eq!(o.status.code(), Some(4));
    let text = stdout(&o);
    assert!(text.starts_with("points: 98"), "{text}");
    assert!(text.contains("FAIL table:Ricci"));
    assert!(text.contains("rho12"));
}

#[test]
fn theorem_single_point_json() {
    let o = twinpara(&["theorem", "--grid", "1:1:1", "--json", "--sequential"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["points"], 1);
    assert_eq!(v["all_passed"], o.status.code() == Some(0));
    let names: Vec<&str> = v["failures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["name"].as_str().unwrap())
        .collect();
    assert!(!names.contains(&"family: R̃ = εR"), "{names:?}");
}

#[test]
fn theorem_self_test_detects_flip() {
    let o = twinpara(&["theorem", "--grid", "1:2:1", "--self-test"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("self-test: flipped R1221 in table:R detected"));
}

#[test]
fn theorem_bad_grid_exits_2() {
    assert_eq!(twinpara(&["theorem", "--grid", "1:2"]).status.code(), Some(2));
    assert_eq!(twinpara(&["theorem", "--grid", "1:2:0"]).status.code(), Some(2));
}
