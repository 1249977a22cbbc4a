use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use superconf::export::{load_mesh, mesh_json, CSV_HEADER};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_superconf"));
    c.env_remove("SUPERCONF_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout))
    })
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap_or_else(|e| {
        panic!("stderr is not JSON ({e}): {}", String::from_utf8_lossy(&o.stderr))
    })
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

#[test]
fn catalog_lists_every_fixture() {
    let o = run(&["catalog", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = stdout_json(&o)["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap().to_owned())
        .collect();
    for n in ["catenoid-helicoid", "whitney", "veronese", "q0-line", "q0-trig", "torus", "torus-s4"] {
        assert!(names.iter().any(|m| m == n), "missing {n} in {names:?}");
    }
}

#[test]
fn catalog_show_exports_a_parsable_curve() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("whitney.txt");
    let o = run(&["catalog", "show", "whitney", "--export", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&file).unwrap();
    assert!(superconf_core::expr::parse_curve(text.trim()).is_ok(), "{text}");
    let o = run(&["certify", "--curve", text.trim(), "--domain", "0.3,1.5,-1,1", "--grid", "12,12"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn unknown_catalog_entry_is_a_precondition_error() {
    let o = run(&["catalog", "show", "no-such-surface"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["exit_code"], 2);
}

#[test]
fn quadric_classifies_a_null_curve() {
    let o = run(&["quadric", "--curve", "(z, i*z, 0, 0)"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["classification"], "Q0");
    assert_eq!(v["collapsing_sign"], "plus");
}

#[test]
fn construct_writes_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "construct",
        "--curve",
        "catenoid-helicoid",
        "--domain",
        "0.2,6.08,-1.5,1.5",
        "--grid",
        "64,64",
        "--sign",
        "both",
        "--project",
        "drop:3",
        "--out",
        path_str(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut summary = stdout_json(&o);
    assert!(summary.as_object_mut().unwrap().remove("out_dir").is_some());
    let on_disk: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary, on_disk);
    for s in summary["signs"].as_array().unwrap() {
        assert_eq!(s["samples"], 64 * 64);
        assert_eq!(s["failed"], 0);
        assert!(s["flagged"].as_u64().unwrap() < 64 * 64);
        assert!(s["max_circularity"].as_f64().unwrap() < 1e-8);
        assert!(s["max_relative_wintgen"].as_f64().unwrap() < 1e-8);
    }
    for sign in ["plus", "minus"] {
        let csv = fs::read_to_string(dir.path().join(format!("phi_{sign}.csv"))).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.count(), 64 * 64);

        let mesh_path = dir.path().join(format!("phi_{sign}.mesh.json"));
        let mesh = load_mesh(&mesh_path).unwrap();
        assert_eq!(mesh.grid, [64, 64]);
        assert_eq!(mesh.vertices.len(), 64 * 64);
        assert_eq!(mesh.quads.len(), 63 * 63);
        assert_eq!(mesh_json(&mesh), fs::read_to_string(&mesh_path).unwrap());

        let obj = fs::read_to_string(dir.path().join(format!("phi_{sign}.obj"))).unwrap();
        assert!(obj.starts_with('#'));
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 64 * 64);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 2 * 63 * 63);
    }
}

#[test]
fn construct_single_sign_with_stereo_projection() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "construct",
        "--curve",
        "(z, 1/z)",
        "--domain",
        "0.3,1.5,-1,1",
        "--grid",
        "6,5",
        "--sign",
        "minus",
        "--project",
        "stereo",
        "--out",
        path_str(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("phi_minus.obj").exists());
    assert!(!dir.path().join("phi_plus.csv").exists());
}

#[test]
fn verify_invert_dual_and_project_pass_on_fixtures() {
    let cases: [&[&str]; 4] = [
        &["verify", "--curve", "catenoid-helicoid", "--grid", "16,16"],
        &["invert", "--curve", "catenoid-helicoid"],
        &["dual", "--curve", "(z, 1/z)", "--domain", "0.3,1.5,-1,1"],
        &["project", "--curve", "veronese"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stdout));
        assert_eq!(stdout_json(&o)["passed"], true, "{args:?}");
    }
}

#[test]
fn dual_reports_the_value_at_one() {
    let o = run(&["dual", "--curve", "(z, 1/z)", "--domain", "0.3,1.5,-1,1"]);
    let v = stdout_json(&o);
    assert!(v["fstar_at_1"].is_array() || v["fstar_at_1"].is_object(), "{v}");
}

#[test]
fn syntax_errors_report_their_position() {
    let o = run(&["certify", "--curve", "(z, "]);
    assert_eq!(o.status.code(), Some(2));
    let e = &stderr_json(&o)["error"];
    assert_eq!(e["kind"], "syntax");
    assert_eq!(e["line"], 1);
    assert_eq!(e["column"], 5);
    assert!(!e["expected"].as_array().unwrap().is_empty());
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["certify", "--bogus"][..],
        &["construct", "--curve", "catenoid-helicoid", "--grid", "0,4"],
        &["construct", "--curve", "catenoid-helicoid", "--sign", "sideways"],
        &["invert", "--curve", "catenoid-helicoid", "--radius", "-1"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert_eq!(stderr_json(&o)["error"]["exit_code"], 2, "{args:?}");
    }
}

#[test]
fn failed_certification_exits_three() {
    let o = run(&["certify", "--curve", "(z, z, 0, 0)", "--grid", "8,8"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout_json(&o)["passed"], false);
}

#[test]
fn unwritable_output_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let target = blocker.join("sub");
    let o = run(&["construct", "--curve", "catenoid-helicoid", "--grid", "4,4", "--out", path_str(&target)]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(stderr_json(&o)["error"]["kind"], "io");
}

#[test]
fn selftest_runs_a_single_criterion() {
    let o = run(&["selftest", "--criterion", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("criterion  1 PASS"), "{err}");
}
