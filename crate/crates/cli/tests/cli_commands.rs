//! End-to-end checks of the command surface: exit codes, file artifacts,
//! and report shapes for each subcommand.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_enneper"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).to_string(),
        String::from_utf8_lossy(&out.stderr).to_string(),
    )
}

#[test]
fn verify_passes_for_gate_consistent_family() {
    let (code, json, _) = run(&[
        "verify",
        "--family",
        "multi-soliton",
        "--params",
        "a=1,b=-1",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["we_residual"]["pass"], true);
    assert_eq!(v["conservation_residual"]["pass"], true);
    assert_eq!(v["current_holomorphy"]["pass"], true);
}

#[test]
fn verify_unknown_family_is_a_usage_error() {
    let (code, _, err) = run(&["verify", "--family", "nosuch"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown family"));
}

#[test]
fn all_families_sweep_is_the_errata_report() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&[
        "verify",
        "--all-families",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    let json = std::fs::read_to_string(dir.path().join("errata_report.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    // gate-consistent entries pass, catalogued errata entries fail
    assert_eq!(v["rational:m=1:we_residual"]["pass"], true);
    assert_eq!(v["multi-soliton:N=2:we_residual"]["pass"], true);
    assert_eq!(v["one-soliton:we_residual"]["pass"], false);
    assert_eq!(v["exponential:we_residual"]["pass"], false);
    assert_eq!(v["bump:we_residual"]["pass"], false);
    assert!(!v["errata"].as_array().unwrap().is_empty());
}

#[test]
fn surface_writes_mesh_for_gate_passing_family() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&[
        "surface",
        "--family",
        "rational",
        "--params",
        "m=1",
        "--base",
        "1,0",
        "--domain",
        "annulus",
        "0.3,3",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let obj = std::fs::read_to_string(dir.path().join("surface.obj")).unwrap();
    assert!(obj.lines().filter(|l| l.starts_with("v ")).count() >= 1000);
    let csv = std::fs::read_to_string(dir.path().join("surface.csv")).unwrap();
    assert!(csv.starts_with("x,y,X1,X2,X3,p,K,masked\n"));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap())
            .unwrap();
    assert!((summary["k_mean"].as_f64().unwrap() - 1.0).abs() < 1e-3);
}

#[test]
fn surface_gate_failure_blocks_export_without_force() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = run(&[
        "surface",
        "--family",
        "bump",
        "--params",
        "c=1,lambda=1,E=1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("residual gate failed"));
    assert!(!dir.path().join("surface.obj").exists());

    // --force writes files but keeps the errata exit code
    let (code, _, _) = run(&[
        "surface",
        "--family",
        "bump",
        "--params",
        "c=1,lambda=1,E=1",
        "--force",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(dir.path().join("surface.obj").exists());
}

#[test]
fn surface_base_on_singularity_is_an_error() {
    let (code, _, _) = run(&[
        "surface", "--family", "rational", "--params", "m=2", "--base", "-1,0",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn invariants_reports_curvature_and_charge() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&[
        "invariants",
        "--family",
        "rational",
        "--params",
        "m=1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("invariants_rational.json")).unwrap(),
    )
    .unwrap();
    let charge = v["charge"].as_f64().unwrap();
    assert!((charge.abs() - 1.0).abs() < 1e-2, "charge {charge}");
    assert!((v["K_mean"].as_f64().unwrap() - 1.0).abs() < 1e-3);
}

#[test]
fn invariants_zero_measure_domain_is_an_error() {
    let (code, _, _) = run(&[
        "invariants",
        "--family",
        "rational",
        "--params",
        "m=1",
        "--nx",
        "1",
        "--ny",
        "1",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn ode_profile_and_drift_report() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&[
        "ode", "--eps", "-1", "--A", "0.2", "--K", "1", "--p0", "0.8", "--dp0", "consistent",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let csv = std::fs::read_to_string(dir.path().join("profile.csv")).unwrap();
    assert!(csv.starts_with("s,p,pdot,H_drift\n"));
    let v: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("ode_report.json")).unwrap(),
    )
    .unwrap();
    assert!(v["max_drift"].as_f64().unwrap() < 1e-8);

    // p0 = 0 rejected; inconsistent radicand rejected
    let (code, _, _) = run(&["ode", "--p0", "0"]);
    assert_eq!(code, 1);
    let (code, _, err) = run(&[
        "ode", "--eps", "-1", "--A", "0.2", "--K", "1", "--p0", "1", "--dp0", "consistent",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("no real consistent slope"));
}

#[test]
fn tables_single_row_and_sweep() {
    let (code, json, _) = run(&["tables", "--table", "2", "--row", "6"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["table:2:row:6"]["pass"], true);

    let (code, json, _) = run(&["tables", "--all"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let rows: Vec<&String> = v
        .as_object()
        .unwrap()
        .keys()
        .filter(|k| k.starts_with("table:"))
        .collect();
    assert_eq!(rows.len(), 12);
}

#[test]
fn reruns_are_byte_identical_across_commands() {
    for args in [
        vec!["tables", "--all"],
        vec!["verify", "--family", "exponential", "--params", "q=0.5,a=1,0", "--domain", "-1,1,-1,1"],
    ] {
        let (c1, o1, _) = run(&args);
        let (c2, o2, _) = run(&args);
        assert_eq!(c1, c2);
        assert_eq!(o1, o2, "non-deterministic output for {args:?}");
    }
}
