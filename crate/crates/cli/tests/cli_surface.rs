//! End-to-end checks of the command-line surface: exit codes, report
//! determinism, and the guarantee that the binary is a thin delegate of
//! the library calls.

use std::path::{Path, PathBuf};
use std::process::Command;

use zakframes_cli::commands::{self, Overrides, RandomKind};
use zakframes_cli::io::SignalFile;
use zakframes_cli::jsonfmt::to_json_string;

fn write_signal(dir: &Path, name: &str, re: Vec<f64>, im: Vec<f64>) -> String {
    let file = SignalFile { re, im };
    std::fs::write(dir.join(name), to_json_string(&file).unwrap()).unwrap();
    name.to_string()
}

/// Fixture: phi = d0 + d2 and psi = d0/2 on (Z4, {0,2}); psi generates a
/// subspace dual of phi's translates.
fn dual_fixture(dir: &Path) -> PathBuf {
    write_signal(dir, "phi.json", vec![1.0, 0.0, 1.0, 0.0], vec![0.0; 4]);
    write_signal(dir, "psi.json", vec![0.5, 0.0, 0.0, 0.0], vec![0.0; 4]);
    let spec = serde_json::json!({
        "group": {"kind": "product", "orders": [4]},
        "subgroup": {"strides": [2]},
        "family": ["phi.json"],
        "family2": ["psi.json"],
    });
    let path = dir.join("spec.json");
    std::fs::write(&path, serde_json::to_string_pretty(&spec).unwrap()).unwrap();
    path
}

fn ortho_fail_fixture(dir: &Path) -> PathBuf {
    write_signal(dir, "d0.json", vec![1.0, 0.0, 0.0, 0.0], vec![0.0; 4]);
    let spec = serde_json::json!({
        "group": {"kind": "product", "orders": [4]},
        "subgroup": {"strides": [2]},
        "family": ["d0.json"],
        "family2": ["d0.json"],
    });
    let path = dir.join("ortho.json");
    std::fs::write(&path, serde_json::to_string_pretty(&spec).unwrap()).unwrap();
    path
}

fn run_binary(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_zakframes"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn dual_check_holds_with_exit_zero_and_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dual_fixture(dir.path());
    let spec_str = spec.to_str().unwrap();

    let lib = commands::cmd_dual_check(&spec, &Overrides::default(), true).unwrap();
    assert_eq!(lib.exit, 0);

    let (code, stdout, _) = run_binary(&["dual-check", "--spec", spec_str, "--oracle"]);
    assert_eq!(code, 0);
    // The binary emits exactly the library's serialization.
    assert_eq!(stdout, lib.text);

    // Byte-identical across runs.
    let (_, stdout2, _) = run_binary(&["dual-check", "--spec", spec_str, "--oracle"]);
    assert_eq!(stdout, stdout2);

    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["verdict"], "holds");
    assert_eq!(report["flags"]["oracle_agrees"], true);
}

#[test]
fn ortho_check_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let spec = ortho_fail_fixture(dir.path());
    let (code, stdout, _) = run_binary(&["ortho-check", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code, 1);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["verdict"], "fails");
}

#[test]
fn malformed_spec_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let (code, _, stderr) = run_binary(&["dual-check", "--spec", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"));
}

#[test]
fn nonpositive_tolerance_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dual_fixture(dir.path());
    let (code, _, stderr) = run_binary(&[
        "dual-check",
        "--spec",
        spec.to_str().unwrap(),
        "--tol=-1e-8",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("tolerance"), "stderr: {stderr}");
}

#[test]
fn make_dual_emits_signal() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dual_fixture(dir.path());
    // Rebuild the fixture with psi = d0 so a dual must be constructed.
    write_signal(dir.path(), "psi.json", vec![1.0, 0.0, 0.0, 0.0], vec![0.0; 4]);
    let out_signal = dir.path().join("dual.json");
    let (code, stdout, _) = run_binary(&[
        "make-dual",
        "--spec",
        spec.to_str().unwrap(),
        "--signal-out",
        out_signal.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["unique"], false);
    // Constructed dual is (d0 + d2)/4.
    let file: SignalFile =
        serde_json::from_str(&std::fs::read_to_string(&out_signal).unwrap()).unwrap();
    assert!((file.re[0] - 0.25).abs() < 1e-12 && (file.re[2] - 0.25).abs() < 1e-12);
    assert!(file.re[1].abs() < 1e-12 && file.re[3].abs() < 1e-12);
}

#[test]
fn zak_dump_and_bracket_dump_emit_csv() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dual_fixture(dir.path());
    let (code, stdout, _) = run_binary(&["zak", "dump", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(lines.next().unwrap(), "alpha_index,coset_index,re,im");
    assert_eq!(stdout.lines().count(), 5);
    // phi = d0 + d2 has Zak values 2 at (0,0) and 0 elsewhere.
    assert!(stdout.contains("0,0,2"));

    let (code, stdout, _) = run_binary(&["bracket-dump", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().next().unwrap(), "alpha_index,re,im");
    assert_eq!(stdout.lines().count(), 3);
}

#[test]
fn analyze_reports_bounds_and_support() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dual_fixture(dir.path());
    let (code, stdout, _) = run_binary(&["analyze", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["generators"][0]["support"], serde_json::json!([0]));
    let b = report["frame_bounds"]["bessel_bound"].as_f64().unwrap();
    assert!((b - 4.0).abs() < 1e-9);
    assert_eq!(report["frame_bounds"]["is_riesz"], false);
}

#[test]
fn random_instances_are_reproducible_and_verify() {
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    let (code, _, _) = run_binary(&[
        "random",
        "--kind",
        "dual",
        "--seed",
        "42",
        "--out",
        dir1.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = run_binary(&[
        "random",
        "--kind",
        "dual",
        "--seed",
        "42",
        "--out",
        dir2.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);

    // Identical seeds produce byte-identical instance files.
    let mut names: Vec<String> = std::fs::read_dir(dir1.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert!(names.contains(&"instance.json".to_string()));
    for name in &names {
        let a = std::fs::read(dir1.path().join(name)).unwrap();
        let b = std::fs::read(dir2.path().join(name)).unwrap();
        assert_eq!(a, b, "file {name} differs between equal-seed runs");
    }

    // The generated dual instance verifies, through the CLI itself.
    let spec = dir1.path().join("instance.json");
    let (code, stdout, _) =
        run_binary(&["dual-check", "--spec", spec.to_str().unwrap(), "--oracle"]);
    assert_eq!(code, 0, "generated dual pair should verify: {stdout}");

    // Library call agrees byte for byte (thin-delegate check, again).
    let lib = commands::cmd_dual_check(&spec, &Overrides::default(), true).unwrap();
    assert_eq!(lib.text, stdout);
}

#[test]
fn random_kinds_cover_gabor_and_super() {
    let dir = tempfile::tempdir().unwrap();
    let out = commands::cmd_random(RandomKind::Gabor, 7, &dir.path().join("g")).unwrap();
    assert_eq!(out.exit, 0);
    let (code, _, _) = run_binary(&[
        "gabor",
        "--spec",
        dir.path().join("g/instance.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "generated gabor dual should verify");

    let out = commands::cmd_random(RandomKind::Super, 9, &dir.path().join("s")).unwrap();
    assert_eq!(out.exit, 0);
    let (code, stdout, _) = run_binary(&[
        "super",
        "--spec",
        dir.path().join("s/instance.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "generated super dual should verify: {stdout}");
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["flags"]["agreement"], true);
}

#[test]
fn oracle_compare_agrees_on_the_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dual_fixture(dir.path());
    let (code, stdout, _) =
        run_binary(&["oracle-compare", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["agree"], true);
    assert_eq!(report["fiber"]["verdict"], "holds");
    assert_eq!(report["oracle"]["holds"], true);
}
