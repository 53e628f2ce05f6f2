//! End-to-end tests of the `mvbetti` binary: flags, record format,
//! determinism, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(file)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvbetti"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn recursive_on_bundled_octahedron_verifies_the_sphere() {
    let file = data("octahedron-explicit-covers.txt");
    let out = run(&[
        file.to_str().unwrap(),
        "--pipeline",
        "recursive",
        "--ell",
        "2",
        "--cover",
        "explicit",
        "--verify",
    ]);
    let text = stdout_of(&out);
    assert!(out.status.success(), "stderr: {:?}", out.stderr);
    assert!(text.contains("pipeline: recursive\n"), "got:\n{text}");
    assert!(text.contains("betti: [1, 0, 1]\n"), "got:\n{text}");
    assert!(text.contains("dag-levels: [1, 3, 5]\n"), "got:\n{text}");
    assert!(text.contains("dag-total: 9\n"), "got:\n{text}");
    assert!(text.contains("verify: agree\n"), "got:\n{text}");
}

#[test]
fn oracle_on_torus_reports_its_betti_numbers() {
    let file = data("torus.txt");
    let out = run(&[file.to_str().unwrap(), "--pipeline", "oracle", "--ell", "2"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("betti: [1, 2, 1]\n"));
}

#[test]
fn betti01_with_star_cover_sees_the_circle() {
    let file = data("circle.txt");
    let out = run(&[
        file.to_str().unwrap(),
        "--pipeline",
        "betti01",
        "--cover",
        "star",
    ]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("betti: [1, 1]\n"));
}

#[test]
fn oracle_on_two_points_counts_components() {
    let file = data("two-points.txt");
    let out = run(&[file.to_str().unwrap(), "--pipeline", "oracle", "--ell", "0"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("betti: [2]\n"));
}

#[test]
fn oracle_on_projective_plane_is_rationally_trivial() {
    let file = data("projective-plane.txt");
    let out = run(&[file.to_str().unwrap(), "--pipeline", "oracle", "--ell", "2"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("betti: [1, 0, 0]\n"));
}

/// The two-element hemisphere cover is not fine enough for the nerve to
/// see degree 2, and --verify turns that into exit code 2.
#[test]
fn nerve_mismatch_exits_with_code_two() {
    let file = data("octahedron-explicit-covers.txt");
    let out = run(&[
        file.to_str().unwrap(),
        "--pipeline",
        "nerve",
        "--ell",
        "2",
        "--cover",
        "explicit",
        "--verify",
    ]);
    let text = stdout_of(&out);
    assert_eq!(out.status.code(), Some(2), "got:\n{text}");
    assert!(text.contains("betti: [1, 0, 0]\n"), "got:\n{text}");
    assert!(
        text.contains("verify: mismatch (oracle [1, 0, 1])\n"),
        "got:\n{text}"
    );
}

/// The full one-level Mayer–Vietoris complex of the hemisphere cover is
/// exact and agrees with the oracle.
#[test]
fn mv_pipeline_on_explicit_hemispheres_matches_the_sphere() {
    let file = data("octahedron-explicit-covers.txt");
    let out = run(&[
        file.to_str().unwrap(),
        "--pipeline",
        "mv",
        "--ell",
        "2",
        "--cover",
        "explicit",
        "--verify",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("betti: [1, 0, 1]\n"), "got:\n{text}");
    assert!(text.contains("verify: agree\n"), "got:\n{text}");
}

#[test]
fn identical_invocations_produce_identical_stdout() {
    let file = data("octahedron-explicit-covers.txt");
    let args = [
        file.to_str().unwrap(),
        "--pipeline",
        "recursive",
        "--ell",
        "2",
        "--cover",
        "explicit",
        "--show-complex",
        "--verify",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn machine_output_is_one_json_line() {
    let file = data("octahedron-explicit-covers.txt");
    let out = run(&[
        file.to_str().unwrap(),
        "--pipeline",
        "recursive",
        "--ell",
        "2",
        "--cover",
        "explicit",
        "--verify",
        "--machine",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 1, "got:\n{text}");
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["pipeline"], "recursive");
    assert_eq!(v["ell"], 2);
    assert_eq!(v["betti"], serde_json::json!([1, 0, 1]));
    assert_eq!(v["dag"]["levels"], serde_json::json!([1, 3, 5]));
    assert_eq!(v["verify"], "agree");
}

#[test]
fn out_flag_writes_the_record_to_a_file() {
    let file = data("circle.txt");
    let dir = std::env::temp_dir().join("mvbetti-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("record.txt");
    let _ = std::fs::remove_file(&target);
    let out = run(&[
        file.to_str().unwrap(),
        "--pipeline",
        "oracle",
        "--ell",
        "1",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    assert!(written.contains("betti: [1, 1]\n"));
}

#[test]
fn show_complex_dumps_every_index_with_matrices() {
    let file = data("octahedron-explicit-covers.txt");
    let out = run(&[
        file.to_str().unwrap(),
        "--pipeline",
        "recursive",
        "--ell",
        "2",
        "--cover",
        "explicit",
        "--show-complex",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    // One section per DAG index.
    assert_eq!(text.matches("== index ").count(), 9, "got:\n{text}");
    assert!(text.contains("path 0/H1.H2/C1.C2 level 2"), "got:\n{text}");
    // The root's two displayed differentials, as integer rows.
    assert!(text.contains("horizontal (0,0):\n[-1 1]\n[-1 1]\n"), "got:\n{text}");
    assert!(text.contains("vertical (1,0):\n[-1 1]\n[-1 1]\n"), "got:\n{text}");
}

#[test]
fn missing_file_is_an_ordinary_error() {
    let out = run(&["/nonexistent/input.txt", "--pipeline", "oracle"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("error:"), "stderr: {err}");
}

#[test]
fn wall_time_goes_to_stderr_not_stdout() {
    let file = data("two-points.txt");
    let out = run(&[file.to_str().unwrap(), "--pipeline", "oracle", "--ell", "0"]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("wall-ms:"), "stderr: {err}");
    assert!(!stdout_of(&out).contains("wall-ms:"));
}
