use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture() -> String {
    root().join("data/study_matrix.csv").display().to_string()
}

fn mcdm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcdm")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = mcdm(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn check_golden(name: &str, args: &[&str]) {
    let first = stdout(args);
    let second = stdout(args);
    assert_eq!(first, second, "{name} differs between runs");
    assert_eq!(first, golden(name), "{name} differs from golden file");
}

#[test]
fn rank_golden() {
    let input = fixture();
    check_golden("rank.txt", &["rank", "--input", &input]);
    check_golden("rank.json", &["rank", "--input", &input, "--format", "json"]);
    check_golden("rank.svg", &["rank", "--input", &input, "--format", "svg"]);
}

#[test]
fn repro_golden() {
    check_golden("repro.txt", &["repro"]);
    check_golden("repro.json", &["repro", "--format", "json"]);
}

#[test]
fn sensitivity_golden() {
    let input = fixture();
    check_golden("sensitivity.txt", &["sensitivity", "--input", &input]);
    check_golden("sensitivity.json", &["sensitivity", "--input", &input, "--format", "json"]);
}

#[test]
fn weights_golden() {
    check_golden("weights.txt", &["weights", "--input", &fixture()]);
}

#[test]
fn bundled_fixture_is_the_default_input() {
    assert_eq!(stdout(&["rank"]), stdout(&["rank", "--input", &fixture()]));
}

#[test]
fn zero_manual_weights_are_a_domain_error() {
    let out = mcdm(&["rank", "--input", &fixture(), "--weights", "manual:0,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr(&out).trim_end(), "error: all weights zero");
    assert!(out.stdout.is_empty());
}

#[test]
fn wrong_manual_length_is_a_domain_error() {
    let out = mcdm(&["rank", "--weights", "manual:1,2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error: "));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["rank", "--weights", "bogus"][..],
        &["rank", "--input", "/nonexistent/matrix.csv"],
        &["repro", "--format", "svg"],
        &["sensitivity", "--format", "svg"],
        &["frobnicate"],
        &["sensitivity", "--recompute"],
    ] {
        let out = mcdm(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn malformed_matrix_is_a_domain_error() {
    let dir = std::env::temp_dir().join(format!("mcdm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ragged.csv");
    std::fs::write(&path, ",a,b\ndirection,benefit,cost\nx,1,2\ny,3\n").unwrap();
    let out = mcdm(&["rank", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error: "), "{}", stderr(&out));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn aggregate_then_rank() {
    let dir = std::env::temp_dir().join(format!("mcdm-agg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let survey = dir.join("survey.csv");
    std::fs::write(
        &survey,
        "group,item,rating\nnorth,pay,4\nnorth,pay,2\nnorth,hours,3\nsouth,pay,5\nsouth,hours,1\n",
    )
    .unwrap();
    let matrix = stdout(&["aggregate", "--input", survey.to_str().unwrap()]);
    assert_eq!(matrix, ",hours,pay\ndirection,benefit,benefit\nnorth,3,3\nsouth,1,5\n");
    let path = dir.join("matrix.csv");
    std::fs::write(&path, &matrix).unwrap();
    let ranked = stdout(&["rank", "--input", path.to_str().unwrap(), "--weights", "equal"]);
    assert!(ranked.starts_with("Alternative\tSi-\tSi+\tci\trank\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ahp_weights_from_file() {
    let dir = std::env::temp_dir().join(format!("mcdm-ahp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pairwise.csv");
    std::fs::write(&path, "a,b\n1,3\n0.3333333333333333,1\n").unwrap();
    let matrix = dir.join("m.csv");
    std::fs::write(&matrix, ",a,b\ndirection,benefit,benefit\nx,1,2\ny,2,1\n").unwrap();
    let spec = format!("ahp:{}", path.display());
    let out = stdout(&["weights", "--input", matrix.to_str().unwrap(), "--weights", &spec, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let w = v["weights"].as_array().unwrap();
    assert!((w[0].as_f64().unwrap() - 0.75).abs() < 1e-9);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn leave_one_out_runs() {
    let out = stdout(&["sensitivity", "--leave-one-out", "--recompute", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["runs"].as_array().unwrap().len(), 9);
    assert_eq!(v["weights_recomputed"], true);
}
