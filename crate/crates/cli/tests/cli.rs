use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use toric_cohom_cli::{run, EXIT_CHECK, EXIT_INPUT, EXIT_NON_FINITE, EXIT_OK};

fn model(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "models", &format!("{name}.json")]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("toric-cohom").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn single_class_with_oracle() {
    let p2 = model("P2");
    let (code, out, _) = invoke(&["run", &p2, "--class=-3", "--oracle-check"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "(-3): 0 0 1  [oracle PASS]\n");
    let (code, out, _) = invoke(&["run", &p2, "--class", "-3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "(-3): 0 0 1\n");
}

#[test]
fn csv_box() {
    let (code, out, _) = invoke(&["run", &model("P1xP1"), "--box=-2..2,-2..2", "--format=csv"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "a1,a2,h0,h1,h2");
    assert_eq!(lines.len(), 26);
    assert_eq!(lines[1], "-2,-2,0,0,1");
    assert!(lines.contains(&"-2,2,0,3,0"));
    assert_eq!(lines[25], "2,2,9,0,0");
}

#[test]
fn rows_are_sorted_lexicographically() {
    let (code, out, _) = invoke(&["run", &model("P2"), "--class=3", "--class=-1", "--class=0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "(-1): 0 0 0\n(0): 1 0 0\n(3): 10 0 0\n");
}

#[test]
fn wrong_class_length_is_rejected() {
    let (code, out, err) = invoke(&["run", &model("P2"), "--class=0,1"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.is_empty());
    assert!(err.contains("dimensions"), "{err}");
    let (code, _, _) = invoke(&["run", &model("P2"), "--box=0..1,0..1"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn bad_input_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let (code, _, err) = invoke(&["run", bad.to_str().unwrap(), "--class=0"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("malformed"), "{err}");
    let (code, _, _) = invoke(&["run", "/nonexistent/model.json", "--class=0"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = invoke(&["run", &model("P2"), "--class=x"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = invoke(&["run", &model("P2")]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = invoke(&["frobnicate"]);
    assert_eq!(code, EXIT_INPUT);
}

fn truncated_plane(dir: &tempfile::TempDir) -> String {
    let path = dir.path().join("truncated.json");
    std::fs::write(
        &path,
        r#"{ "coordinates": ["x1","x2","x3"], "dimension": 2, "charges": [[1],[1],[1]],
             "max_cones": [[1,2],[2,3]] }"#,
    )
    .unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn non_finite_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, err) = invoke(&["run", &truncated_plane(&dir), "--class=0"]);
    assert_eq!(code, EXIT_NON_FINITE);
    assert!(out.is_empty());
    assert!(err.contains("non-finite cohomology"), "{err}");
}

#[test]
fn check_subcommand() {
    let (code, out, _) = invoke(&["check", &model("dP3")]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("hochster: PASS"));
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = invoke(&["check", &truncated_plane(&dir)]);
    assert_eq!(code, EXIT_CHECK, "{out}");
    assert!(out.contains("complement filter: FAIL"));
}

#[test]
fn json_round_trip() {
    let (code, out, _) = invoke(&["run", &model("F1"), "--box=-3..3,-3..3", "--format=json", "--verbose"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 49);
    let model = toric_cohom::bundled::model("F1").unwrap();
    let engine = toric_cohom::Engine::new(&model).unwrap();
    for row in &rows {
        let alpha: Vec<i64> = serde_json::from_value(row["alpha"].clone()).unwrap();
        let h: Vec<u64> = serde_json::from_value(row["h"].clone()).unwrap();
        let expected = engine.cohomology(&toric_cohom::DivisorClass(alpha)).unwrap();
        assert_eq!(Some(h), expected.dims_u64());
        for entry in row["breakdown"].as_array().unwrap() {
            assert_eq!(entry["degree"].as_str().unwrap().len(), 4);
            assert!(entry["count"].is_u64() || entry["count"] == "inf");
            assert!(entry["factors"].is_object() && entry["contrib"].is_object());
        }
    }
}

#[test]
fn verbose_lists_rationoms() {
    let (code, out, _) = invoke(&["run", &model("P2"), "--class=-4", "--verbose"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "(-4): 0 0 3\n  degree 111 |sigma|=3 count=3 factors {1:1} h2+=3\n    \
         1/(x1^2 x2 x3), 1/(x1 x2^2 x3), 1/(x1 x2 x3^2)\n"
    );
}

#[test]
fn self_checks_in_table_and_csv() {
    let args = ["--box=-2..2,-1..1,-1..1,-1..1", "--serre-check", "--oracle-check", "--unfiltered-debug"];
    let dp3 = model("dP3");
    let mut argv = vec!["run", dp3.as_str()];
    argv.extend(args);
    let (code, out, _) = invoke(&argv);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 135);
    assert!(out.lines().all(|l| l.ends_with("[oracle PASS]  [serre PASS]  [filter PASS]")));
    argv.push("--format=csv");
    let (code, out, _) = invoke(&argv);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("a1,a2,a3,a4,h0,h1,h2,oracle,serre,filter\n"));
}

#[test]
fn sequential_flag_gives_same_output() {
    let p = model("P1xP1xP1");
    let a = invoke(&["run", &p, "--box=-2..2,-2..2,-2..2", "--format=csv"]);
    let b = invoke(&["run", &p, "--box=-2..2,-2..2,-2..2", "--format=csv", "--sequential"]);
    assert_eq!(a, b);
}

#[test]
fn non_smooth_model_warns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wp.json");
    // weighted projective plane P(1,1,2)
    std::fs::write(
        &path,
        r#"{ "coordinates": ["x","y","z"], "dimension": 2, "charges": [[1],[1],[2]],
             "max_cones": [[1,2],[2,3],[1,3]] }"#,
    )
    .unwrap();
    let (code, out, err) = invoke(&["run", path.to_str().unwrap(), "--class=2"]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("warning"), "{err}");
    assert_eq!(out, "(2): 4 0 0\n");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_toric-cohom");
    let ok = Command::new(bin).args(["run", &model("P2"), "--class=2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "(2): 6 0 0\n");
    let bad = Command::new(bin).args(["run", &model("P2"), "--class=0,1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(EXIT_OK));
}
