use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tcat_core::catalog;

fn tcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcat"))
        .args(args)
        .env_remove(tcat::io::CATALOG_DIR_ENV)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn machine(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "machine"]);
    let o = tcat(&all);
    (
        serde_json::from_str(&stdout(&o)).unwrap(),
        o.status.code().unwrap(),
    )
}

#[test]
fn trivial_s_matrix_prints_one() {
    let o = tcat(&["smatrix", "trivial"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("[[1.0]]\n"), "{}", stdout(&o));
}

#[test]
fn catalog_list_names_every_entry() {
    let o = tcat(&["catalog-list"]);
    let listed: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(listed, catalog::available());
}

#[test]
fn validate_passes_on_the_catalog() {
    for name in catalog::NAMES {
        let (v, code) = machine(&["validate", name]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn factorize_modular_entries() {
    for name in ["fibonacci", "semion", "vec_z3_modular"] {
        let (v, code) = machine(&["factorize", name, "--expect-modular"]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(v["verdict"], "factorizable");
        assert_eq!(v["modular"], true);
        assert_eq!(v["center_count"], v["square_count"]);
        for key in ["qd", "dq", "pb", "bp"] {
            assert!(v["defects"][key].as_f64().unwrap() < 1e-9, "{name} {key}");
        }
    }
}

#[test]
fn factorize_symmetric_z2_is_a_verdict_not_an_error() {
    let (v, code) = machine(&["factorize", "vec_z2_sym"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "not factorizable");
    assert_eq!(v["rank_S"], 1);
    assert!(v["defects"]["dq"].as_f64().unwrap() >= 0.5);
    assert!(v["defects"]["pb"].as_f64().unwrap() >= 0.5);
    let (_, code) = machine(&["factorize", "vec_z2_sym", "--expect-modular"]);
    assert_eq!(code, 1);
}

#[test]
fn expect_modular_on_smatrix_and_muger() {
    assert_eq!(
        tcat(&["smatrix", "vec_z2_sym", "--expect-modular"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        tcat(&["muger", "vec_z2_sym", "--expect-modular"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        tcat(&["muger", "semion", "--expect-modular"]).status.code(),
        Some(0)
    );
}

#[test]
fn muger_reports_transparent_labels() {
    let (v, _) = machine(&["muger", "vec_z2_sym"]);
    assert_eq!(v["transparent"], serde_json::json!(["1", "g"]));
    let (v, _) = machine(&["muger", "ising"]);
    assert_eq!(v["transparent"], serde_json::json!(["1"]));
}

#[test]
fn center_counts_match_rank_squared() {
    for name in catalog::NAMES {
        let (v, code) = machine(&["center", name]);
        assert_eq!(code, 0, "{name}");
        let n = v["labels"].as_array().unwrap().len();
        assert_eq!(v["simples"].as_array().unwrap().len(), n * n, "{name}");
    }
}

#[test]
fn machine_output_is_stable_across_runs() {
    for cmd in ["smatrix", "center", "factorize"] {
        let a = tcat(&[cmd, "ising", "--format", "machine"]);
        let b = tcat(&[cmd, "ising", "--format", "machine"]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn human_and_machine_values_agree() {
    let (v, _) = machine(&["factorize", "semion"]);
    let human = stdout(&tcat(&["factorize", "semion"]));
    for key in ["qd", "dq", "pb", "bp"] {
        let x = v["defects"][key].as_f64().unwrap();
        assert!(human.contains(&format!("{x:?}")), "{key}: {human}");
    }
    let (s, _) = machine(&["smatrix", "fibonacci"]);
    let human = stdout(&tcat(&["smatrix", "fibonacci"]));
    let phi = s["entries"][0][1]["re"].as_f64().unwrap();
    assert!(human.contains(&format!("{phi:?}")), "{human}");
}

#[test]
fn unknown_category_lists_names() {
    let o = tcat(&["validate", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    for name in catalog::NAMES {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn invalid_tolerances_are_usage_errors() {
    for bad in ["-1", "0", "nan"] {
        let o = tcat(&["validate", "fibonacci", "--tolerance-identity", bad]);
        assert_eq!(o.status.code(), Some(2), "{bad}");
    }
    let o = tcat(&[
        "validate",
        "fibonacci",
        "--tolerance-structural",
        "1e-8",
        "--tolerance-identity",
        "1e-6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = tcat(&[
        "validate",
        "fibonacci",
        "--tolerance-structural",
        "1e-3",
        "--tolerance-identity",
        "1e-6",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tcat(&[]).status.code(), Some(2));
    assert_eq!(tcat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tcat(&["validate"]).status.code(), Some(2));
}

#[test]
fn failing_axioms_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&tcat(&["dump", "fibonacci"]));
    let mut v: Value = serde_json::from_str(&text).unwrap();
    for r in v["R"].as_array_mut().unwrap() {
        let re = r["re"].as_f64().unwrap();
        r["re"] = (-re).into();
        let im = r["im"].as_f64().unwrap();
        r["im"] = (0.5 - im).into();
    }
    let path = dir.path().join("broken.json");
    fs::write(&path, v.to_string()).unwrap();
    let o = tcat(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn malformed_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"name": "x"}"#).unwrap();
    let o = tcat(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("labels"), "{}", stderr(&o));
}

#[test]
fn dump_then_load_from_file() {
    let dir = tempfile::tempdir().unwrap();
    for name in catalog::NAMES {
        let path = dir.path().join(format!("{name}.json"));
        let o = tcat(&["dump", name, "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        let again = tcat(&["dump", path.to_str().unwrap()]);
        assert_eq!(stdout(&again), fs::read_to_string(&path).unwrap(), "{name}");
    }
}

#[test]
fn catalog_dir_supplies_extra_names() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&tcat(&["dump", "semion"]));
    let text = text.replacen("\"semion\"", "\"my_semion\"", 1);
    fs::write(dir.path().join("my_semion.json"), text).unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_tcat"))
            .args(args)
            .env(tcat::io::CATALOG_DIR_ENV, dir.path())
            .output()
            .unwrap()
    };
    let o = run(&["smatrix", "my_semion", "--expect-modular"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&run(&["catalog-list"]))
        .lines()
        .any(|l| l == "my_semion"));
}

#[test]
fn out_writes_the_report_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    fs::write(&path, "stale").unwrap();
    let o = tcat(&[
        "factorize",
        "semion",
        "--format",
        "machine",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "factorize");
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn out_to_missing_directory_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("no").join("such").join("file");
    let o = tcat(&["smatrix", "trivial", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!Path::new(&path).exists());
}
