use std::fs;

use tcat::io::{self, IoError};
use tcat_core::catalog;

#[test]
fn catalog_documents_round_trip_bit_identically() {
    for name in catalog::NAMES {
        let cat = catalog::catalog(name).unwrap();
        let text = io::serialize_category(&cat);
        let back = io::parse_category(&text).unwrap();
        assert_eq!(io::serialize_category(&back), text, "{name}");
        assert_eq!(back.to_parts(), cat.to_parts(), "{name}");
    }
}

#[test]
fn loaded_documents_validate() {
    for name in catalog::NAMES {
        let text = io::serialize_category(&catalog::catalog(name).unwrap());
        assert!(io::parse_category(&text).unwrap().validate().pass, "{name}");
    }
}

#[test]
fn unknown_key_is_named() {
    let mut v: serde_json::Value = serde_json::from_str(&io::serialize_category(
        &catalog::catalog("semion").unwrap(),
    ))
    .unwrap();
    v["braid"] = serde_json::json!([]);
    let err = io::parse_category(&v.to_string()).unwrap_err();
    assert!(matches!(err, IoError::Parse { .. }));
    assert!(err.to_string().contains("`braid`"), "{err}");
}

#[test]
fn wrong_type_is_a_parse_error() {
    let err = io::parse_category(r#"{"name": 3}"#).unwrap_err();
    assert!(matches!(err, IoError::Parse { .. }), "{err}");
}

#[test]
fn missing_f_symbol_reads_as_zero_and_fails_validation() {
    let mut v: serde_json::Value = serde_json::from_str(&io::serialize_category(
        &catalog::catalog("fibonacci").unwrap(),
    ))
    .unwrap();
    v["F"].as_array_mut().unwrap().pop();
    let cat = io::parse_category(&v.to_string()).unwrap();
    assert!(!cat.validate().pass);
}

#[test]
fn inadmissible_f_symbol_is_a_schema_error() {
    let mut v: serde_json::Value = serde_json::from_str(&io::serialize_category(
        &catalog::catalog("fibonacci").unwrap(),
    ))
    .unwrap();
    v["F"].as_array_mut().unwrap().push(serde_json::json!(
        {"a": 0, "b": 0, "c": 0, "d": 1, "e": 0, "f": 0, "re": 1.0, "im": 0.0}
    ));
    let err = io::parse_category(&v.to_string()).unwrap_err();
    assert!(matches!(err, IoError::Category(_)), "{err}");
    assert!(err.to_string().contains('F'), "{err}");
}

#[test]
fn file_errors_carry_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    fs::write(&path, "{").unwrap();
    let err = io::load_category_file(&path).unwrap_err();
    assert!(err.to_string().contains("broken.json"), "{err}");
    let missing = dir.path().join("absent.json");
    assert!(matches!(
        io::load_category_file(&missing),
        Err(IoError::Read { .. })
    ));
}

#[test]
fn atomic_write_replaces_contents() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    io::write_atomic(&path, "first\n").unwrap();
    io::write_atomic(&path, "second\n").unwrap();
    assert_eq!(fs::read_to_string(&path).unwrap(), "second\n");
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}
