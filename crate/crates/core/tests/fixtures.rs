use std::fs;
use std::path::Path;

use codeweights::cli::write_fixtures;
use codeweights::code::DEFAULT_ENUMERATION_BUDGET;
use codeweights::io::{distribution_from_json, parse_code};
use codeweights::specimens;
use serde_json::Value;

fn golden_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures"))
}

#[test]
fn regenerated_fixtures_match_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let written = write_fixtures(dir.path(), DEFAULT_ENUMERATION_BUDGET).unwrap();
    assert!(!written.is_empty());
    for name in &written {
        let fresh = fs::read_to_string(dir.path().join(name)).unwrap();
        let golden = fs::read_to_string(golden_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(fresh, golden, "{name} differs from the checked-in copy");
    }
}

#[test]
fn golden_code_files_parse_to_the_specimens() {
    let c1 = parse_code(&fs::read_to_string(golden_dir().join("c1.code")).unwrap()).unwrap();
    assert_eq!(c1, specimens::c1());
    let c2 = parse_code(&fs::read_to_string(golden_dir().join("c2.code")).unwrap()).unwrap();
    assert_eq!(c2, specimens::c2());
}

#[test]
fn golden_tables_are_valid_distributions() {
    for name in ["mds_table.json", "extremal.json"] {
        let v: Value = serde_json::from_str(&fs::read_to_string(golden_dir().join(name)).unwrap()).unwrap();
        for doc in v.as_array().unwrap() {
            let a = distribution_from_json(doc).unwrap();
            assert!(a.is_valid(), "{name}: {a:?}");
        }
    }
}
