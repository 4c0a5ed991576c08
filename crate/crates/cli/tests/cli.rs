use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(rel)
}

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bilocale-lab")).args(args).output().unwrap()
}

fn path(rel: &str) -> String {
    fixture(rel).to_string_lossy().into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn symmetric_chain_is_baire() {
    let out = lab(&["check", "--bilocale", &path("corpus/sym3.json"), "--property", "baire", "--orientation", "1,2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], true);
}

#[test]
fn four_point_bispace_is_boolean_but_not_prefit() {
    let x = path("corpus/four_point_boolean.json");
    let out = lab(&["check", "--bispace", &x, "--property", "boolean", "--format", "json"]);
    assert_eq!(json(&out)["verdict"], true);
    for o in ["1,2", "2,1"] {
        let out = lab(&["check", "--bispace", &x, "--property", "i-prefit", "--orientation", o, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json(&out)["verdict"], false, "orientation {o}");
    }
}

#[test]
fn validate_reports_each_file() {
    let out = lab(&["validate", &path("corpus/four_point_boolean.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)[0]["kind"], "bispace");

    let out = lab(&["validate", "--frame", &path("invalid/m3_frame.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("distributivity fails"));

    let out = lab(&["validate", &path("invalid/empty.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kind_mismatch_is_invalid() {
    let out = lab(&["check", "--frame", &path("corpus/four_point_boolean.json"), "--property", "baire"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn guard_exceeded_exits_3() {
    let out = lab(&["check", "--frame", &path("corpus/chain4_frame.json"), "--property", "equivalence", "--guard", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn empty_corpus_is_clean() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(&["verify-theorems", dir.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["instances"], serde_json::json!([]));
}

#[test]
fn shipped_corpus_refutes_only_open_heredity() {
    let out = lab(&["verify-theorems", &path("corpus"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(4));
    let atlas = json(&out);
    let refuted: Vec<_> = atlas["refutations"].as_array().unwrap().iter().map(|r| (r["proposition"].clone(), r["instance"].clone())).collect();
    assert_eq!(refuted, vec![("open-subbilocale-heredity".into(), "open_heredity_counterexample".into())]);
}

#[test]
fn corpus_without_counterexample_is_clean() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(fixture("corpus")).unwrap() {
        let p = entry.unwrap().path();
        if !p.ends_with("open_heredity_counterexample.json") {
            std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
        }
    }
    let out = lab(&["verify-theorems", dir.path().to_str().unwrap(), "--random-bispaces", "20", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn atlas_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, extra: &[&str]| {
        let file = dir.path().join(name);
        let mut args = vec!["verify-theorems", "--seed", "11", "--random-bilocales", "15", "--random-topobilocales", "15", "--output", file.to_str().unwrap()];
        args.extend_from_slice(extra);
        assert_eq!(lab(&args).status.code().map(|c| c == 0 || c == 4), Some(true));
        std::fs::read(file).unwrap()
    };
    let a = run("a.json", &[]);
    assert_eq!(a, run("b.json", &[]));
    assert_eq!(a, run("c.json", &["--sequential"]));
}

#[test]
fn search_finds_boolean_not_prefit() {
    let out = lab(&["search", "--target", "boolean-not-prefit", "--seed", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let atlas = json(&out);
    let hit = &atlas["separations"][0];
    assert_eq!(hit["target"], "boolean-not-prefit");
    let props = &atlas["instances"][0]["properties"];
    assert_eq!(props["boolean"], true);
    assert!(props["1-prefit"] == false || props["2-prefit"] == false);
}

#[test]
fn search_for_main_refutation_comes_back_empty() {
    let out = lab(&["search", "--target", "refutation", "--budget", "200", "--seed", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let atlas = json(&out);
    assert_eq!(atlas["separations"], serde_json::json!([]));
    assert_eq!(atlas["budget_exhausted"], true);
}

#[test]
fn topobilocale_and_map_checks() {
    let out = lab(&["check", "--topobilocale", &path("corpus/topo_mixed.json"), "--property", "equivalence", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], true);
    let out = lab(&["check", "--map", &path("corpus/map_projection.json"), "--property", "adjunction", "--format", "json"]);
    assert_eq!(json(&out)["verdict"], true);
}

#[test]
fn unknown_property_is_invalid() {
    let out = lab(&["check", "--bilocale", &path("corpus/sym3.json"), "--property", "shiny"]);
    assert_eq!(out.status.code(), Some(2));
}
