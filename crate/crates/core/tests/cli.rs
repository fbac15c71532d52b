use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semiswitch"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn of_kind<'a>(recs: &'a [Value], kind: &str) -> Vec<&'a Value> {
    recs.iter().filter(|r| r["kind"] == kind).collect()
}

#[test]
fn search_f8_finds_four_monomials() {
    let out = run(&["search", "--p", "2", "--m", "1", "--n", "3", "--exhaustive"]);
    assert!(out.status.success());
    let recs = records(&out);
    assert_eq!(recs[0]["kind"], "run_config");
    let results = of_kind(&recs, "result");
    assert_eq!(results.len(), 4);
    assert!(results.iter().all(|r| r["classification"]["monomial"] == true));
}

#[test]
fn search_f9_results_are_n2() {
    let out = run(&["search", "--p", "3", "--n", "2", "--exhaustive"]);
    let recs = records(&out);
    let results = of_kind(&recs, "result");
    assert!(!results.is_empty());
    for r in results {
        let fams = r["classification"]["families"].as_array().unwrap();
        assert!(fams.contains(&Value::from("N2")));
    }
}

#[test]
fn random_search_is_reproducible() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for dir in &dirs {
        let out = bin()
            .current_dir(dir.path())
            .args([
                "search", "--p", "3", "--n", "5", "--random", "--seed", "7", "--budget", "10^4", "--brief", "--out",
                "r.jsonl",
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let read = |i: usize| std::fs::read(dirs[i].path().join("r.jsonl")).unwrap();
    assert_eq!(read(0), read(1));
}

#[test]
fn verify_q4_instance() {
    let out = run(&["verify", "--l-file", data("q4_n3_example.jsonl").to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let recs = records(&out);
    let r = of_kind(&recs, "verify")[0];
    assert_eq!(r["predicate"], true);
    assert_eq!(r["presemifield"], true);
    assert_eq!(r["commutative"], false);
    assert_eq!(r["ganley"], false);
}

#[test]
fn verify_q3_commutative_instance() {
    let out = run(&["verify", "--l-file", data("q3_n4_commutative.jsonl").to_str().unwrap()]);
    let recs = records(&out);
    let r = of_kind(&recs, "verify")[0];
    assert_eq!(r["ganley"], true);
    let nuc: Vec<u64> = r["nuclei"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(&nuc[..3], &[3, 9, 3]);
    assert!(nuc[3] >= 3);
}

#[test]
fn verify_zero_poly_reports_zero_divisor() {
    let out = run(&["verify", "--l-file", data("q3_n2_zero.jsonl").to_str().unwrap()]);
    assert!(out.status.success());
    let recs = records(&out);
    let r = of_kind(&recs, "verify")[0];
    assert_eq!(r["predicate"], false);
    assert!(r["zero_divisor"].is_object());
}

#[test]
fn codes_reports() {
    let recs = records(&run(&["codes", "--p", "3", "--m", "1", "--n", "2"]));
    let c = of_kind(&recs, "codes")[0];
    assert_eq!(c["dimension"], 3);
    assert_eq!(c["nonconstant_full_weight"], true);

    let recs = records(&run(&["codes", "--p", "2", "--m", "1", "--n", "3"]));
    let c = of_kind(&recs, "codes")[0];
    assert_eq!(c["dimension"], 7);
    assert_eq!(c["nonconstant_full_weight"], false);
}

#[test]
fn hws_support_two() {
    let out = run(&["hws", "--l-file", data("q3_n4_support2.jsonl").to_str().unwrap()]);
    let recs = records(&out);
    let r = of_kind(&recs, "hws")[0];
    assert_eq!(r["ell"], 8);
    assert_eq!(r["genus"], 7);
    assert_eq!(r["triggered"], false);
}

#[test]
fn exit_codes() {
    let out = run(&["search", "--p", "3", "--n", "2", "--exhaustive", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let out = bin()
        .args(["search", "--p", "3", "--n", "2", "--exhaustive"])
        .env("SEMISWITCH_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(run(&["search", "--p", "4", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--p", "2", "--n", "3", "--modulus", "1,0,0,1"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.jsonl");
    std::fs::write(&bad, "{not json}\n").unwrap();
    assert_eq!(run(&["verify", "--p", "3", "--n", "2", "--l-file", bad.to_str().unwrap()]).status.code(), Some(2));
    let wrong_len = dir.path().join("len.jsonl");
    std::fs::write(&wrong_len, "{\"coeffs\":[1]}\n").unwrap();
    assert_eq!(
        run(&["verify", "--p", "3", "--n", "2", "--l-file", wrong_len.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn views() {
    let out = run(&["search", "--p", "2", "--n", "3", "--exhaustive", "--format", "csv"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("index,a0,a1,a2"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.jsonl");
    let out = run(&[
        "hws", "--format", "table", "--out", path.to_str().unwrap(), "--l-file",
        data("q3_n4_support2.jsonl").to_str().unwrap(),
    ]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("ell"));
    let persisted = std::fs::read_to_string(&path).unwrap();
    assert!(persisted.lines().next().unwrap().contains("run_config"));
}
