use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use paramedial_cli::record::{from_json, FormRecord};
use paramedial_cli::run::{sha256_hex, RunManifest};

fn pq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pq"))
        .args(args)
        .env_remove("PQ_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn enumerate_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let out = dir.join(name);
    let mut full = vec!["enumerate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", out.to_str().unwrap()]);
    let o = pq(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    fs::read_to_string(out).unwrap()
}

#[test]
fn count_by_order_and_group() {
    let o = pq(&["count", "--order", "9"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("50"));
    let json: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(json["count"], 50);

    let o = pq(&["count", "--group", "cyclic", "2", "4"]);
    assert_eq!(stdout(&o).lines().next(), Some("32"));
    let o = pq(&["count", "--order", "45"]);
    assert_eq!(stdout(&o).lines().next(), Some("450"));
}

#[test]
fn unsupported_order_names_the_missing_groups() {
    let o = pq(&["count", "--order", "27"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("27") && err.contains("3^3"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pq(&["count"]).status.code(), Some(2));
    assert_eq!(
        pq(&["enumerate", "--group", "elem2", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        pq(&["verify", "--group", "cyclic", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn enumerate_record_counts() {
    let dir = tempfile::tempdir().unwrap();
    let all = from_json(&enumerate_to(
        dir.path(),
        "all.json",
        &["--group", "elem2", "3", "--format", "json"],
    ))
    .unwrap();
    assert_eq!(all.len(), 34);
    let simple = from_json(&enumerate_to(
        dir.path(),
        "simple.json",
        &["--group", "elem2", "3", "--simple-only"],
    ))
    .unwrap();
    assert_eq!(simple.len(), 9);
    assert!(simple.iter().all(|r| r.simple));
    let csv = enumerate_to(
        dir.path(),
        "all.csv",
        &["--group", "elem2", "3", "--format", "csv"],
    );
    assert_eq!(csv.lines().next(), Some("group,phi,psi,c,simple,case"));
    assert_eq!(csv.lines().count(), 35);
}

#[test]
fn enumerate_tables() {
    let dir = tempfile::tempdir().unwrap();
    let text = enumerate_to(
        dir.path(),
        "t.txt",
        &["--group", "cyclic", "3", "1", "--format", "tables"],
    );
    let tables: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(tables.len(), 5);
    for block in tables {
        let body: String = block
            .lines()
            .filter(|l| !l.starts_with('#'))
            .map(|l| format!("{l}\n"))
            .collect();
        let t = paramedial::QuasigroupTable::from_text(&body).unwrap();
        assert_eq!(t.order(), 3);
        assert!(t.is_latin() && t.is_paramedial());
    }
}

#[test]
fn json_round_trips_to_forms() {
    let dir = tempfile::tempdir().unwrap();
    let text = enumerate_to(dir.path(), "z9.json", &["--group", "cyclic", "3", "2"]);
    let records = from_json(&text).unwrap();
    assert_eq!(records.len(), 16);
    let forms = paramedial::enumerate_cyclic(paramedial::Modulus::new(3, 2).unwrap()).forms();
    let back: Vec<_> = records.iter().map(|r| r.to_form().unwrap()).collect();
    assert_eq!(back, forms);
    let again: Vec<FormRecord> =
        serde_json::from_str(&serde_json::to_string(&records).unwrap()).unwrap();
    assert_eq!(again, records);
}

#[test]
fn output_is_deterministic_and_manifested() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--group", "elem2", "5", "--format", "json"];
    let a = enumerate_to(dir.path(), "a.json", &args);
    let b = enumerate_to(dir.path(), "b.json", &args);
    assert_eq!(a, b);
    let manifest: RunManifest =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a.json.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest.command, "enumerate");
    assert_eq!(manifest.digest, sha256_hex(a.as_bytes()));
    assert_eq!(manifest.parameters["group"], "elem2 5");
    assert_eq!(manifest.version, paramedial::VERSION);
}

#[test]
fn cached_run_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cold = stdout(&pq(&[
        "enumerate",
        "--group",
        "elem2",
        "3",
        "--format",
        "csv",
    ]));
    let args = [
        "--cache-dir",
        cache.to_str().unwrap(),
        "enumerate",
        "--group",
        "elem2",
        "3",
        "--format",
        "csv",
    ];
    let first = stdout(&pq(&args));
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 1);
    let second = stdout(&pq(&args));
    assert_eq!(cold, first);
    assert_eq!(first, second);

    let o = Command::new(env!("CARGO_BIN_EXE_pq"))
        .args(["enumerate", "--group", "elem2", "3", "--format", "json"])
        .env("PQ_CACHE_DIR", &cache)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 2);
}

#[test]
fn verify_levels() {
    for args in [
        ["verify", "--group", "elem2", "3", "--level", "oracle"].as_slice(),
        &["verify", "--group", "cyclic", "5", "2", "--level", "fast"],
        &["verify", "--group", "elem2", "2", "--level", "oracle"],
    ] {
        let o = pq(args);
        let text = stdout(&o);
        assert!(o.status.success(), "{args:?}\n{text}");
        assert!(!text.contains("FAIL"));
        assert!(text
            .lines()
            .all(|l| l.starts_with("PASS") || l.starts_with("SKIP")));
    }
    let text = stdout(&pq(&[
        "verify", "--group", "cyclic", "5", "2", "--level", "fast",
    ]));
    assert!(text.contains("46 classes"));
    let text = stdout(&pq(&[
        "verify", "--group", "elem2", "2", "--level", "oracle",
    ]));
    assert!(text.contains("PASS oracle class count: 7 orbits"));
}

#[test]
fn verify_bound_exceeded_exits_three() {
    assert_eq!(
        pq(&["verify", "--group", "elem2", "7", "--level", "oracle"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn write_errors_name_the_path() {
    let o = pq(&[
        "enumerate",
        "--group",
        "cyclic",
        "3",
        "1",
        "--out",
        "/nonexistent-dir/x.json",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent-dir/x.json"));
}
