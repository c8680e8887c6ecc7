use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn surfcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surfcode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = surfcode(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn params(v: &Value) -> (u64, u64, u64) {
    (
        v["n"].as_u64().unwrap(),
        v["k"].as_u64().unwrap(),
        v["d_exact"].as_u64().expect("exact distance"),
    )
}

#[test]
fn build_code_for_fixed_families() {
    let dp4 = json(&["build-code", "--family", "del-pezzo-4", "--degree", "1"]);
    assert_eq!(params(&dp4), (57, 5, 44));
    assert_eq!(dp4["bounds"]["singleton"], "holds");
    assert_eq!(dp4["bounds"]["ns_alarm"], false);

    let dp6 = json(&["build-code", "--family", "del-pezzo-6", "--field", "7"]);
    assert_eq!(params(&dp6), (57, 7, 41));
    assert_eq!(dp6["method"], "exhaustive");

    let x4 = json(&[
        "build-code",
        "--family",
        "shioda",
        "--field",
        "11",
        "--shioda-degree",
        "4",
    ]);
    assert_eq!(params(&x4), (144, 4, 120));
}

#[test]
fn enumerator_and_generator_are_optional() {
    let v = json(&[
        "build-code",
        "--family",
        "plane",
        "--field",
        "3",
        "--enumerator",
        "--generator",
    ]);
    let a: Vec<u64> = v["weight_enumerator"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(a.iter().sum::<u64>(), 27);
    assert_eq!(a[0], 1);
    assert_eq!(v["generator"].as_array().unwrap().len(), 3);
    let bare = json(&["build-code", "--family", "plane", "--field", "3"]);
    assert!(bare.get("generator").is_none());
}

#[test]
fn min_dist_reports_a_codeword() {
    let v = json(&[
        "min-dist",
        "--family",
        "plane",
        "--field",
        "5",
        "--strategy",
        "isd",
    ]);
    assert_eq!(v["d_upper"], 25);
    assert_eq!(v["exact"], true);
    let w = v["witness"].as_array().unwrap();
    assert_eq!(w.iter().filter(|x| x.as_u64() != Some(0)).count(), 25);
}

#[test]
fn surface_files_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let surf = dir.path().join("weier.surf");
    std::fs::write(
        &surf,
        "field 7\nambient 3\n# a cone over a plane cubic\n3; 0 2 1 0 : 1; 3 0 0 0 : -1; 0 0 3 0 : -3\n",
    )
    .unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        format!("surface = {:?}\ndegree = 2\n", surf.display().to_string()),
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_file = json(&["build-code", "--config", cfg]);
    assert_eq!(from_file["s"], 2);
    let overridden = json(&["build-code", "--config", cfg, "--degree", "1"]);
    assert_eq!(overridden["s"], 1);
    assert_eq!(overridden["n"], 13 * 7 + 1);

    let out = dir.path().join("code.json");
    let o = surfcode(&[
        "build-code",
        "--config",
        cfg,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written, from_file);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.surf");
    std::fs::write(&bad, "field 7\nambient 3\n3; 1 1 1 : 1\n").unwrap();
    for args in [
        vec!["build-code", "--family", "plane", "--field", "6"],
        vec!["build-code", "--family", "nonsense", "--field", "7"],
        vec!["build-code", "--surface", "/nonexistent/x.surf"],
        vec!["build-code", "--surface", bad.to_str().unwrap()],
        vec![
            "build-code",
            "--family",
            "plane",
            "--field",
            "7",
            "--strategy",
            "magic",
        ],
        vec!["build-code", "--family", "del-pezzo-4", "--field", "11"],
        vec!["search", "--field", "7", "--target", "C14"],
        vec!["frobnicate"],
    ] {
        let o = surfcode(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let o = surfcode(&["build-code", "--surface", bad.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

fn search_into(path: &Path) {
    let o = surfcode(&[
        "search",
        "--field",
        "7",
        "--seed",
        "1",
        "--samples",
        "8",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn search_is_deterministic_and_filtered() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"));
    search_into(&a);
    search_into(&b);
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let rows: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!rows.is_empty());
    for r in &rows {
        assert_eq!(r["classification"]["verdict"]["class"], "C12");
        assert_eq!(r["N_r"][0], 64);
        assert_eq!(r["code"]["n"], 64);
        assert_eq!(r["code"]["k"], 4);
        assert_eq!(r["bounds"]["singleton"], "holds");
        assert_eq!(r["seed"], 1);
    }
    // Appending continues the log.
    search_into(&a);
    assert_eq!(
        std::fs::read_to_string(&a).unwrap().lines().count(),
        2 * rows.len()
    );
}

#[test]
fn classify_and_scan_a_sample() {
    let c = json(&[
        "classify",
        "--family",
        "cayley-salmon",
        "--field",
        "7",
        "--seed",
        "1",
    ]);
    let verdict = &c["classification"]["verdict"];
    let observed = c["classification"]["observed"].as_array().unwrap();
    assert_eq!(observed.len(), 3);
    if verdict["class"] == "C12" {
        assert_eq!(observed[0], 64);
    }

    let s = json(&["scan-sections", "--family", "del-pezzo-4"]);
    assert_eq!(s["scan"]["hyperplanes"], 2801);
    assert_eq!(s["scan"]["max"], 13);
    assert_eq!(s["optimal_genus_one"]["value"], 13);
    assert_eq!(s["optimal_genus_one"]["attained"], true);
}

#[test]
fn verify_paper_passes() {
    let o = surfcode(&["verify-paper", "--workers", "2"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let rows: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert!(rows.len() >= 20);
    assert!(rows.iter().all(|r| r["pass"] == true));
    assert!(rows
        .iter()
        .any(|r| r["id"] == "dp6-q8-s1" && r["expected"] == "[73,7,55]"));
}
