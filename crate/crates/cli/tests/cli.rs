use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn angleset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_angleset"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = angleset(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn catalog_file(dir: &TempDir, name: &str) -> PathBuf {
    let path = dir.path().join(format!("{name}.json"));
    let out = angleset(&["catalog", name, "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_hexagon() {
    let dir = TempDir::new().unwrap();
    let hex = catalog_file(&dir, "polygon-6");
    let v = ok_json(&["--format", "json", "analyze", s(&hex)]);
    assert_eq!(v["strength"], 5);
    assert_eq!(v["tight"], true);
    assert_eq!(v["rational"], true);
    assert_eq!(v["angles"][1]["value"], "1/4");
    assert_eq!(v["angles"][1]["pairs"], 6);
    assert!(v["scheme"].is_null());
}

#[test]
fn analyze_icosahedron() {
    let dir = TempDir::new().unwrap();
    let ico = catalog_file(&dir, "icosahedron");
    let v = ok_json(&["analyze", s(&ico), "--format", "json"]);
    assert_eq!(v["strength"], 5);
    assert_eq!(v["tight"], true);
    assert_eq!(v["rational"], false);
    assert_eq!(v["radicand"], 5);
    assert_eq!(v["angles"][2]["value"]["b"], "1/10");
    assert_eq!(v["annihilator"]["text"], "60x^3 - 60x^2 + 12x");
}

#[test]
fn scheme_verdicts() {
    let dir = TempDir::new().unwrap();
    let ico = catalog_file(&dir, "icosahedron");
    let v = ok_json(&["--format", "json", "scheme", s(&ico)]);
    let verdict = &v["scheme"]["verdict"];
    assert_eq!(verdict["collision_pairs"], serde_json::json!([[1, 3]]));
    assert_eq!(verdict["consistent"], true);
    assert_eq!(verdict["certified_rational"], false);

    let e8 = catalog_file(&dir, "e8");
    let v = ok_json(&["--format", "json", "scheme", s(&e8)]);
    assert_eq!(v["strength"], 7);
    assert_eq!(v["scheme"]["verdict"]["certified_rational"], true);
    let ranks: Vec<u64> = v["scheme"]["ranks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["elimination"].as_u64().unwrap())
        .collect();
    assert_eq!(ranks, vec![1, 8, 35, 112, 84]);
}

#[test]
fn corrupt_gram_names_the_entry() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("corrupt.json");
    std::fs::write(
        &path,
        r#"{"geometry": {"rank": 2, "degree": 1},
            "gram": [["1", "1/4", "0"], ["1/4", "1", "1/2"], ["0", "1/3", "1"]]}"#,
    )
    .unwrap();
    let out = angleset(&["analyze", s(&path)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("(1, 2)"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn non_tight_design_is_refused_by_scheme() {
    let dir = TempDir::new().unwrap();
    let pentagon = catalog_file(&dir, "polygon-5");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&pentagon).unwrap()).unwrap();
    let gram = v["gram"].as_array_mut().unwrap();
    gram.remove(0);
    for row in gram.iter_mut() {
        row.as_array_mut().unwrap().remove(0);
    }
    let cut = dir.path().join("pentagon-minus-point.json");
    std::fs::write(&cut, v.to_string()).unwrap();

    let analyzed = ok_json(&["--format", "json", "analyze", s(&cut)]);
    assert_eq!(analyzed["tight"], false);
    let out = angleset(&["scheme", s(&cut)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not tight"));
}

#[test]
fn ranks_subcommand() {
    let v = ok_json(&["--format", "json", "ranks", "--rank", "2", "--degree", "2", "--s", "3", "--eps", "1"]);
    assert_eq!(v["ranks"], serde_json::json!(["1", "3", "5", "3"]));
    assert_eq!(v["collisions"], serde_json::json!([[1, 3]]));
    let text = angleset(&["ranks", "--rank", "2", "--degree", "7", "--s", "4", "--eps", "1"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("[1, 8, 35, 112, 84]"));
}

#[test]
fn bad_parameters_exit_one() {
    for args in [
        &["ranks", "--rank", "4", "--degree", "8", "--s", "2", "--eps", "1"][..],
        &["ranks", "--rank", "2", "--degree", "2", "--s", "2", "--eps", "3"],
        &["ranks", "--rank", "2", "--degree", "2", "--s", "0", "--eps", "0"],
        &["catalog", "polygon-7"],
        &["catalog", "dodecahedron"],
        &["analyze", "/nonexistent/design.json"],
        &["frobnicate"],
    ] {
        assert_eq!(angleset(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn scan_summary_names_exceptions() {
    let v = ok_json(&["--format", "json", "scan", "--degrees", "2", "--max-rank", "2", "--max-s", "6"]);
    let exceptions = v["exceptions"].as_array().unwrap();
    assert!(exceptions.contains(&serde_json::json!([2, 2, 3, 1])));
    assert!(exceptions.contains(&serde_json::json!([2, 2, 5, 1])));
    assert_eq!(v["summary"]["icosahedral"], 1);
    assert_eq!(v["summary"]["uncertified"], 1);
}

#[test]
fn json_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let ico = catalog_file(&dir, "icosahedron");
    let runs = [
        vec!["--format", "json", "scheme", s(&ico)],
        vec!["--format", "json", "scan", "--degrees", "1,2,4", "--max-rank", "8", "--max-s", "8"],
        vec!["catalog", "polygon-8"],
    ];
    for args in runs {
        let a = angleset(&args);
        let b = angleset(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn catalog_round_trip() {
    let dir = TempDir::new().unwrap();
    let e8 = catalog_file(&dir, "e8");
    let v = ok_json(&["--format", "json", "analyze", s(&e8)]);
    assert_eq!(v["strength"], 7);
    assert_eq!(v["cardinality"], 240);
    let angles: Vec<&str> = v["angles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["value"].as_str().unwrap())
        .collect();
    assert_eq!(angles, vec!["0", "1/4", "1/2", "3/4"]);

    // Re-emitting the parsed file reproduces it byte for byte.
    let cross = catalog_file(&dir, "cross-polytope-3");
    let first = std::fs::read(&cross).unwrap();
    let stdout = angleset(&["catalog", "cross-polytope-3"]).stdout;
    assert_eq!(first, stdout);
    assert!(String::from_utf8_lossy(&first).contains("\"points\""));
}

#[test]
fn text_output_is_default() {
    let dir = TempDir::new().unwrap();
    let hex = catalog_file(&dir, "polygon-6");
    let out = angleset(&["scheme", s(&hex)]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("strength      t = 5"));
    assert!(text.contains("collisions (0,3) (1,2)"));
    assert!(text.contains("observed rational: true"));
}

#[test]
fn output_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("ranks.txt");
    let out = angleset(&["ranks", "--rank", "3", "--degree", "2", "--s", "1", "--eps", "0", "-o", s(&path)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("ranks [1, 8]"));
}
