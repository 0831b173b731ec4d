use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn heckeflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckeflow"))
        .args(args)
        .env_remove("HECKEFLOW_TOL")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = heckeflow(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fails(args: &[&str], code: i32) -> String {
    let out = heckeflow(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    String::from_utf8(out.stderr).unwrap()
}

fn records(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn lens_rows() {
    let r = records(&ok(&["lens", "--n", "2", "--k", "3", "--c", "1"]));
    assert_eq!(r.len(), 1);
    assert_eq!(r[0]["lens"], "S3");
    assert_eq!(r[0]["s3"], true);

    let r = records(&ok(&["lens", "--n", "2", "--k", "5", "--c", "1"]));
    assert_eq!((r[0]["p"].as_i64(), r[0]["q"].as_i64()), (Some(3), Some(1)));
    assert_eq!(r[0]["lens"], "L(3,1)");

    let r = records(&ok(&["lens", "--n", "2", "--k", "5", "--c", "-2..3"]));
    assert_eq!(r.len(), 6);
    for row in &r {
        assert_eq!(row["b"].as_i64().unwrap(), row["c"].as_i64().unwrap() - 1);
    }
    let table = ok(&["lens", "--k", "5", "--c", "-2..3", "--format", "table"]);
    assert_eq!(table.lines().count(), 7);
    assert!(table.starts_with("c "));
}

#[test]
fn lens_exit_codes() {
    fails(&["lens", "--k", "5", "--c", "3..1"], 2);
    fails(&["lens", "--n", "1", "--k", "5", "--c", "1"], 2);
    fails(&["lens", "--k", "5", "--c", "x"], 2);
    fails(&["lens", "--k", "5"], 2);
    let e = fails(&["lens", "--k", "3", "--c", "4000000000000000000"], 3);
    assert!(e.contains("overflow"), "{e}");
}

#[test]
fn orbit_records() {
    let r = records(&ok(&["orbits", "--k", "3", "--max-len", "2"]));
    assert_eq!(r.len(), 3);
    assert_eq!(r.iter().filter(|x| x["class"] == "hyperbolic").count(), 1);
    assert!(r.iter().all(|x| x["length"].is_null() == (x["class"] != "hyperbolic")));

    let r = records(&ok(&["orbits", "--k", "5", "--max-len", "1"]));
    assert_eq!(r.len(), 4);

    let r = records(&ok(&["orbits", "--k", "3", "--max-len", "6", "--geodesics"]));
    assert!(r.iter().all(|x| x["class"] == "hyperbolic"));
}

#[test]
fn orbits_are_sorted_and_stable() {
    let a = ok(&["orbits", "--k", "5", "--max-len", "4"]);
    assert_eq!(a, ok(&["orbits", "--k", "5", "--max-len", "4"]));
    let keys: Vec<(usize, Vec<u64>)> = records(&a)
        .iter()
        .map(|x| {
            let w = x["word"].as_str().unwrap().trim_matches(|c| c == '(' || c == ')');
            let letters: Vec<u64> = w.split(',').map(|s| s.parse().unwrap()).collect();
            (letters.len(), letters)
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let first = a.lines().next().unwrap();
    let fields: Vec<&str> = ["\"word\"", "\"trace\"", "\"class\"", "\"length\"", "\"lk_xi\""].to_vec();
    let at: Vec<usize> = fields.iter().map(|f| first.find(f).unwrap()).collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]), "{first}");
}

#[test]
fn orbits_exit_codes() {
    fails(&["orbits", "--k", "4"], 2);
    fails(&["orbits", "--max-len", "15"], 2);
    fails(&["orbits", "--max-len", "0"], 2);
    fails(&["orbits", "--d-offset", "-0.5"], 2);
    fails(&["orbits", "--format", "svg"], 2);
    let e = fails(&["orbits", "--out", "/nonexistent/dir/o.jsonl"], 3);
    assert!(e.contains("/nonexistent/dir/o.jsonl"), "{e}");
}

#[test]
fn tolerance_from_environment() {
    let run_with = |tol: &str, extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_heckeflow"))
            .args(["orbits", "--k", "3", "--max-len", "2"])
            .args(extra)
            .env("HECKEFLOW_TOL", tol)
            .output()
            .unwrap()
    };
    let run = |tol: &str| run_with(tol, &[]);
    let hyperbolic = |out: Output| {
        assert_eq!(out.status.code(), Some(0));
        records(&String::from_utf8(out.stdout).unwrap())
            .iter()
            .filter(|x| x["class"] == "hyperbolic")
            .count()
    };
    assert_eq!(hyperbolic(run("1e-6")), 1);
    // a band narrower than rounding noise no longer sees the cusp word as parabolic
    assert_eq!(hyperbolic(run("1e-17")), 2);
    assert_eq!(hyperbolic(run_with("1e-17", &["--tol", "1e-9"])), 1);
    assert_eq!(run("lots").status.code(), Some(2));
    assert_eq!(run("2").status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# k=5 run\nk = 5\nmax_word_len = 1\n").unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(records(&ok(&["--config", c, "orbits"])).len(), 4);
    assert_eq!(records(&ok(&["orbits", "--config", c, "--k", "3"])).len(), 2);
    std::fs::write(&cfg, "k = 5\nspeed = 3\n").unwrap();
    let e = fails(&["--config", c, "orbits"], 2);
    assert!(e.contains("run.cfg:2"), "{e}");
    fails(&["--config", dir.path().join("missing").to_str().unwrap(), "orbits"], 2);
}

#[test]
fn invariants_of_words() {
    let r = records(&ok(&["invariants", "--k", "3", "1,2"]));
    assert_eq!(r.len(), 1);
    assert_eq!(r[0]["positive"], true);
    assert_eq!(r[0]["components"], 1);
    assert_eq!(r[0]["braid"], serde_json::json!([1]));

    let r = records(&ok(&["invariants", "--k", "3", "--template-only", "(1)", "(2)"]));
    assert_eq!(r.len(), 3);
    assert_eq!(r[2]["linking"], serde_json::json!([[0, 0], [0, 0]]));

    let r = records(&ok(&["invariants", "--k", "5", "--oracle", "1,2", "1,2,3,4"]));
    for x in &r[..2] {
        assert_eq!(x["genus"], x["oracle"]["genus"]);
    }
    let lk = r[2]["linking"][0][1].as_i64().unwrap();
    assert!(lk > 0);
}

#[test]
fn invariants_exit_codes() {
    let e = fails(&["invariants", "--k", "3", "1", "2"], 2);
    assert!(e.contains("--template-only"), "{e}");
    let e = fails(&["invariants", "--k", "5", "1,L3"], 2);
    assert!(e.contains("3 consecutive passes"), "{e}");
    fails(&["invariants", "--k", "3"], 2);
    fails(&["invariants", "--k", "3", "1,3"], 2);
    fails(&["invariants", "--k", "3", "1,2", "2,1"], 2);
    let e = fails(&["invariants", "--k", "5", "--oracle", "1,2,3,4,4,3,2,1,2,3"], 3);
    assert!(e.contains("oracle cap"), "{e}");
}

#[test]
fn svg_export() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    ok(&["svg", "--k", "3", "L,R", "--out", a.to_str().unwrap()]);
    ok(&["svg", "--k", "3", "(L,R)", "--out", b.to_str().unwrap()]);
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert_eq!(text.matches(r#"class="crossing""#).count(), 1);
    // the under strand is broken around the crossing: two pieces plus the over segment
    assert_eq!(text.matches("<line").count(), 3);
    assert!(text.starts_with("<svg") && text.contains(r#"width="800""#));

    let many = ok(&["svg", "--k", "5", "1,2,3", "1,2"]);
    assert_eq!(many, ok(&["svg", "--k", "5", "1,2,3", "1,2"]));
}

#[test]
fn svg_exit_codes() {
    let e = fails(&["svg", "--k", "3"], 2);
    assert!(e.contains("no orbits"), "{e}");
    fails(&["svg", "--k", "3", "1"], 2);
    let bad = Path::new("/nonexistent/dir/x.svg");
    let e = fails(&["svg", "--k", "3", "1,2", "--out", bad.to_str().unwrap()], 3);
    assert!(e.contains("/nonexistent/dir/x.svg"), "{e}");
}

#[test]
fn template_dump_and_validate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.tdl");
    ok(&["template", "dump", "--k", "7", "--out", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("k 7"));
    assert!(ok(&["template", "validate", path.to_str().unwrap()]).starts_with("ok: hecke-7"));

    // a dumped template drives the other commands and takes k from the file
    let from_file = ok(&["invariants", "--template", path.to_str().unwrap(), "1,2"]);
    assert_eq!(from_file, ok(&["invariants", "--k", "7", "1,2"]));
    assert_eq!(ok(&["template", "dump", "--template", path.to_str().unwrap()]), text);

    std::fs::write(&path, text.replace("k 7", "k 8")).unwrap();
    let e = fails(&["template", "validate", path.to_str().unwrap()], 2);
    assert!(e.contains("t.tdl:3:3"), "{e}");
    fails(&["invariants", "--template", path.to_str().unwrap(), "1,2"], 2);
    fails(&["template", "validate", dir.path().join("none.tdl").to_str().unwrap()], 2);
    fails(&["template", "dump", "--k", "9", "--out", "/nonexistent/dir/t.tdl"], 3);
}
