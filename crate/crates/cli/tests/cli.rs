use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn coxlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxlat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = coxlat(args);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn ranks(doc: &Value) -> [usize; 3] {
    ["minus", "zero", "plus"].map(|k| doc[k]["gram"].as_array().unwrap().len())
}

#[test]
fn build_ranks() {
    assert_eq!(ranks(&json(&["build", "--kleinian", "2,3,5", "--format", "json"])), [8, 9, 10]);
    // 1 + 2 + 6 arm roots and the center
    assert_eq!(ranks(&json(&["build", "--fuchsian", "2,3,7", "--format", "json"])), [10, 11, 12]);
    assert_eq!(ranks(&json(&["build", "--name", "A1", "--format", "json"])), [1, 2, 3]);
    let text = stdout(&coxlat(&["build", "--name", "E8"]));
    assert!(text.contains("V- (rank 8)") && text.contains("V+ (rank 10)"), "{text}");
}

#[test]
fn charpolys() {
    let text = stdout(&coxlat(&["charpoly", "--kleinian", "2,3,5"]));
    assert!(text.contains("Delta- = t^8 + t^7 - t^5 - t^4 - t^3 + t + 1"), "{text}");
    let a1 = json(&["charpoly", "--name", "A1", "--format", "json"]);
    assert_eq!(a1["minus"], serde_json::json!([1, 1]));
    assert_eq!(a1["zero"], serde_json::json!([1, -2, 1]));
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn non_root_diagonal_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "g.json", r#"{"labels":["a","b"],"gram":[[-2,1],[1,-3]]}"#);
    let o = coxlat(&["charpoly", "--gram", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a root"), "{}", stderr(&o));
}

#[test]
fn poincare_routes() {
    let o = coxlat(&["poincare", "--fuchsian", "2,3,7", "--order", "14", "--route", "both"]);
    assert!(o.status.success());
    let row = "[1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1]";
    assert_eq!(stdout(&o), format!("direct   {row}\nquotient {row}\n"));

    let o = coxlat(&["poincare", "--kleinian", "2,3,5", "--route", "direct", "--order", "12"]);
    assert_eq!(stdout(&o), "direct   [1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1]\n");

    let a3 = json(&["poincare", "--name", "A3", "--order", "5", "--format", "json"]);
    assert_eq!(a3["direct"]["coeffs"], serde_json::json!([1, 1, 3, 3, 5, 5]));
    assert_eq!(a3["quotient"], a3["direct"]);
    assert_eq!(a3["first_mismatch"], Value::Null);
}

#[test]
fn hilbert_series() {
    let o = coxlat(&["hilbert", "--name", "E8", "--series", "Q", "--order", "12"]);
    assert_eq!(stdout(&o), "Q(V0,E) [1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1]\n");
    let p = json(&["hilbert", "--name", "A1", "--series", "P", "--order", "4", "--format", "json"]);
    assert_eq!(p["coeffs"], serde_json::json!([1, -1, -3, -5, -7]));
    let o = coxlat(&["hilbert", "--name", "A1", "--root", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_everything() {
    let o = coxlat(&["verify", "--all", "--order", "200"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(", 0 failed"));
}

#[test]
fn verify_json_lines() {
    let o = coxlat(&["verify", "--name", "E12", "--order", "50", "--format", "json"]);
    assert!(o.status.success());
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|r| r["status"] == "pass" && r["witness"].is_null()));
}

#[test]
fn boundary_case_is_neither_kind() {
    let o = coxlat(&["verify", "--fuchsian", "2,3,6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("neither Kleinian nor Fuchsian"), "{}", stderr(&o));
}

#[test]
fn input_errors() {
    assert_eq!(coxlat(&["verify"]).status.code(), Some(2));
    assert_eq!(coxlat(&["verify", "--all", "--name", "E8"]).status.code(), Some(2));
    assert_eq!(coxlat(&["charpoly", "--name", "E9"]).status.code(), Some(2));
    assert_eq!(coxlat(&["charpoly", "--name", "E8", "--kleinian", "2,3,5"]).status.code(), Some(2));
    assert_eq!(coxlat(&["build", "--kleinian", "2,x"]).status.code(), Some(2));
}

#[test]
fn perturbed_gram_fails_with_witness() {
    let mut doc = json(&["build", "--name", "E8", "--format", "json"]);
    let gram = doc["minus"]["gram"].as_array_mut().unwrap();
    // E3_1 -- E3_2
    gram[3][4] = 0.into();
    gram[4][3] = 0.into();
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.json", &doc["minus"].to_string());
    let o = coxlat(&["verify", "--gram", &path, "--order", "100", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let first: Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(first["check"], "theorem");
    assert_eq!(first["status"], "fail");
    assert_eq!(first["witness"]["index"], 4);
}

#[test]
fn build_json_round_trips_through_gram() {
    let dir = tempfile::tempdir().unwrap();
    for input in [["--fuchsian", "2,3,7"], ["--name", "D5"], ["--name", "A1"]] {
        let built = stdout(&coxlat(&["build", input[0], input[1], "--format", "json"]));
        let path = write(dir.path(), "built.json", &built);
        let direct = json(&["charpoly", input[0], input[1], "--format", "json"]);
        let again = json(&["charpoly", "--gram", &path, "--format", "json"]);
        assert_eq!(direct, again, "{input:?}");
        let o = coxlat(&["verify", "--gram", &path, "--order", "60"]);
        assert!(o.status.success(), "{}", stdout(&o));
    }
}

#[test]
fn invariants_file() {
    let dir = tempfile::tempdir().unwrap();
    let short = write(dir.path(), "a.json", r#"{"kind":"fuchsian","alpha":[2,3,7]}"#);
    let full = write(dir.path(), "b.json", r#"{"g":0,"b":1,"pairs":[[2,1],[3,1],[7,1]]}"#);
    let a = json(&["poincare", "--invariants", &short, "--order", "20", "--format", "json"]);
    let b = json(&["poincare", "--invariants", &full, "--order", "20", "--format", "json"]);
    assert_eq!(a["direct"], b["direct"]);
    let bad = write(dir.path(), "c.json", r#"{"g":0,"b":1,"pairs":[[2,1],[3,2],[7,1]]}"#);
    assert_eq!(coxlat(&["poincare", "--invariants", &bad]).status.code(), Some(2));
}

#[test]
fn catalog_lists_names() {
    let list = json(&["catalog", "--format", "json"]);
    let names: Vec<&str> = list.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    for n in ["A1", "A3", "D4", "E6", "E7", "E8", "E12", "U12"] {
        assert!(names.contains(&n), "{n}");
    }
    assert!(!names.contains(&"A2"));
}
