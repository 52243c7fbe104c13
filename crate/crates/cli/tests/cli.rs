use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn nucleus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nucleus"))
        .args(args)
        .env_remove("NUCLEUS_SEARCH_CAP")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}\nstdout: {}\nstderr: {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn names(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

#[test]
fn fca_on_fig2_gives_four_concepts() {
    let out = nucleus(&["fca", &data("fig2.cxt")]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    let concepts = v["concepts"].as_array().unwrap();
    assert_eq!(concepts.len(), 4);
    let pairs: Vec<(Vec<&str>, Vec<&str>)> = concepts.iter().map(|c| (names(&c["extent"]), names(&c["intent"]))).collect();
    assert!(pairs.contains(&(vec!["a0", "a4"], vec!["b1", "b2", "b3"])));
    assert!(pairs.contains(&(vec!["a0", "a1", "a2", "a3"], vec!["b0", "b1", "b2"])));
    assert_eq!(v["report"], Value::Array(vec![]));
}

#[test]
fn fca_dot_is_a_hasse_diagram() {
    let out = nucleus(&["fca", "--format", "dot", &data("fig2.cxt")]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph lattice {"));
    assert_eq!(text.matches("->").count(), 4);
}

#[test]
fn nucleus_of_two_to_one_is_terminal() {
    let out = nucleus(&["cat", "nucleus", &data("two_to_one.json")]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    let cats = v["top"]["nucleus"]["categories"].as_object().unwrap();
    assert_eq!(cats.len(), 2);
    for c in cats.values() {
        assert_eq!(c["objects"].as_array().unwrap().len(), 1);
        assert!(c["morphisms"].as_array().unwrap().is_empty());
    }
}

#[test]
fn broken_triangle_is_reported() {
    let out = nucleus(&["cat", "check", &data("broken_triangle.json")]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    let laws: Vec<&str> = v["adjunctions"]["broken"]["adjunction"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["law"].as_str().unwrap())
        .collect();
    assert!(laws.iter().any(|l| l.starts_with("triangle")), "{laws:?}");

    let ok = nucleus(&["cat", "check", &data("two_to_one.json")]);
    assert_eq!(code(&ok), 0);
}

#[test]
fn non_category_is_a_violation() {
    let out = nucleus(&["cat", "check", &data("not_a_category.json")]);
    assert_eq!(code(&out), 1);
    assert!(json(&out)["categories"]["C"].as_array().unwrap().iter().any(|e| e["law"] == "associativity"));
    // Computations refuse it.
    let out = nucleus(&["cat", "karoubi", &data("not_a_category.json")]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("`C`"));
}

#[test]
fn karoubi_flag_completes_carriers() {
    let refused = nucleus(&["cat", "nucleus", &data("idempotent_identity.json")]);
    assert_eq!(code(&refused), 2);
    assert!(stderr(&refused).contains("`e` does not split"));
    assert!(stderr(&refused).contains("idempotent_identity.json"));
    let out = nucleus(&["cat", "nucleus", "--karoubi", &data("idempotent_identity.json")]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn other_cat_subcommands() {
    for sub in ["simple", "little", "street", "karoubi"] {
        let out = nucleus(&["cat", sub, &data("two_to_one.json")]);
        assert_eq!(code(&out), 0, "{sub}: {}", stderr(&out));
        let dot = nucleus(&["cat", sub, "--format", "dot", &data("two_to_one.json")]);
        assert_eq!(code(&dot), 0, "{sub}");
        assert!(String::from_utf8(dot.stdout).unwrap().starts_with("digraph"));
    }
    let k = nucleus(&["cat", "karoubi", "--category", "two", &data("two_to_one.json")]);
    assert_eq!(json(&k).as_object().unwrap().len(), 1);
    let missing = nucleus(&["cat", "simple", "--adjunction", "nope", &data("two_to_one.json")]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn equivalence_and_search_cap() {
    let out = nucleus(&["cat", "equiv", &data("two_to_one.json"), "two", "two"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["outcome"], "equivalent");
    assert!(v["forward"]["object_map"].is_object());

    let out = nucleus(&["cat", "equiv", &data("two_to_one.json"), "two", "one"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["outcome"], "not equivalent");

    let out = nucleus(&["cat", "equiv", "--search-cap", "1", &data("two_to_one.json"), "two", "two"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["outcome"], "undecided");

    let env = Command::new(env!("CARGO_BIN_EXE_nucleus"))
        .args(["cat", "equiv", &data("two_to_one.json"), "two", "two"])
        .env("NUCLEUS_SEARCH_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(code(&env), 3);

    let zero = nucleus(&["cat", "equiv", "--search-cap", "0", &data("two_to_one.json"), "two", "two"]);
    assert_eq!(code(&zero), 2);
}

#[test]
fn svd_and_tolerance() {
    let out = nucleus(&["svd", &data("diag.csv")]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["sigma"], serde_json::json!([4.0, 3.0]));
    assert_eq!(v["rank"], 2);
    // A huge relative cut drops the smaller singular value.
    let cut = nucleus(&["svd", "--tol", "0.9", &data("diag.csv")]);
    assert_eq!(json(&cut)["rank"], 1);
    assert_eq!(code(&nucleus(&["svd", "--tol", "0", &data("diag.csv")])), 2);
    assert_eq!(code(&nucleus(&["svd", "--format", "dot", &data("diag.csv")])), 2);
}

#[test]
fn dm_and_chu() {
    let out = nucleus(&["dm", &data("diamond.json")]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["concepts"].as_array().unwrap().len(), 6);
    assert_eq!(v["embedding"].as_object().unwrap().len(), 4);

    let out = nucleus(&["chu", "reduce", &data("space.json")]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(names(&v["reduced"]["A"]), vec!["a1", "a3"]);
    assert_eq!(v["reduced"]["matrix"], serde_json::json!([[1, 0], [0, 1]]));
    assert_eq!(names(&v["points"]), vec!["a1", "a1", "a3"]);
}

#[test]
fn parse_errors_name_the_file() {
    let dir = std::env::temp_dir().join(format!("nucleus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"categories\": {\n").unwrap();
    let out = nucleus(&["cat", "check", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("bad.json"));
    assert!(stderr(&out).contains("line 2"));

    let chu = dir.join("chu.json");
    std::fs::write(&chu, r#"{"A":["a"],"B":["b"],"R":["0"],"matrix":[[3]]}"#).unwrap();
    let out = nucleus(&["chu", "reduce", chu.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("outside the alphabet"));

    let missing = nucleus(&["fca", dir.join("nope.cxt").to_str().unwrap()]);
    assert_eq!(code(&missing), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    for args in [
        vec!["fca".to_string(), data("fig2.cxt")],
        vec!["cat".into(), "simple".into(), data("two_to_one.json")],
        vec!["cat".into(), "street".into(), data("two_to_one.json")],
        vec!["svd".into(), data("diag.csv")],
    ] {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(nucleus(&a).stdout, nucleus(&a).stdout, "{args:?}");
    }
    let path = std::env::temp_dir().join(format!("nucleus-out-{}.json", std::process::id()));
    let out = nucleus(&["fca", "--out", path.to_str().unwrap(), &data("fig2.cxt")]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, nucleus(&["fca", &data("fig2.cxt")]).stdout);
    std::fs::remove_file(&path).unwrap();
}
