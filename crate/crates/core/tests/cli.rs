use std::path::Path;

use grmin::cli::run;
use grmin::format::{read_grcode, write_grcode};
use serde_json::Value;

fn grmin(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("grmin").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("invalid JSON ({e}): {text}"))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn assert_report_schema(v: &Value) {
    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["checked", "elapsed_ms", "method", "verdict", "witnesses"]);
    assert!(v["verdict"].is_boolean() && v["checked"].is_u64() && v["elapsed_ms"].is_u64());
    assert!(["criterion", "bruteforce"].contains(&v["method"].as_str().unwrap()));
    for w in v["witnesses"].as_array().unwrap() {
        assert!(w["v"].as_array().unwrap().iter().all(Value::is_string));
        assert!(w["reason"].is_string());
    }
}

#[test]
fn construct_then_check_lambda0() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.grc");
    let (code, out, err) = grmin(&[
        "construct",
        "--family",
        "lambda0",
        "--p",
        "2",
        "--n",
        "2",
        "--ell",
        "1",
        "--m",
        "2",
        "--out",
        path_str(&file),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("GRCODE 1\nGR p=2 n=2 ell=1\nm=2 k=6\n"));

    let (code, out, _) = grmin(&["check", "--in", path_str(&file), "--method", "both", "--json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["agree"], true);
    for r in v["reports"].as_array().unwrap() {
        assert_report_schema(r);
    }
}

#[test]
fn non_minimal_code_exits_one_with_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.grc");
    std::fs::write(&file, "GRCODE 1\nGR p=2 n=2 ell=1\nm=2 k=2\ncol: 1|0\ncol: 0|1\n").unwrap();
    for method in ["criterion", "bruteforce"] {
        let (code, out, _) = grmin(&["check", "--in", path_str(&file), "--method", method, "--json"]);
        assert_eq!(code, 1);
        let v = json(&out);
        assert_report_schema(&v);
        assert_eq!(v["verdict"], false);
        assert!(!v["witnesses"].as_array().unwrap().is_empty());
    }
    let (code, out, _) = grmin(&["check", "--in", path_str(&file), "--scope", "root"]);
    assert_eq!(code, 1);
    assert!(out.contains("minimal = false"));
}

#[test]
fn cf_thm46_example() {
    let (code, out, err) = grmin(&[
        "cf",
        "--family",
        "thm46",
        "--p",
        "2",
        "--n",
        "2",
        "--ell",
        "1",
        "--m",
        "4",
        "--check",
        "criterion",
        "--json",
    ]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert_eq!(v["length"], 255);
    assert_eq!(v["dimension"], 5);
    assert_eq!(v["verdict"], true);
    assert_report_schema(&v["check"]);
    assert_eq!(v["check"]["checked"], 1023);
    assert!(err.contains("building C_f"));
}

#[test]
fn cf_conditions_and_witnesses() {
    let (code, out, _) = grmin(&[
        "cf",
        "--family",
        "poly",
        "--p",
        "2",
        "--n",
        "2",
        "--m",
        "6",
        "--poly",
        "x1*x2*x3 + x4*x5*x6",
        "--restrict-rootwords",
        "--conditions",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["length"], 4032);
    assert_eq!(v["function"]["params"]["domain"], "root_words_only");
    assert!(v["conditions"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    let (code, out, _) =
        grmin(&["cf", "--family", "thm46", "--p", "2", "--n", "2", "--m", "4", "--witnesses", "--json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["witnesses"]["total"], 992);
    assert_eq!(v["witnesses"]["found"], 992);
}

#[test]
fn grcode_round_trip_is_byte_exact() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &["--family", "lambda0", "--p", "2", "--n", "2", "--ell", "2", "--m", "2"],
        &["--family", "lambda0", "--p", "3", "--n", "2", "--m", "3"],
        &["--family", "thm46", "--p", "2", "--n", "2", "--m", "4", "--restrict-rootwords"],
        &["--family", "thm43", "--p", "2", "--n", "2", "--ell", "2", "--m", "3", "--h", "1,1,1"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let file = dir.path().join(format!("{i}.grc"));
        let mut argv = vec!["construct"];
        argv.extend_from_slice(args);
        argv.extend(["--out", path_str(&file)]);
        assert_eq!(grmin(&argv).0, 0);
        let text = std::fs::read_to_string(&file).unwrap();
        let (ring, gens) = read_grcode(&text).unwrap();
        assert_eq!(write_grcode(&ring, &gens), text);
        let (code, out, _) = grmin(&["verify-file", "--in", path_str(&file), "--json"]);
        assert_eq!(code, 0);
        assert_eq!(json(&out)["identical"], true);
    }
    // stdout output matches the file output
    let (_, stdout, _) = grmin(&["construct", "--family", "lambda0", "--p", "3", "--n", "2", "--m", "3"]);
    assert_eq!(stdout, std::fs::read_to_string(dir.path().join("1.grc")).unwrap());
}

#[test]
fn verify_file_flags_non_canonical_text() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.grc");
    std::fs::write(&file, "GRCODE 1\nGR p=2 n=2 ell=1\nm=2 k=2\ncol: 1|0\ncol: 0|1").unwrap();
    let (code, out, _) = grmin(&["verify-file", "--in", path_str(&file)]);
    assert_eq!(code, 1);
    assert!(out.contains("differs"));
}

#[test]
fn bounds_report() {
    let (code, out, _) = grmin(&["bounds", "--p", "2", "--n", "2", "--m", "3"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["lower"], "17/2");
    assert_eq!(v["strict"], true);
    assert_eq!(v["min_length"], "9");
    assert_eq!(v["lambda0_length"], 15);
    let (_, out, _) = grmin(&["bounds", "--p", "3", "--n", "2", "--m", "2"]);
    assert_eq!(json(&out)["k2_exact"], 12);
}

#[test]
fn search_k2_writes_witness() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k2.grc");
    let (code, out, _) =
        grmin(&["search-k2", "--p", "2", "--n", "2", "--k-max", "6", "--out", path_str(&file), "--json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["k"], 6);
    assert_eq!(v["excluded"], serde_json::json!([2, 3, 4, 5]));
    assert_eq!(grmin(&["check", "--in", path_str(&file), "--method", "both"]).0, 0);
    let (code, out, _) = grmin(&["search-k2", "--p", "2", "--n", "2", "--k-max", "5", "--json"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["k"], Value::Null);
}

#[test]
fn output_is_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.grc");
    std::fs::write(
        &file,
        "GRCODE 1\nGR p=3 n=2 ell=1\nm=3 k=5\ncol: 1|0|0\ncol: 0|1|0\ncol: 0|0|1\ncol: 1|1|1\ncol: 3|1|2\n",
    )
    .unwrap();
    let strip = |s: String| {
        let mut v = json(&s);
        v["elapsed_ms"] = Value::Null;
        v
    };
    let runs: Vec<Value> = ["1", "2", "5"]
        .iter()
        .map(|t| strip(grmin(&["--threads", t, "check", "--in", path_str(&file), "--json"]).1))
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
    assert_eq!(runs[0]["verdict"], false);
}

#[test]
fn sampled_check_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.grc");
    std::fs::write(&file, "GRCODE 1\nGR p=3 n=2 ell=1\nm=3 k=4\ncol: 1|0|0\ncol: 0|1|0\ncol: 0|0|1\ncol: 1|1|1\n")
        .unwrap();
    let a = grmin(&["check", "--in", path_str(&file), "--sample", "40", "--seed", "11", "--json"]);
    let b = grmin(&["check", "--in", path_str(&file), "--sample", "40", "--seed", "11", "--json"]);
    assert_eq!(a, b);
    assert_eq!(json(&a.1)["sampled"], 40);
}

#[test]
fn usage_and_validation_errors_exit_two() {
    assert_eq!(grmin(&["ring", "--p", "2", "--n", "2", "--bogus"]).0, 2);
    assert_eq!(grmin(&[]).0, 2);
    assert_eq!(grmin(&["ring", "--p", "4", "--n", "2"]).0, 2);
    assert_eq!(grmin(&["cf", "--family", "poly", "--p", "2", "--n", "2", "--m", "6"]).0, 2);
    assert_eq!(grmin(&["cf", "--family", "thm43", "--p", "2", "--n", "2", "--m", "3"]).0, 2);
    assert_eq!(grmin(&["check", "--in", "/nonexistent/file.grc"]).0, 2);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.grc");
    std::fs::write(&file, "GRCODE 1\nGR p=2 n=2 ell=1\nm=3 k=1\ncol: 1|0\n").unwrap();
    let (code, _, err) = grmin(&["check", "--in", path_str(&file)]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4"), "{err}");
    std::fs::write(&file, "GRCODE 1\nGR p=2 n=2 ell=1\nm=2 k=1\ncol: 1|0\n").unwrap();
    let (code, _, err) = grmin(&["check", "--in", path_str(&file)]);
    assert_eq!(code, 2);
    assert!(err.contains("rank"), "{err}");
    assert_eq!(grmin(&["--help"]).0, 0);
}

#[test]
fn ring_census_json() {
    let (code, out, _) = grmin(&["ring", "--p", "2", "--n", "2", "--ell", "2", "--json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["size"], 16);
    assert_eq!(v["units"], 12);
    assert_eq!(v["zero_divisors"], 3);
    assert_eq!(v["teichmuller"].as_array().unwrap().len(), 4);
}
