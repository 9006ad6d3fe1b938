//! The command line, driven in-process.

use std::path::PathBuf;

use redmax::cli::run;

fn redmax(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("redmax").chain(args.iter().copied());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("redmax-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn mkn_text_and_json() {
    let (code, out) = redmax(&["mkn", "--k", "2", "--n", "8"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("M(2,8) = 9"), "{out}");
    let (code, out) = redmax(&[
        "mkn",
        "--k",
        "3",
        "--n",
        "7",
        "--method",
        "weak-order-dp",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], 8);
    assert_eq!(v["method"], "weak-order-dp");
    assert_eq!(v["k"], 3);
    let (_, out) = redmax(&[
        "mkn",
        "--k",
        "2",
        "--n",
        "6",
        "--method",
        "weak-order-dp",
        "--mode",
        "min",
    ]);
    assert!(out.contains("= 2"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(redmax(&["frobnicate"]).0, 2);
    assert_eq!(redmax(&["mkn", "--k", "2"]).0, 2);
    assert_eq!(redmax(&["mkn", "--k", "5", "--n", "3"]).0, 2);
    assert_eq!(
        redmax(&["mkn", "--k", "2", "--n", "10", "--method", "weak-order-dp"]).0,
        3
    );
    assert_eq!(
        redmax(&[
            "--caps",
            "dp_n=3",
            "mkn",
            "--k",
            "1",
            "--n",
            "4",
            "--method",
            "weak-order-dp"
        ])
        .0,
        3
    );
    assert_eq!(
        redmax(&["--caps", "nonsense=1", "mkn", "--k", "1", "--n", "4"]).0,
        2
    );
    assert_eq!(
        redmax(&["mkn", "--k", "2", "--n", "5", "--mode", "min"]).0,
        2
    );
    assert_eq!(redmax(&["--help"]).0, 0);
}

#[test]
fn ck_and_emitted_pattern() {
    let file = scratch("c2.json");
    let f = file.to_str().unwrap();
    let (code, out) = redmax(&["ck", "--k", "2", "--emit-pattern", f]);
    assert_eq!(code, 0);
    assert!(out.starts_with("c_2 = 3/2"), "{out}");
    let (code, out) = redmax(&["pattern", "check", "--file", f, "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["repeatable"], true);
    assert_eq!(v["density"], "3/2");
    let (_, out) = redmax(&["ck", "--k", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], "11/6");
    assert_eq!(v["exact"], true);
}

#[test]
fn pattern_files() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"k":2,"d":1,"sets":[[1,2],[1,3],[2,3]]}"#).unwrap();
    let (code, out) = redmax(&["pattern", "check", "--file", bad.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("not repeatable"), "{out}");
    let (code, out) = redmax(&["pattern", "witness", "--k", "3", "--n", "12", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    // ceil(11·12/6) − 5 = 17 steps
    assert_eq!(v["sets"].as_array().unwrap().len(), 18);
    assert_eq!(redmax(&["pattern", "witness", "--k", "4", "--n", "9"]).0, 2);
}

#[test]
fn arc_commands() {
    let path = scratch("p.json");
    let (_, json) = redmax(&["pattern", "witness", "--k", "3", "--n", "9", "--json"]);
    std::fs::write(&path, json).unwrap();
    let svg = scratch("p.svg");
    let (code, _) = redmax(&[
        "arc",
        "svg",
        "--path",
        path.to_str().unwrap(),
        "-o",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(
        text.starts_with("<svg") && text.matches("<path").count() == 12,
        "{text}"
    );
    let (code, out) = redmax(&[
        "arc",
        "decompose",
        "--path",
        path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["intervals"].is_array());
}

#[test]
fn gwd_simplify_file() {
    let input = scratch("d.json");
    // s2 s1 s2 as a k = 2 diagram: the second crossing at level 2 is adjacent
    std::fs::write(
        &input,
        r#"{"k":2,"events":[{"t":0,"kind":"cross","level":2},{"t":1,"kind":"cross","level":1},{"t":2,"kind":"cross","level":2},{"t":3,"kind":"cross","level":3},{"t":4,"kind":"cross","level":2}]}"#,
    )
    .unwrap();
    let (code, out) = redmax(&["gwd", "simplify", "--in", input.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["k"], 2);
    let level2 = v["events"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["kind"] == "cross" && e["level"] == 2)
        .count();
    let falls_at_2 = v["events"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["kind"] == "fall" && e["level"].as_u64().unwrap() <= 2)
        .count();
    assert_eq!(level2 + falls_at_2, 3);
    std::fs::write(&input, "{").unwrap();
    assert_eq!(
        redmax(&["gwd", "simplify", "--in", input.to_str().unwrap()]).0,
        2
    );
}

#[test]
fn coxeter_commands() {
    let (code, out) = redmax(&["coxeter", "min", "--type", "E8"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "E8: 5,10,15,12,9,6,3,8");
    let (_, out) = redmax(&["coxeter", "min", "--type", "B", "--rank", "5", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["values"]["1"], 5);
    assert_eq!(v["values"]["5"], 2);
    let (code, out) = redmax(&["coxeter", "cartan", "--type", "F4", "--v", "3,6,6,3"]);
    assert_eq!(code, 0);
    assert!(out.contains("nonnegative: true"), "{out}");
    let (code, _) = redmax(&[
        "coxeter",
        "cartan",
        "--type",
        "H4",
        "--v",
        "5,10,15,15",
        "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(redmax(&["coxeter", "cartan", "--type", "H4"]).0, 2);
    assert_eq!(
        redmax(&["coxeter", "min", "--type", "E", "--rank", "9"]).0,
        2
    );
}

#[test]
fn reproduce_subset_is_deterministic() {
    let a = redmax(&["reproduce", "--only", "1,6,9,11", "--json"]);
    let b = redmax(&["reproduce", "--only", "1,6,9,11", "--json"]);
    assert_eq!(a.0, 0, "{}", a.1);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_eq!(redmax(&["reproduce", "--only", "13"]).0, 2);
}
