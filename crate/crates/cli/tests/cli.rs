use std::process::Command;

use swordgen::algob::run_algorithm_b;
use swordgen::patterns::parse_pattern_list;
use swordgen::LanguageSpec;
use swordgen_cli::{
    parse_and_dispatch, RunDocument, EXIT_MALFORMED, EXIT_NEGATIVE, EXIT_OK, EXIT_SIZE_LIMIT,
};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("swordgen").chain(args.iter().copied());
    let code = parse_and_dispatch(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn loopless_listing_for_213() {
    let (code, out, _) = run(&[
        "generate", "--shape", "2,1,3", "--avoid", "212", "--engine", "loopless", "--format",
        "text",
    ]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[0], "112333");
    assert_eq!(lines[11], "333211");
}

#[test]
fn formula_count_for_213() {
    let (code, out, _) = run(&[
        "count", "--shape", "2,1,3", "--avoid", "212", "--method", "formula",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "12");
    let (_, out, _) = run(&["count", "--shape", "2,1,3", "--avoid", "212"]);
    assert_eq!(out.trim(), "12");
}

#[test]
fn formula_count_rejects_other_sets() {
    let (code, _, err) = run(&[
        "count", "--shape", "2,2", "--avoid", "231", "--method", "formula",
    ]);
    assert_eq!(code, EXIT_MALFORMED);
    assert!(err.contains("231"));
    let (code, out, _) = run(&[
        "count", "--shape", "2^3", "--avoid", "132,121", "--method", "formula",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "12");
}

#[test]
fn verify_231_listing() {
    let (code, out, _) = run(&[
        "verify",
        "--shape",
        "1,1,1",
        "--avoid",
        "231",
        "--expect-complete",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("verdict: PASS"));
}

#[test]
fn incomplete_runs_fail_under_expect_complete() {
    let args = ["generate", "--shape", "1,3,3", "--avoid", "12121"];
    assert_eq!(run(&args).0, EXIT_OK);
    let mut strict = args.to_vec();
    strict.push("--expect-complete");
    assert_eq!(run(&strict).0, EXIT_NEGATIVE);
    let (code, out, _) = run(&["verify", "--shape", "1,3,3", "--avoid", "12121"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert!(out.contains("missing: "));
}

#[test]
fn json_round_trips_the_run() {
    let (code, out, _) = run(&[
        "generate", "--shape", "2,1,2", "--avoid", "231", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let doc: RunDocument = serde_json::from_str(&out).unwrap();
    let spec = LanguageSpec::new("2,1,2".parse().unwrap(), parse_pattern_list("231").unwrap());
    let run = run_algorithm_b(&spec, None).unwrap();
    assert_eq!(doc.format, 1);
    assert_eq!(doc.shape, run.shape);
    assert_eq!(doc.patterns, spec.patterns());
    assert_eq!(doc.words, run.words);
    assert_eq!(doc.moves.as_deref(), Some(run.moves.as_slice()));
    assert_eq!(doc.complete, run.complete);
    assert_eq!(serde_json::to_string(&doc).unwrap(), out.trim());
}

#[test]
fn json_schema_fields() {
    let (_, out, _) = run(&["generate", "--shape", "2,2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["format"], 1);
    assert_eq!(v["shape"], serde_json::json!([2, 2]));
    assert_eq!(v["engine"], "greedy");
    assert_eq!(v["words"][1], serde_json::json!([1, 2, 2, 1]));
    assert_eq!(v["moves"][0]["dir"], "L");
    assert_eq!(v["moves"][0]["width"], 2);
    let (_, out, _) = run(&[
        "generate",
        "--shape",
        "1,1,1",
        "--engine",
        "oracle-lex",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["moves"].is_null());
    assert_eq!(v["engine"], "oracle-lex");
}

#[test]
fn text_and_json_agree() {
    for (shape, avoid, engine) in [
        ("2,2", "", "greedy"),
        ("2,1,3", "212", "loopless"),
        ("2,2,1", "132,121", "oracle-lex"),
    ] {
        let (_, text, _) = run(&[
            "generate", "--shape", shape, "--avoid", avoid, "--engine", engine,
        ]);
        let (_, json, _) = run(&[
            "generate", "--shape", shape, "--avoid", avoid, "--engine", engine, "--format", "json",
        ]);
        let doc: RunDocument = serde_json::from_str(&json).unwrap();
        let words: Vec<String> = doc.words.iter().map(|w| w.to_string()).collect();
        assert_eq!(text.lines().collect::<Vec<_>>(), words, "{shape} {engine}");
    }
}

#[test]
fn default_engine_follows_the_pattern_set() {
    let (_, out, _) = run(&[
        "generate", "--shape", "2,1,3", "--avoid", "212", "--format", "json",
    ]);
    let doc: RunDocument = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_value(doc.engine).unwrap(), "loopless");
    let (_, out, _) = run(&[
        "generate", "--shape", "2,1,3", "--avoid", "231", "--format", "json",
    ]);
    let doc: RunDocument = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_value(doc.engine).unwrap(), "greedy");
}

#[test]
fn loopless_refuses_other_languages() {
    let (code, _, _) = run(&[
        "generate", "--shape", "2,2", "--avoid", "231", "--engine", "loopless",
    ]);
    assert_eq!(code, EXIT_MALFORMED);
}

#[test]
fn start_word() {
    let (code, out, _) = run(&["generate", "--shape", "2,2", "--start", "2211"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("2211"));
    let (code, _, err) = run(&["generate", "--shape", "2,2", "--start", "2221"]);
    assert_eq!(code, EXIT_MALFORMED);
    assert!(!err.is_empty());
}

#[test]
fn malformed_input() {
    assert_eq!(run(&["generate", "--shape", "1,x"]).0, EXIT_MALFORMED);
    assert_eq!(
        run(&["generate", "--shape", "2,2", "--avoid", "1,3"]).0,
        EXIT_MALFORMED
    );
    assert_eq!(run(&["frobnicate"]).0, EXIT_MALFORMED);
    assert_eq!(
        run(&["trace", "--shape", "2,2", "--format", "dot"]).0,
        EXIT_MALFORMED
    );
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn size_limit() {
    let (code, _, err) = run(&["generate", "--shape", "3^3", "--cap", "100"]);
    assert_eq!(code, EXIT_SIZE_LIMIT);
    assert!(err.contains("100"));
    assert_eq!(
        run(&["generate", "--shape", "2^6", "--avoid", "212", "--cap", "100"]).0,
        EXIT_SIZE_LIMIT
    );
}

#[test]
fn cap_from_environment() {
    let bin = env!("CARGO_BIN_EXE_swordgen");
    let status = Command::new(bin)
        .args(["generate", "--shape", "3^3"])
        .env("SWORDGEN_CAP", "50")
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(EXIT_SIZE_LIMIT));
    let status = Command::new(bin)
        .args(["generate", "--shape", "3^3", "--cap", "5000"])
        .env("SWORDGEN_CAP", "50")
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(EXIT_OK));
}

#[test]
fn zigzag_verdicts() {
    let (code, out, _) = run(&["zigzag", "--avoid", "231", "--mode", "syntactic"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("syntactic: zig-zag"));
    let (code, out, _) = run(&[
        "zigzag", "--shape", "1,2,3", "--avoid", "212", "--mode", "semantic",
    ]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert!(out.contains("counterexample: "));
    let (code, _, _) = run(&["zigzag", "--shape", "2,2,1", "--avoid", "231"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        run(&["zigzag", "--avoid", "231", "--mode", "semantic"]).0,
        EXIT_MALFORMED
    );
}

#[test]
fn trace_output() {
    let (code, out, _) = run(&["trace", "--shape", "2,1,3"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0].split_whitespace().collect::<Vec<_>>(),
        ["perm", "v", "u", "i", "j", "left", "inv", "fs", "dirs"]
    );
    assert_eq!(lines.len(), 13);
    let (_, json, _) = run(&["trace", "--shape", "2,1,3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["rows"][11]["dirs"], "-++");
    assert!(v["rows"][11]["u"].is_null());
}

#[test]
fn trees_and_paths() {
    let (code, out, _) = run(&["trees", "--shape", "2,1,3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 12);
    let (code, out, _) = run(&[
        "trees", "--shape", "2,2,2", "--kind", "kary", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["k"], 3);
    assert_eq!(v["trees"].as_array().unwrap().len(), 12);
    assert_eq!(
        run(&["trees", "--shape", "2,2,2", "--kind", "kary", "--k", "4"]).0,
        EXIT_MALFORMED
    );
    assert_eq!(
        run(&["trees", "--shape", "2,1", "--kind", "kary"]).0,
        EXIT_MALFORMED
    );
    let (code, dot, _) = run(&["trees", "--shape", "1,1", "--format", "dot"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(dot.matches("subgraph cluster_").count(), 2);

    let (code, out, _) = run(&["path", "--shape", "2,1,3"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!((lines[0], lines[11]), ("(0,0,0)", "(0,2,3)"));
    let (_, dot, _) = run(&["path", "--shape", "2,1,3", "--format", "dot"]);
    assert_eq!(dot.matches("->").count(), 11);
}

#[test]
fn dot_run_export() {
    let (code, dot, _) = run(&["generate", "--shape", "2,2", "--format", "dot"]);
    assert_eq!(code, EXIT_OK);
    assert!(dot.starts_with("digraph gray_code {"));
    assert!(dot.trim_end().ends_with('}'));
    assert_eq!(dot.matches("->").count(), 5);
}

#[test]
fn bench_reports_exact_counts() {
    let (code, out, _) = run(&["bench", "--shape", "2,1,3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("words: 12\n"));
    assert!(out.contains("formula: 12\n"));
    assert!(out.contains("words/sec: "));
    let (_, json, _) = run(&["bench", "--shape", "2^4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["words"], 105);
    assert_eq!(v["formula"], "105");
    assert!(v["timing"]["seconds"].is_number());
}
