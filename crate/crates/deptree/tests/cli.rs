use std::path::PathBuf;

use clap::Parser;
use deptree::cli::{run, run_cli, Cli, EXIT_EMPTY, EXIT_INVARIANT, EXIT_IO, EXIT_OK, EXIT_USAGE};
use deptree::fixtures_dir;
use deptree_core::verify::BoundSuite;

fn fixture(name: &str) -> String {
    fixtures_dir().join(name).to_str().unwrap().to_string()
}

fn deptree(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("deptree").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn analyze_csv_has_header_and_t1_row() {
    let (code, out, _) = deptree(&["analyze", &fixture("mini.conllu"), "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines().skip(1);
    assert!(lines
        .next()
        .unwrap()
        .starts_with("sent_id,n,mean_k2,var_k,mean_d,mean_d2,C,M,"));
    assert_eq!(
        lines.next().unwrap(),
        "t1,9,4,0.83950617284,1.375,2.125,0,5,1.1875,1.0625,4.5,3,9,18,3.33333333333"
    );
}

#[test]
fn analyze_exit_codes() {
    assert_eq!(deptree(&["analyze", "missing.conllu"]).0, EXIT_IO);
    let (code, _, err) = deptree(&["analyze", &fixture("empty.conllu")]);
    assert_eq!(code, EXIT_EMPTY);
    assert!(err.contains("no sentence accepted"));
    assert_eq!(
        deptree(&["analyze", &fixture("mini.conllu"), "--min-n", "10"]).0,
        EXIT_EMPTY
    );
}

#[test]
fn analyze_edge_list_input() {
    let (code, out, _) = deptree(&[
        "analyze",
        &fixture("t1_scrambled.edges"),
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let row: serde_json::Value = serde_json::from_str(out.lines().nth(1).unwrap()).unwrap();
    assert_eq!(row["sent_id"], "t1_scrambled");
    assert_eq!(row["mean_d"], "29/8");
    assert_eq!(row["C"], 9);
}

#[test]
fn skip_counts_plus_accepted_equal_blocks() {
    let skips = tmp("count.skips.jsonl");
    let (code, out, _) = deptree(&[
        "analyze",
        &fixture("mini.conllu"),
        "--format",
        "json",
        "--skip-log",
        skips.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let accepted = out.lines().count() - 1;
    let skipped = std::fs::read_to_string(&skips).unwrap().lines().count();
    let text = std::fs::read_to_string(fixtures_dir().join("mini.conllu")).unwrap();
    let blocks = text.split("\n\n").filter(|b| !b.trim().is_empty()).count();
    let below_min_n = 1;
    assert_eq!(accepted + skipped + below_min_n, blocks);
    assert_eq!(
        deptree(&["analyze", &fixture("mini.conllu"), "--min-n", "1"]).0,
        EXIT_USAGE
    );
}

#[test]
fn worker_count_does_not_change_output() {
    let one = deptree(&[
        "analyze",
        &fixture("mini.conllu"),
        "--jobs",
        "1",
        "--format",
        "json",
    ]);
    let four = deptree(&[
        "analyze",
        &fixture("mini.conllu"),
        "--jobs",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(one, four);
    let one = deptree(&[
        "simulate",
        &fixture("t1.edges"),
        "--trials",
        "20000",
        "--jobs",
        "1",
    ]);
    let four = deptree(&[
        "simulate",
        &fixture("t1.edges"),
        "--trials",
        "20000",
        "--jobs",
        "4",
    ]);
    assert_eq!(one, four);
}

#[test]
fn bounds_examples() {
    let (code, out, _) = deptree(&["bounds", &fixture("t1.edges")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\"cmax_eq13\":\"9\""));
    assert!(deptree(&["bounds", &fixture("star9.edges")])
        .1
        .contains("\"cpairs_eq14\":\"0\""));
    assert!(deptree(&["bounds", &fixture("path9.edges")])
        .1
        .contains("\"crossings_impossible\":true"));
}

#[test]
fn bounds_rejects_bad_edge_list() {
    let bad = tmp("bad.edges");
    std::fs::write(&bad, "3\n1 2\n2 3\n1 3\n").unwrap();
    let (code, _, err) = deptree(&["bounds", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_IO);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn simulate_examples() {
    let (code, out, _) = deptree(&[
        "simulate",
        &fixture("t1.edges"),
        "--seed",
        "42",
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let json: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(json["seed"], 42);
    assert_eq!(json["trials"], 100_000);
    assert!(json["z_score"].as_f64().unwrap().abs() < 4.0);

    let (_, out, _) = deptree(&[
        "simulate",
        &fixture("star9.edges"),
        "--trials",
        "1000",
        "--format",
        "json",
    ]);
    let json: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(json["max_c"], 0);

    assert_eq!(
        deptree(&["simulate", &fixture("t1.edges"), "--trials", "0"]).0,
        EXIT_USAGE
    );
}

#[test]
fn simulate_is_reproducible() {
    let args = [
        "simulate",
        &fixture("t1.edges"),
        "--trials",
        "5000",
        "--seed",
        "7",
    ];
    assert_eq!(deptree(&args), deptree(&args));
    assert!(deptree(&args).1.contains("seed=7"));
}

#[test]
fn construct_examples() {
    let (code, out, _) = deptree(&[
        "construct",
        "--family",
        "star",
        "--n",
        "9",
        "--mode",
        "hub_center",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("# <d> = 5/2"));
    let out = deptree(&[
        "construct",
        "--family",
        "linear",
        "--n",
        "9",
        "--mode",
        "zigzag",
    ])
    .1;
    assert!(out.contains("# <d> = 9/2") && out.contains("# C = 0"));
    let out = deptree(&[
        "construct",
        "--family",
        "linear",
        "--n",
        "9",
        "--mode",
        "identity",
    ])
    .1;
    assert!(out.contains("# <d> = 1\n"));
    assert_eq!(
        deptree(&[
            "construct",
            "--family",
            "star",
            "--n",
            "9",
            "--mode",
            "zigzag"
        ])
        .0,
        EXIT_USAGE
    );
}

#[test]
fn construct_output_reads_back() {
    let out = tmp("star.edges");
    let (code, _, _) = deptree(&[
        "construct",
        "--family",
        "star",
        "--n",
        "7",
        "--mode",
        "hub_end",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let (_, json, _) = deptree(&["bounds", out.to_str().unwrap()]);
    assert!(json.contains("\"mean_d\":\"7/2\""), "{json}");
}

#[test]
fn verify_small_sizes() {
    let (code, out, _) = deptree(&["verify", "--max-n", "5"]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.contains("FAIL"));
    assert!(out.starts_with("# verify max_n=5"));
    let (code, out, _) = deptree(&["verify", "--max-n", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("PASS crossing-simple"));
    assert_eq!(deptree(&["verify", "--max-n", "10"]).0, EXIT_USAGE);
}

#[test]
fn verify_sampled_sizes() {
    let (code, out, _) = deptree(&[
        "verify",
        "--max-n",
        "8",
        "--exhaustive-max-n",
        "5",
        "--samples",
        "3",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("# n=8 trees=3 arrangements=120960"));
}

#[test]
fn injected_fault_fails_with_witness() {
    let cli = Cli::try_parse_from(["deptree", "verify", "--max-n", "5"]).unwrap();
    let suite = BoundSuite {
        cmax_simple: |_| 0,
        ..BoundSuite::default()
    };
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run_cli(&cli, &suite, &mut out, &mut err), EXIT_INVARIANT);
    let out = String::from_utf8(out).unwrap();
    assert!(out.contains("FAIL crossing-simple"));
    assert!(out.contains("witness tree="));
}

#[test]
fn usage_errors() {
    assert_eq!(deptree(&[]).0, EXIT_USAGE);
    assert_eq!(deptree(&["analyze"]).0, EXIT_USAGE);
    assert_eq!(deptree(&["bounds", "x", "--format", "xml"]).0, EXIT_USAGE);
    let (code, out, _) = deptree(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Usage"));
}
