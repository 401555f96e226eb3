use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let output = Command::new(env!("CARGO_BIN_EXE_matgeo"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(output.stdout).expect("utf-8");
    let report = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    (output.status.code().expect("exit code"), report)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("{name}"))
}

fn without_timing(mut report: Value) -> Value {
    report.as_object_mut().unwrap().remove("elapsed_ms");
    report
}

#[test]
fn verify_gf3_square_passes_every_check() {
    let (code, report) = run(&[
        "verify-prop22",
        "--field",
        "3",
        "--rows",
        "2",
        "--cols",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["outcome"], "pass");
    for name in [
        "forward_witness",
        "converse_separation",
        "adjacency_via_dis_equivalence",
    ] {
        let c = check(&report, name);
        assert_eq!(c["passed"], true);
        assert_eq!(c["coverage"], "exhaustive");
    }
    assert_eq!(
        check(&report, "adjacency_via_dis_equivalence")["cases"],
        6480
    );
}

#[test]
fn verify_gf4_passes() {
    let (code, report) = run(&[
        "verify-prop22",
        "--field",
        "4",
        "--rows",
        "2",
        "--cols",
        "2",
        "--samples",
        "2000",
    ]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["results"]["converse_coverage"], "sampled");
    assert_eq!(report["results"]["equivalence_checked"], false);
}

#[test]
fn verify_rejects_hypothesis_violations() {
    for args in [
        ["2", "2", "2"],
        ["3", "2", "3"],
        ["3", "1", "1"],
        ["6", "2", "2"],
    ] {
        let (code, report) = run(&[
            "verify-prop22",
            "--field",
            args[0],
            "--rows",
            args[1],
            "--cols",
            args[2],
        ]);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(report["outcome"], "error");
        assert!(report["error"].is_string());
    }
    let (_, report) = run(&[
        "verify-prop22",
        "--field",
        "2",
        "--rows",
        "2",
        "--cols",
        "2",
    ]);
    assert!(report["error"]
        .as_str()
        .unwrap()
        .contains("at least three elements"));
}

#[test]
fn usage_errors_still_emit_a_report() {
    let (code, report) = run(&["verify-prop22", "--field", "3"]);
    assert_eq!(code, 2);
    assert_eq!(report["outcome"], "error");
    let (code, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["certify", "t.txt", "--mode", "sometimes"]);
    assert_eq!(code, 2);
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let args = [
        "verify-prop22",
        "--field",
        "5",
        "--rows",
        "3",
        "--cols",
        "2",
        "--mode",
        "sampled",
        "--samples",
        "500",
        "--seed",
        "11",
    ];
    let (_, a) = run(&args);
    let (_, b) = run(&args);
    assert_eq!(without_timing(a.clone()), without_timing(b));
    let keys: Vec<_> = a.as_object().unwrap().keys().cloned().collect();
    assert_eq!(
        keys,
        [
            "command",
            "parameters",
            "outcome",
            "checks",
            "results",
            "elapsed_ms"
        ]
    );
}

#[test]
fn generate_then_decompose_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (q, m, n, seed) in [
        ("3", "2", "2", "1"),
        ("4", "2", "2", "5"),
        ("3", "3", "2", "2"),
        ("9", "2", "2", "3"),
    ] {
        let table = dir.path().join(format!("t{q}{m}{n}.txt"));
        let doc = dir.path().join(format!("d{q}{m}{n}.json"));
        let (code, _) = run(&[
            "generate",
            "--field",
            q,
            "--rows",
            m,
            "--cols",
            n,
            "--seed",
            seed,
            "--out",
            path(&table),
        ]);
        assert_eq!(code, 0);
        let (code, report) = run(&["decompose", path(&table), "--out", path(&doc)]);
        assert_eq!(code, 0, "{report}");
        let truth: Value = serde_json::from_str(
            &fs::read_to_string(dir.path().join(format!("t{q}{m}{n}.txt.truth.json"))).unwrap(),
        )
        .unwrap();
        let recovered: Value = serde_json::from_str(&fs::read_to_string(&doc).unwrap()).unwrap();
        assert_eq!(recovered, truth);
        assert_eq!(report["results"]["decomposition"], truth);
    }
}

#[test]
fn generate_is_reproducible_and_respects_no_transpose() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    for out in [&a, &b] {
        run(&[
            "generate",
            "--field",
            "3",
            "--rows",
            "2",
            "--cols",
            "2",
            "--seed",
            "42",
            "--out",
            path(out),
        ]);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    for seed in 0..20 {
        let seed = seed.to_string();
        let (code, report) = run(&[
            "generate",
            "--field",
            "3",
            "--rows",
            "2",
            "--cols",
            "2",
            "--seed",
            &seed,
            "--no-transpose",
            "--out",
            path(&a),
        ]);
        assert_eq!(code, 0);
        assert_eq!(report["results"]["decomposition"]["transposed"], false);
    }
}

#[test]
fn identity_table_decomposes_to_identity() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("id.txt");
    let mut text = String::from("3 2 2\n");
    for i in 0..81 {
        text.push_str(&format!("{i}\n"));
    }
    fs::write(&table, text).unwrap();
    let (code, report) = run(&["decompose", path(&table)]);
    assert_eq!(code, 0);
    let doc = &report["results"]["decomposition"];
    assert_eq!(doc["T"]["rows"], serde_json::json!([[1, 0], [0, 1]]));
    assert_eq!(doc["S"]["rows"], serde_json::json!([[1, 0], [0, 1]]));
    assert_eq!(doc["R"]["index"], 0);
    assert_eq!(doc["sigma"], 0);
    assert_eq!(doc["transposed"], false);
}

#[test]
fn corrupted_table_fails_with_recheckable_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t.txt");
    run(&[
        "generate",
        "--field",
        "3",
        "--rows",
        "2",
        "--cols",
        "2",
        "--seed",
        "9",
        "--out",
        path(&table),
    ]);
    let text = fs::read_to_string(&table).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    // swap the images of 0 and I, whose dis-neighbourhoods differ
    lines.swap(1, 1 + 28);
    fs::write(&table, lines.join("\n")).unwrap();

    for args in [
        vec!["decompose", path(&table)],
        vec!["certify", path(&table)],
    ] {
        let (code, report) = run(&args);
        assert_eq!(code, 1);
        assert_eq!(report["outcome"], "fail");
        let bad = &check(&report, "dis_preserved")["counterexample"];
        assert_ne!(bad["dis"], bad["image_dis"]);
        let index = |key: &str| bad[key]["index"].as_u64().unwrap() as usize;
        assert_eq!(
            lines[1 + index("A")].parse::<usize>().unwrap(),
            index("image_A")
        );
        assert_eq!(
            lines[1 + index("B")].parse::<usize>().unwrap(),
            index("image_B")
        );
    }
}

#[test]
fn malformed_tables_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("short", "3 2 2\n0\n1\n"),
        ("header", "3 2\n0\n"),
        ("garbage", "3 2 2\nzero\n"),
        ("duplicate", &format!("3 2 2\n{}", "0\n".repeat(81))),
    ];
    for (name, text) in cases {
        let table = dir.path().join(name);
        fs::write(&table, text).unwrap();
        let (code, report) = run(&["decompose", path(&table)]);
        assert_eq!(code, 2, "{name}");
        assert_eq!(report["outcome"], "error");
    }
    let (code, _) = run(&["decompose", path(&dir.path().join("missing"))]);
    assert_eq!(code, 2);
}

#[test]
fn decompose_refuses_binary_field_tables() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("gf2.txt");
    let text: String = std::iter::once("2 2 2\n".to_string())
        .chain((0..16).map(|i| format!("{i}\n")))
        .collect();
    fs::write(&table, text).unwrap();
    let (code, report) = run(&["decompose", path(&table)]);
    assert_eq!(code, 2);
    assert!(report["error"].as_str().unwrap().contains("three elements"));
}

#[test]
fn grassmann_counts() {
    let (code, report) = run(&["grassmann", "--field", "3", "--rows", "2", "--cols", "2"]);
    assert_eq!(code, 0);
    assert_eq!(
        report["results"],
        serde_json::json!({ "total": 130, "finite": 81, "infinite": 49 })
    );
    assert_eq!(
        check(&report, "complementarity_correspondence")["passed"],
        true
    );

    let (code, report) = run(&["grassmann", "--field", "3", "--rows", "1", "--cols", "1"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["total"], 4);

    let (code, _) = run(&["grassmann", "--field", "3", "--rows", "0", "--cols", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn count_rank_distribution() {
    let (code, report) = run(&["count", "--field", "3", "--rows", "2", "--cols", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["counts"], serde_json::json!([1, 32, 48]));
    assert_eq!(report["results"]["total"], 81);

    let (code, report) = run(&["count", "--field", "2", "--rows", "2", "--cols", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["total"], 16);

    let (code, _) = run(&[
        "count", "--field", "3", "--rows", "4", "--cols", "4", "--budget", "1000",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn out_flag_writes_a_copy_of_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let (_, report) = run(&[
        "count",
        "--field",
        "3",
        "--rows",
        "2",
        "--cols",
        "2",
        "--out",
        path(&out),
    ]);
    let copy: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(copy, report);
}
