use std::fs;
use std::path::Path;

use assert_cmd::Command;
use serde_json::Value;
use tempfile::TempDir;

const QUARTIC_313: &str = "1 3 4 9 11 12 16 19 26 27 33 36 44 48 50 57 58 64 70 76 78 79 81 83 85 98 99 103 104 108 113 119 121 132 137 139 142 144 150";

fn cmd() -> Command {
    Command::cargo_bin("ramsey-circ").unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = cmd().args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write_cert(dir: &Path, name: &str, args: &[&str]) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut full = vec!["verify"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--cert", path.to_str().unwrap()]);
    cmd().args(&full).assert().code(0);
    path
}

#[test]
fn residues_prints_connection_set_first() {
    let (code, out, _) = run(&["residues", "--prime", "17", "--order", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("1 2 4 8"));
    assert!(out.contains("negation_closed: true"));

    let (code, out, _) = run(&["residues", "--prime", "313", "--order", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some(QUARTIC_313));
}

#[test]
fn residues_rejects_composites_and_bad_orders() {
    assert_eq!(run(&["residues", "--prime", "12", "--order", "2"]).0, 64);
    assert_eq!(run(&["residues", "--prime", "17", "--order", "1"]).0, 64);
    assert_eq!(run(&["residues", "--prime", "17"]).0, 64);
}

#[test]
fn residues_json_is_stable() {
    let a = run(&["residues", "--prime", "101", "--order", "2", "--json"]).1;
    let b = run(&["residues", "--prime", "101", "--order", "2", "--json"]).1;
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["prime"], 101);
    assert_eq!(v["connection_set"].as_array().unwrap().len(), 25);
    assert_eq!(v["residues_full"].as_array().unwrap().len(), 50);
}

#[test]
fn verify_exit_codes_follow_verdict() {
    let (code, out, _) = run(&["verify", "--n", "8", "--s1", "1,4", "--p", "3", "--q", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("R(3,4) > 8"));
    assert!(out.contains("verdict: Verified"));

    let (code, out, _) = run(&["verify", "--n", "8", "--s1", "1,4", "--p", "3", "--q", "3"]);
    assert_eq!(code, 1);
    assert!(out.contains("verdict: Refuted"));

    let (code, _, _) = run(&[
        "verify",
        "--n",
        "17",
        "--s1",
        "auto:17,2",
        "--p",
        "4",
        "--q",
        "4",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn verify_large_blue_half_is_inconclusive_under_budget() {
    let (code, out, _) = run(&[
        "verify",
        "--n",
        "313",
        "--s1",
        "auto:313,4",
        "--p",
        "4",
        "--q",
        "22",
        "--budget-seconds",
        "1",
    ]);
    assert_eq!(code, 2);
    assert!(out.contains("red: no K_4"));
    assert!(out.contains("verdict: Inconclusive"));
}

#[test]
fn verify_rejects_invalid_sets() {
    assert_eq!(
        run(&["verify", "--n", "8", "--s1", "1,5", "--p", "3", "--q", "4"]).0,
        64
    );
    assert_eq!(
        run(&["verify", "--n", "8", "--s1", "0", "--p", "3", "--q", "4"]).0,
        64
    );
    assert_eq!(
        run(&["verify", "--n", "8", "--s1", "1,x", "--p", "3", "--q", "4"]).0,
        64
    );
    assert_eq!(
        run(&[
            "verify",
            "--n",
            "18",
            "--s1",
            "auto:17,2",
            "--p",
            "4",
            "--q",
            "4"
        ])
        .0,
        64
    );
    assert_eq!(
        run(&[
            "verify",
            "--n",
            "13",
            "--s1",
            "auto:13,4",
            "--p",
            "3",
            "--q",
            "3"
        ])
        .0,
        64
    );
    assert_eq!(
        run(&[
            "verify",
            "--n",
            "8",
            "--s1",
            "@/nonexistent",
            "--p",
            "3",
            "--q",
            "4"
        ])
        .0,
        66
    );
}

#[test]
fn verify_reads_sets_from_files() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("s1.txt");
    fs::write(&path, "# red distances\n1\n4\n").unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(
        run(&["verify", "--n", "8", "--s1", &arg, "--p", "3", "--q", "4"]).0,
        0
    );

    fs::write(&path, "1 four\n").unwrap();
    assert_eq!(
        run(&["verify", "--n", "8", "--s1", &arg, "--p", "3", "--q", "4"]).0,
        65
    );
}

#[test]
fn auto_set_matches_residues_output() {
    let dir = TempDir::new().unwrap();
    let cert = write_cert(
        dir.path(),
        "c.json",
        &["--n", "17", "--s1", "auto:17,2", "--p", "4", "--q", "4"],
    );
    let v: Value = serde_json::from_str(&fs::read_to_string(cert).unwrap()).unwrap();
    let s1: Vec<String> = v["s1"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    let residues = run(&["residues", "--prime", "17", "--order", "2"]).1;
    assert_eq!(residues.lines().next().unwrap(), s1.join(" "));
    assert_eq!(v["construction"]["prime"], 17);
    assert_eq!(v["construction"]["order"], 2);
}

#[test]
fn clique_on_circulants() {
    let (code, out, _) = run(&["clique", "--circulant", "17,1,2,4,8"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("omega 3 exact"));

    let (code, out, _) = run(&["clique", "--circulant", "17,1,2,4,8", "--no-symmetry"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("omega 3 exact"));

    let (code, out, _) = run(&["clique", "--circulant", "8,1,4", "--decision", "3"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("clique 3 refuted"));

    let (code, out, _) = run(&["clique", "--circulant", "8,2,3", "--decision", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("clique 3 found"));
}

#[test]
fn clique_budget_exhaustion_exits_2() {
    let (code, out, _) = run(&[
        "clique",
        "--circulant",
        "101,1,4,5,6,9,13,14,16,17,19,20,21,22,23,24,25,30,31,33,36,37,43,45,47,49",
        "--no-symmetry",
        "--budget-nodes",
        "3",
    ]);
    assert_eq!(code, 2, "{out}");
    assert!(out.contains("lower-bound"));
}

#[test]
fn clique_on_dimacs_files() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("k3.dimacs");
    fs::write(&path, "c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
    let (code, out, _) = run(&["clique", "--in", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("omega 3 exact"));
    assert_eq!(out.lines().nth(1), Some("witness 0 1 2"));

    fs::write(&path, "p edge 3 1\ne 1 4\n").unwrap();
    let (code, _, err) = run(&["clique", "--in", path.to_str().unwrap()]);
    assert_eq!(code, 65);
    assert!(err.contains("line 2"), "{err}");

    assert_eq!(run(&["clique", "--in", "/nonexistent.dimacs"]).0, 66);
    assert_eq!(run(&["clique", "--circulant", "8,x"]).0, 65);
    assert_eq!(run(&["clique"]).0, 64);
}

#[test]
fn sweep_reports_known_constructions() {
    let (code, out, _) = run(&["sweep", "--max-n", "17", "--orders", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let row = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["prime"] == 17 && r["order"] == 2)
        .unwrap();
    assert_eq!(row["claim"]["p"], 4);
    assert_eq!(row["claim"]["q"], 4);
    assert_eq!(row["claim"]["n"], 17);
    assert_eq!(row["comparison"], "Ties");

    let (code, out, _) = run(&[
        "sweep", "--max-n", "71", "--orders", "5", "--format", "table",
    ]);
    assert_eq!(code, 0);
    let line = out
        .lines()
        .find(|l| l.trim_start().starts_with("71 "))
        .unwrap();
    assert!(line.contains("R(3,15) > 71"), "{line}");
    assert!(line.contains("Worse (known > 72)"), "{line}");
}

#[test]
fn sweep_skips_every_degenerate_row() {
    let (code, out, _) = run(&["sweep", "--max-n", "10", "--orders", "7"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        assert_eq!(r["status"], "Skipped");
        assert_eq!(r["skip_reason"], "degenerate");
    }
}

#[test]
fn sweep_writes_files_and_announces_improvements() {
    let dir = TempDir::new().unwrap();
    let bounds = dir.path().join("bounds.csv");
    fs::write(&bounds, "4,4,16\n").unwrap();
    let out = dir.path().join("report.json");
    let (code, stdout, _) = run(&[
        "sweep",
        "--max-n",
        "17",
        "--orders",
        "2",
        "--bounds",
        bounds.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("R(4,4) > 17"), "{stdout}");
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["comparison"] == "Improves"));

    fs::write(&bounds, "4,4\n").unwrap();
    let (code, _, _) = run(&[
        "sweep",
        "--max-n",
        "17",
        "--orders",
        "2",
        "--bounds",
        bounds.to_str().unwrap(),
    ]);
    assert_eq!(code, 65);
    assert_eq!(run(&["sweep", "--max-n", "17", "--orders", "9"]).0, 64);
}

#[test]
fn check_accepts_fresh_certificates() {
    let dir = TempDir::new().unwrap();
    let cert = write_cert(
        dir.path(),
        "c.json",
        &["--n", "8", "--s1", "1,4", "--p", "3", "--q", "4"],
    );
    let (code, out, _) = run(&["check", "--cert", cert.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("agreement"));
}

#[test]
fn check_detects_tampering() {
    let dir = TempDir::new().unwrap();
    let cert = write_cert(
        dir.path(),
        "c.json",
        &["--n", "8", "--s1", "1,4", "--p", "3", "--q", "4"],
    );
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    v["s1"] = serde_json::json!([1]);
    fs::write(&cert, v.to_string()).unwrap();
    let (code, out, _) = run(&["check", "--cert", cert.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("partition incomplete"), "{out}");
}

#[test]
fn check_reports_schema_and_io_errors() {
    let dir = TempDir::new().unwrap();
    let cert = dir.path().join("bad.json");
    fs::write(&cert, r#"{"format_version": 1, "n": "eight"}"#).unwrap();
    let (code, _, err) = run(&["check", "--cert", cert.to_str().unwrap()]);
    assert_eq!(code, 65);
    assert!(err.contains('n'), "{err}");
    assert_eq!(run(&["check", "--cert", "/nonexistent.json"]).0, 66);
}

#[test]
fn check_is_inconclusive_when_rerun_budget_runs_out() {
    let dir = TempDir::new().unwrap();
    let cert = dir.path().join("big.json");
    let (code, _, _) = run(&[
        "verify",
        "--n",
        "313",
        "--s1",
        "auto:313,4",
        "--p",
        "4",
        "--q",
        "22",
        "--budget-seconds",
        "1",
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    let (code, out, _) = run(&[
        "check",
        "--cert",
        cert.to_str().unwrap(),
        "--budget-seconds",
        "1",
    ]);
    assert_eq!(code, 2, "{out}");
    assert!(out.contains("inconclusive"));
}
