use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_positroid-lab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(p).unwrap()
}

fn check_golden(args: &[&str], name: &str) {
    let o = run(args);
    assert!(o.status.success(), "{:?} exited with {:?}", args, o.status);
    assert_eq!(stdout(&o), golden(name), "output of {:?} differs from {}", args, name);
}

#[test]
fn golden_files() {
    check_golden(&["--format", "machine", "analyze", "gr37"], "analyze_gr37.txt");
    check_golden(&["--format", "machine", "verify", "gr37"], "verify_gr37.txt");
    check_golden(&["--format", "machine", "verify", "split59"], "verify_split59.txt");
    check_golden(&["--format", "machine", "verify", "uniform35"], "verify_uniform35.txt");
    check_golden(&["variables", "gr37", "--convention", "src"], "variables_gr37_src.txt");
    check_golden(&["variables", "gr37", "--convention", "tgt"], "variables_gr37_tgt.txt");
    check_golden(&["--format", "machine", "positroid", "gr37"], "positroid_gr37.txt");
    check_golden(
        &["--format", "machine", "matchings", "single_edge"],
        "matchings_single_edge.txt",
    );
    check_golden(
        &["--format", "machine", "twist", "gr37", "--samples", "20"],
        "twist_gr37.txt",
    );
}

#[test]
fn machine_format_is_self_describing() {
    let out = stdout(&run(&["--format", "machine", "verify", "gr37"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "positroid-lab/1");
    assert_eq!(lines[1], "command verify");
    assert_eq!(*lines.last().unwrap(), "status pass");
    assert!(lines.contains(&"tgt D157 = src D357 * D167/D367"));
    assert!(lines.contains(&"frozen tgt D145 = src D167*D345/D367"));
}

#[test]
fn same_output_for_any_thread_count() {
    let args = [
        "--format",
        "machine",
        "twist",
        "split59",
        "--samples",
        "8",
        "--rng-seed",
        "5",
    ];
    let outs: Vec<String> = ["1", "2", "3"]
        .iter()
        .map(|t| stdout(&bin().args(args).env("POSITROID_LAB_THREADS", t).output().unwrap()))
        .collect();
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[0], outs[2]);
    assert_eq!(outs[0], stdout(&run(&args)));
}

#[test]
fn rng_seed_changes_samples_not_verdict() {
    let a = stdout(&run(&[
        "--format",
        "machine",
        "twist",
        "gr37",
        "--samples",
        "3",
        "--rng-seed",
        "9",
    ]));
    let b = stdout(&run(&["--format", "machine", "twist", "gr37", "--samples", "3"]));
    assert!(a.contains("rng_seed 9") && b.contains("rng_seed 1"));
    assert!(a.ends_with("status pass\n") && b.ends_with("status pass\n"));
}

#[test]
fn graph_files_are_accepted() {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../positroid/corpus/gr37.plabic");
    let o = run(&["--format", "machine", "positroid", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\nsize 30\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "no-such-graph"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    // Two white nodes joined by an edge break the bipartite rule.
    let bad = "plabic n=2\nnode 1 white\nnode 2 white\nedge 1 2\nhalf 1 1\nhalf 2 2\nembed 1: b1 2\nembed 2: b2 1\n";
    let path = std::env::temp_dir().join(format!("positroid-lab-bad-{}.plabic", std::process::id()));
    std::fs::write(&path, bad).unwrap();
    let o = run(&["--format", "machine", "validate", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("violation edge e1 joins nodes of one colour"), "{}", out);
    assert!(out.ends_with("status fail\n"));
    assert_eq!(run(&["validate", "gr37"]).status.code(), Some(0));
}

#[test]
fn variables_without_mutable_part() {
    let out = stdout(&run(&["--format", "machine", "variables", "single_edge"]));
    assert!(out.contains("clusters 1"));
    assert!(!out.contains("degree"));
}
