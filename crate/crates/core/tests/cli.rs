use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quantaloid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_one_quantale() {
    let o = run(&["classify", "--quantale", "F1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("lean: false"));
    assert!(text.contains("weakly_lean: true"));
    assert!(text.starts_with("# quantaloid classify seed=0"));
}

#[test]
fn jsonl_lines_parse_and_record_the_seed() {
    let o = run(&["check-theorems", "--quantale", "M3", "--format", "jsonl", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines[0]["seed"], 42);
    let theorems: Vec<_> = lines.iter().filter(|v| v["kind"] == "theorem").collect();
    assert_eq!(theorems.len(), 2);
    assert!(theorems.iter().all(|t| t["agreement"] == "agree"));
    assert!(lines.iter().filter(|v| v["kind"] == "profile").all(|v| v["seed"] == 42));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["partition-roundtrip", "--quantale", "F1", "--max-set", "3", "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn run_evaluates_and_checks() {
    let file = data("powerset_surjection.rel");
    let o = run(&[
        "run",
        &file,
        "--eval",
        "xi^op . xi",
        "--check",
        "xi . xi^op == idt(xi)",
        "--check",
        "xi^op . xi >= ids(xi)",
        "--check",
        "roundtrip(sigma)",
        "--check",
        "blocks(xi) == sigma",
        "--check",
        "map(zeta)",
    ]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("x | {a,b,c} {c}     {b}"), "{text}");
}

#[test]
fn failing_check_exits_with_one() {
    let file = data("powerset_surjection.rel");
    let o = run(&["run", &file, "--check", "xi^op . xi == ids(xi)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(run(&["classify", "--quantale", "nonesuch"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let file = data("powerset_surjection.rel");
    let o = run(&["run", &file, "--eval", "xi . xi"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn extended_chain_inverse_pair() {
    let file = data("extended_chain.rel");
    let o = run(&["run", &file, "--check", "eta . zeta == ids(zeta)", "--check", "zeta^* == eta", "--check", "!symmetric(zeta)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn kleisli_compose_from_file() {
    let o = run(&["kleisli", "compose", &data("partial.rel"), "--outer", "eta", "--inner", "zeta"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("check formula agrees with m . eta+ . zeta: pass"));
}

#[test]
fn free_iso_for_a_point_from_file() {
    let o = run(&["kleisli", "free-iso", &data("m3_point.rel"), "--algebra", "point"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn out_writes_a_file() {
    let path = std::env::temp_dir().join(format!("quantaloid-cli-{}.txt", std::process::id()));
    let o = run(&["classify", "--quantale", "C3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.contains("quantale C3"));
}
