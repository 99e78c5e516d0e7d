use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_operadkit"));
    c.env_remove("OPERADKIT_BOUNDS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("scratch file");
    path
}

#[test]
fn lattice_of_c2_from_group_file() {
    let grp = scratch("c2.grp", "group 2\n0 1\n1 0\n");
    let o = run(&["indexing", "lattice", "--group", grp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("2 indexing systems"), "{text}");
    assert!(text.contains("hasse 0 < 1"), "{text}");
}

#[test]
fn canonical_path_of_a_norm_is_one_untwistor() {
    let o = run(&["coherence", "canon", "--from", "(oxT:t1:1 1 2)", "--to", "(ox 1 2)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("1 basic edges"), "{text}");
    assert!(text.contains("  1. upsilon[oxT:t1:1]"), "{text}");
}

#[test]
fn broken_braiding_exits_one_with_hexagon_counterexample() {
    let exported = run(&["nsmc", "export", "--data", "sign-z2", "--format", "lines"]);
    assert_eq!(exported.status.code(), Some(0));
    let mut json: serde_json::Value = serde_json::from_str(&stdout(&exported)).expect("exported JSON");
    // β_{0,1} = β_{1,0} = -1: signs no longer bilinear
    json["beta"] = serde_json::json!([0, 3, 3, 1]);
    let file = scratch("broken.nsmc", &json.to_string());
    let o = run(&["nsmc", "validate", "--data", file.to_str().unwrap(), "--format", "lines"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("CHECK hexagon FAIL at (")), "{text}");
}

#[test]
fn reports_are_deterministic() {
    let args = ["zoo", "change-norms", "--group", "c2", "--n", "free=G/e", "--m", "two=G/e+G/e"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout, "two runs differ");
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["indexing", "lattice", "--group", "q8"]).status.code(), Some(2));
    let o = run(&["zoo", "change-norms", "--group", "c2", "--m", "free=G/e"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("N generates"), "hypothesis failure reported");
}

#[test]
fn environment_bounds_apply_and_flags_win() {
    let o = bin().env("OPERADKIT_BOUNDS", "--depth 1 --arity=2").args(["coherence", "verify", "--arity", "3"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# run: depth<=1 arity<=3 path_len<=4"), "{}", stdout(&o));
    let bad = bin().env("OPERADKIT_BOUNDS", "--depth 0").args(["coherence", "verify"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn lines_format_has_only_check_lines() {
    let o = run(&["nsmc", "validate", "--data", "chaotic-z2", "--norm", "free=G/e", "--format", "lines"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with("CHECK ") && l.contains(" PASS")), "{}", stdout(&o));
}

#[test]
fn theorem_checks_print_a_descriptive_anchor() {
    for args in [
        vec!["zoo", "lattice-check", "--group", "c2"],
        vec!["funtg", "verify-norms", "--h", "G", "--k", "e"],
        vec!["nsmc", "nonexample"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = stdout(&o);
        let anchor = text.lines().nth(1).unwrap_or_default();
        assert!(anchor.starts_with("# ") && anchor.len() > 4, "{args:?}: {text}");
        assert!(text.ends_with("# verdict: PASS\n"), "{args:?}: {text}");
    }
}
