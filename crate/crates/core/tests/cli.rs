use std::io::Write;
use std::process::{Command, Output, Stdio};

use causal_explain::emit::emit_theory;
use causal_explain::fixtures::generic_diagram;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_causal-explain"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn piped_stages_match_all() {
    let input = emit_theory(&generic_diagram()) + "-true(gamma1).\n";
    for format in ["text", "json"] {
        let gen = run(&["--stage", "gen", "--format", format], &input);
        let opt = run(&["--stage", "opt", "--format", format], &stdout(&gen));
        let verify = run(&["--stage", "verify", "--format", format], &stdout(&opt));
        let all = run(&["--format", format], &input);
        assert!(all.status.success());
        assert_eq!(stdout(&verify), stdout(&all));
    }
}

#[test]
fn files_are_merged_and_out_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.lp");
    let b = dir.path().join("b.lp");
    let out = dir.path().join("out.lp");
    std::fs::write(&a, "cause(a,b).\n").unwrap();
    std::fs::write(&b, "cause(b,c).\n").unwrap();
    let o = run(
        &[
            a.to_str().unwrap(),
            b.to_str().unwrap(),
            "--stage",
            "gen",
            "--out",
            out.to_str().unwrap(),
        ],
        "",
    );
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out)
        .unwrap()
        .contains("ecSet(a,c,{a})."));
}

#[test]
fn empty_input_succeeds() {
    let o = run(&[], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "stage(verify).\nworld(1).\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[], "cause(a,b").status.code(), Some(1));
    assert_eq!(
        run(&["--stage", "opt"], "cause(a,b).").status.code(),
        Some(1)
    );
    assert_eq!(run(&[], "true(a). -true(a).").status.code(), Some(1));
    let many = "true(a) v true(b). true(c) v true(d).";
    let o = run(&["--max-worlds", "3"], many);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains('3'));
    assert!(run(&["--max-worlds", "4"], many).status.success());
}

#[test]
fn inclusive_disjunction_adds_worlds() {
    let input = "true(a) v true(b).";
    let worlds = |args: &[&str]| stdout(&run(args, input)).matches("world(").count();
    assert_eq!(worlds(&[]), 2);
    assert_eq!(worlds(&["--inclusive-disjunction"]), 3);
}

#[test]
fn lift_flag() {
    let input = "ont_object(tom,student). ont_object(book,document). all_onekind(own). symbol([own,student,book]).";
    let o = run(&["--lift", "--stage", "gen"], input);
    assert!(o.status.success());
    assert!(stdout(&o).contains("ont([own,student,book],[own,tom,book])."));
    assert!(!stdout(&run(&["--stage", "gen"], input)).contains("[own,tom,book]"));
}

#[test]
fn oracle_flag() {
    let o = run(
        &["--oracle"],
        &emit_theory(&causal_explain::fixtures::pruning_example()),
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "pipeline and oracle agree\n");
}
