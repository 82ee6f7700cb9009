use std::path::PathBuf;
use std::process::{Command, Output};

use workbench_core::format::{self, Object};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn convert_semilinear_to_machine_writes_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let o = run(&["convert", &data("diagonal.json"), "--to", "ncm", "--letters", "ab", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("oracle-equal ≤ 10: PASS"));
    let text = std::fs::read_to_string(&out).unwrap();
    let obj = format::parse(&text).unwrap();
    assert!(matches!(obj, Object::Machine(_)));
    assert_eq!(format::print(&obj), text);
}

#[test]
fn convert_matrix_reports_tree_count_preservation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e.json");
    let o = run(&["convert", &data("xsharpx.json"), "--to", "reduced-etol", "--max-len", "7", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("oracle-equal ≤ 7: PASS (14 words)"), "{s}");
    assert!(s.contains("derivation counts preserved: PASS"));
    // The written system converts onward to EDTOL with the same check.
    let o = run(&["convert", out.to_str().unwrap(), "--to", "edtol", "--max-len", "7", "--out", dir.path().join("d.json").to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn convert_rejects_non_distinct_letters_for_dcm() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"kind": "bounded", "words": [["a","b"], ["b"]], "class": "Ginsburg", "alphabet": ["a","b"],
            "q1": {"components": [{"constant": [0,0], "periods": [[1,1]]}]}, "q2": null}"#,
    )
    .unwrap();
    let o = run(&["convert", spec.to_str().unwrap(), "--to", "dcm"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("distinct letters"));
}

#[test]
fn decide_exit_codes_follow_verdicts() {
    let o = run(&["decide", &data("diagonal.json"), &data("diagonal.json"), "--letters", "ab", "--relation", "equal"]);
    assert_eq!(code(&o), 0);
    let o = run(&["decide", &data("anbn-positive-spec.json"), &data("shifted-diagonal-spec.json"), "--relation", "disjoint"]);
    assert_eq!(code(&o), 0);
    let o = run(&["decide", &data("anbn-spec.json"), &data("ab-star-spec.json"), "--relation", "subset"]);
    assert_eq!(code(&o), 0);
    let o = run(&["decide", &data("ab-star-spec.json"), &data("anbn-spec.json"), "--relation", "subset"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness: a"));
}

#[test]
fn enumerate_lists_shortlex_words() {
    let o = run(&["enumerate", &data("increasing-triples.json"), "--letters", "abc", "--max-len", "7"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "abbccc\nabbcccc\n");
    let o = run(&["enumerate", &data("diagonal.json")]);
    assert_eq!(code(&o), 2, "a set without letters is not a language");
}

#[test]
fn enumerate_budget_exhaustion_exits_3() {
    let o = run(&["enumerate", &data("wsharpw.json"), "--max-len", "12", "--steps", "5"]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn series_tables_and_fits() {
    let o = run(&["series", &data("xsharpx.json"), "--n", "17", "--subsequence", "3:2"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("17\t256\n"), "{s}");
    assert!(s.contains("recurrence of order 1 on terms 3:2: a[n] = (2)·a[n-1]"), "{s}");

    let o = run(&["series", &data("diagonal.json"), "--letters", "ab", "--n", "79", "--subsequence", "0:2"]);
    let s = stdout(&o);
    assert!(s.contains("\n6\t20\n") && s.contains("no recurrence of order ≤ 8 on terms 0:2"), "{s}");

    let o = run(&["series", &data("lambda.json"), "--n", "3", "--k", "1"]);
    assert!(stdout(&o).contains("\n0\t1\n"));
}

#[test]
fn audits() {
    let o = run(&["audit", &data("wsharpw.json"), "--kind", "index"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("index ≤ k = 2 over explored region: true"));

    let o = run(&["audit", &data("anbn-etol.json"), "--kind", "ambiguity"]);
    assert!(stdout(&o).contains("max derivation count over words ≤ 10: 1"));

    let o = run(&["audit", &data("repeated-nonterminal.json"), "--kind", "normal-form"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("violation"));

    let o = run(&["audit", &data("dependent-periods.json"), "--kind", "semi-simple"]);
    assert_eq!(code(&o), 1);
    let o = run(&["audit", &data("diagonal.json"), "--kind", "normal-form"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn regularize_writes_checked_automaton() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["regularize", &data("abn-edol.json"), "--max-len", "15", "--dump", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.contains("Parikh multisets agree ≤ 15: PASS"));
    assert!(s.contains("from\tlabel\tto\n"));
    assert!(matches!(format::parse(&std::fs::read_to_string(&out).unwrap()).unwrap(), Object::Automaton(_)));

    let o = run(&["regularize", &data("powers-of-two.json")]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("index exceeded"));
}

#[test]
fn shipped_files_are_canonical() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data"].iter().collect();
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let obj = format::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(format::print(&obj), text, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 7);
}
