use std::path::PathBuf;
use std::process::{Command, Output};

use superlie::catalog;
use superlie::clifford::{self, ExportKind};
use superlie::nlie::format;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_superlie"));
    c.env_remove("SUPERLIE_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, text: &str) -> String {
    let p = scratch(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn catalog_file(name: &str) -> String {
    let doc = catalog::get_entry(name).unwrap().doc.to_json();
    write(&format!("{name}.json"), &doc)
}

#[test]
fn check_reports_pass_and_failure() {
    let o = run(&["check", &catalog_file("T4b")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "grading ok, skew ok, filippov ok\n");

    let bad = write(
        "cubic.json",
        r#"{"arity":3,"even":[],"odd":["f1"],"brackets":[{"args":["f1","f1","f1"],"value":{"f1":{"re":"1","im":"0"}}}]}"#,
    );
    let o = run(&["check", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("filippov: y=[f1,f1] x=[f1,f1,f1] residual=2*f1"), "{}", stdout(&o));
}

#[test]
fn forced_zero_entry_is_reported_as_violation() {
    let o = run(&["check", &catalog_file("T5b")]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("rejected: "), "{text}");
    assert!(text.contains("skew: [e1,e1,f1] is forced to zero but stored"), "{text}");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(run(&["check"]).status.code(), Some(2));
    assert_eq!(run(&["check", "x.json", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["check", "/nonexistent/file.json"]).status.code(), Some(2));
    let bad = write("broken.json", "{\"arity\": 3,");
    assert_eq!(run(&["check", &bad]).status.code(), Some(2));
    let extra = write("extra.json", r#"{"arity":2,"even":["e1"],"odd":[],"brackets":[],"colour":"red"}"#);
    assert_eq!(run(&["check", &extra]).status.code(), Some(2));
    assert_eq!(run(&["catalog", "dump", "T9"]).status.code(), Some(2));
    assert_eq!(run(&["clifford", "--n", "3", "--emit", "ternary"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--dim", "1", "--grid", "0,1"]).status.code(), Some(2));
    let o = bin().env("SUPERLIE_THREADS", "many").args(["catalog", "list"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn clifford_tables_parse_back() {
    let o = run(&["clifford", "--n", "2", "--emit", "lie"]);
    assert_eq!(o.status.code(), Some(0));
    let t = format::parse_table(&stdout(&o)).unwrap();
    assert_eq!(t, clifford::export(2, ExportKind::Lie).unwrap());
    assert_eq!(t.entry_count(), 4);

    let ternary = format::parse_table(&stdout(&run(&["clifford", "--n", "2", "--emit", "ternary"]))).unwrap();
    let proposition = format::parse_table(&stdout(&run(&["clifford", "--n", "2", "--emit", "proposition"]))).unwrap();
    assert_eq!(ternary, proposition);

    let out = scratch("c4.json");
    let o = run(&["clifford", "--n", "4", "--emit", "ternary", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3-ary table on 8|8 basis with 56 nontrivial relations\n");

    let m = stdout(&run(&["clifford", "--n", "2", "--emit", "matrix"]));
    assert!(m.starts_with("g1\n0 1\n1 0\n"), "{m}");
}

#[test]
fn induce_with_files_and_auto() {
    let lie = catalog_file("clifford_lie(2)");
    let functional = write("str2.json", r#"{"functional":{"g12":{"re":"0","im":"2"}}}"#);
    let o = run(&["induce", &lie, "--supertrace", &functional]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(format::parse_table(&stdout(&o)).unwrap(), clifford::export(2, ExportKind::Ternary).unwrap());

    let auto = run(&["induce", &lie, "--supertrace", "auto"]);
    assert_eq!(auto.status.code(), Some(0));
    let auto_t = format::parse_table(&stdout(&auto)).unwrap();
    assert!(superlie::nlie::verify_axioms(&auto_t).all_ok());

    let not_str = write("g1.json", r#"{"functional":{"g1":{"re":"1","im":"0"}}}"#);
    let o = run(&["induce", &lie, "--supertrace", &not_str]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not a supertrace"));

    let abelian = catalog_file("abelian(2,1)");
    let o = run(&["induce", &abelian, "--supertrace", "auto"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains('2'));
    assert_eq!(run(&["induce", &abelian, "--supertrace", "auto", "--index", "1"]).status.code(), Some(0));
    assert_eq!(run(&["induce", &abelian, "--supertrace", "auto", "--index", "2"]).status.code(), Some(2));
}

#[test]
fn series_report() {
    let o = run(&["series", &catalog_file("clifford_lie(2)"), "--kind", "derived"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "D^0: dim 4 [e; g12; g1; g2]\nD^1: dim 3 [e; g1; g2]\nD^2: dim 1 [e]\nD^3: dim 0 []\nsolvable: yes\n"
    );
    let o = run(&["series", &catalog_file("T4b"), "--kind", "central"]);
    assert!(stdout(&o).ends_with("nilpotent: yes\n"));
}

#[test]
fn classify_and_constraints() {
    let o = run(&["classify", "--dim", "1,1", "--grid", "0,1,-1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("1 solutions on the grid"), "{text}");
    assert!(text.contains("#0: abelian"), "{text}");

    let o = run(&["classify", "--dim", "1,2", "--grid", "0,1,-1", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("177147"));

    let out = scratch("c01.txt");
    let o = run(&["constraints", "--dim", "0,1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(
        written,
        "# signature 0|1\n# arity 3\n# variables 1\n#   K[f1,f1,f1->f1]\n# constraints 1\n2*K[f1,f1,f1->f1]^2\n"
    );
}

#[test]
fn catalog_commands() {
    let list = stdout(&run(&["catalog", "list"]));
    assert_eq!(list.lines().count(), catalog::list().len());
    assert!(list.starts_with("T4a\tpass\t"));

    let dump = stdout(&run(&["catalog", "dump", "T5a"]));
    assert_eq!(format::parse_table(&dump).unwrap(), catalog::get_entry("T5a").unwrap().table().unwrap());

    let o = run(&["catalog", "verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("T5c: fail; grading ok, skew ok, filippov FAILED"), "{text}");
    assert!(text.contains("T5b: rejected"), "{text}");
    assert!(!text.contains("VIOLATION"));
}

#[test]
fn json_summary_is_last_line() {
    let o = run(&["--json", "check", &catalog_file("T4a")]);
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(last).unwrap();
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["filippov_ok"], true);
}

#[test]
fn output_is_deterministic_across_runs_and_threads() {
    let lie4 = catalog_file("clifford_lie(4)");
    let cases: Vec<Vec<String>> = vec![
        vec!["clifford".into(), "--n".into(), "4".into(), "--emit".into(), "ternary".into()],
        vec!["classify".into(), "--dim".into(), "0,2".into(), "--grid".into(), "0,1,-1".into()],
        vec!["catalog".into(), "verify".into()],
        vec!["induce".into(), lie4.clone(), "--supertrace".into(), "auto".into()],
        vec!["series".into(), lie4, "--kind".into(), "central".into()],
    ];
    for args in cases {
        let outputs: Vec<Vec<u8>> = ["1", "4", "4"]
            .iter()
            .map(|k| {
                let mut full = vec!["--threads".to_string(), k.to_string()];
                full.extend(args.iter().cloned());
                bin().args(&full).output().unwrap().stdout
            })
            .collect();
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}
