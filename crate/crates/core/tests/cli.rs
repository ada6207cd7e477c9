use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primegraph")).args(args).output().expect("spawn binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("primegraph-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn hawkes_graph_of_s4() {
    let o = run(&["graphs", "builtin:s4", "--kind", "hawkes", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "V: 2 3 ; E: (2,2) (2,3) (3,2)\n");
}

#[test]
fn all_kinds_for_s3() {
    let o = run(&["graphs", "builtin:s3", "--kind", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "sylow: V: 2 3 ; E: (3,2)\nncrit: V: 2 3 ; E: (3,2)\nhawkes: V: 2 3 ; E: (3,2)\n"
    );
}

#[test]
fn dot_and_json_are_stable() {
    for format in ["dot", "json"] {
        let a = run(&["graphs", "builtin:s4", "--kind", "all", "--format", format]);
        let b = run(&["graphs", "builtin:s4", "--kind", "all", "--format", format]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
    let o = run(&["graphs", "builtin:s4", "--kind", "sylow", "--format", "dot"]);
    assert_eq!(stdout(&o), "digraph sylow {\n  \"2\";\n  \"3\";\n  \"3\" -> \"2\";\n}\n");
    let o = run(&["graphs", "builtin:s4", "--kind", "ncrit", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"], serde_json::json!([2, 3]));
    assert_eq!(v["edges"], serde_json::json!([[2, 3], [3, 2]]));
}

#[test]
fn mut_sandwich_on_s4() {
    let o = run(&["verify", "mut", "--group", "builtin:s4", "--factors", "P,A4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for id in ["ncrit-lower", "ncrit-upper", "hawkes-lower", "hawkes-upper"] {
        assert!(text.contains(&format!("THM mut CLAIM {id} HOLDS\n")), "{text}");
    }
    assert!(text.contains("THM mut NOTE hawkes-upper-without-loops NO witness=(2,2)"));
}

#[test]
fn verify_json_has_schema_keys() {
    let o = run(&["verify", "thm1", "--group", "builtin:s3*zn(5)", "--factors", "F1,F2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(&keys[..4], ["theorem", "claims", "group", "factors"]);
    assert_eq!(v["digest"].as_str().unwrap().len(), 64);
}

#[test]
fn failed_precondition_is_exit_2() {
    // P and A4 are not N-connected
    let o = run(&["verify", "thm1", "--group", "builtin:s4", "--factors", "P,A4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn classify_s4() {
    let o = run(&["classify", "--group", "builtin:s4", "--factors", "P,A4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "product-is-group: yes\npermutable: yes\nmutually-permutable: yes\ntotally-permutable: no\nn-connected: no\n"
    );
}

#[test]
fn group_from_file() {
    let path = temp_file(
        "s3.grp",
        "name S3 # symmetric\ndegree 3\ngen (1 2 3)\ngen (1 2)\nsub T:\n  gen (1 2 3)\n",
    );
    let p = path.to_str().unwrap();
    let o = run(&["graphs", p, "--kind", "sylow"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "V: 2 3 ; E: (3,2)\n");
    let o = run(&["classify", "--group", p, "--factors", "T,syl2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("product-is-group: yes\n"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn parse_errors_are_exit_2() {
    let path = temp_file("bad.grp", "degree 3\ngen (1 2\n");
    let o = run(&["graphs", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::remove_file(path).unwrap();

    let path = temp_file("wide.grp", "degree 3\ngen (1 4)\n");
    let o = run(&["graphs", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("degree mismatch"));
    std::fs::remove_file(path).unwrap();

    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["graphs", "builtin:nope"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--question", "q9"]).status.code(), Some(2));
}

#[test]
fn scan_is_deterministic_across_jobs() {
    let a = run(&["scan", "--question", "q2", "--max-order", "60", "--jobs", "1"]);
    let b = run(&["scan", "--question", "q2", "--max-order", "60", "--jobs", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().last().unwrap().ends_with("violations=0"));
    assert!(text.lines().all(|l| l.starts_with("SCAN ")));
}
