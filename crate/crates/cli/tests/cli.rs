use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn rootsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootsc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn root_of_example_minimized() {
    let out = rootsc(&["root", &path("example.dfa"), "--minimize"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "states=1847");
}

#[test]
fn root_unminimized_has_one_state_per_element() {
    let out = rootsc(&["root", &path("example.dfa")]);
    assert_eq!(stdout(&out).trim(), "states=1857");
}

#[test]
fn root_of_empty_language() {
    let out = rootsc(&["root", &path("empty.dfa"), "--minimize", "-o", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("states 1\n"), "{text}");
    assert!(text.contains("finals\n"), "{text}");
    assert!(text.trim_end().ends_with("states=1"));
}

#[test]
fn root_writes_parseable_output() {
    let dir = std::env::temp_dir().join(format!("rootsc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("root.dfa");
    let out = rootsc(&[
        "root",
        &path("square.dfa"),
        "--minimize",
        "-o",
        target.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&out).trim(), "states=4");
    let d = rootsc::dfa::parse(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert!(d.accepts(&[0]).unwrap() && d.accepts(&[0, 0]).unwrap());
    assert!(!d.accepts(&[]).unwrap() && !d.accepts(&[0, 0, 0]).unwrap());
    let again = rootsc(&["minimize", target.to_str().unwrap()]);
    assert_eq!(stdout(&again).trim(), "states=4");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unary_root_matches_root() {
    let unary = rootsc(&["unary-root", &path("square.dfa"), "--minimize"]);
    assert_eq!(stdout(&unary).trim(), "states=4");
    let cycle = rootsc(&["unary-root", &path("cycle5.dfa"), "--minimize"]);
    let general = rootsc(&["root", &path("cycle5.dfa"), "--minimize"]);
    assert_eq!(stdout(&cycle), stdout(&general));
    let rejected = rootsc(&["unary-root", &path("example.dfa")]);
    assert_eq!(rejected.status.code(), Some(2));
}

#[test]
fn missing_and_malformed_input() {
    let missing = rootsc(&["root", "/nonexistent/file.dfa"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad = rootsc(&["root", &path("bad.dfa")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 4"));
}

#[test]
fn monoid_sizes() {
    let out = rootsc(&["monoid", &path("example.dfa")]);
    let text = stdout(&out);
    assert!(text.starts_with("size=1857\n"), "{text}");
    let total: usize = text
        .lines()
        .filter_map(|l| l.strip_prefix("rank "))
        .map(|l| l.split(": ").nth(1).unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 1857);
    assert_eq!(
        stdout(&rootsc(&["monoid", &path("identity.dfa")])),
        "size=1\nrank 3: 1\n"
    );
    assert!(stdout(&rootsc(&["monoid", &path("cycle5.dfa")])).starts_with("size=5\n"));
}

#[test]
fn ukl_formula_and_enumeration() {
    let out = rootsc(&["ukl", "--k", "2", "--l", "3", "--enumerate"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1857\nclosure=1857\nAGREE\n");
    let n7 = rootsc(&["ukl", "--n", "7"]);
    assert_eq!(
        stdout(&n7),
        "pair=(2,5)\nformula=610871\npredicted_root_states=610850\n"
    );
    assert_eq!(
        rootsc(&["ukl", "--k", "2", "--l", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(rootsc(&["ukl", "--k", "2"]).status.code(), Some(2));
}

#[test]
fn ukl_json() {
    let out = rootsc(&["ukl", "--k", "3", "--l", "2", "--enumerate", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["formula"], "1433");
    assert_eq!(v["closure"], "1433");
    assert_eq!(v["agree"], true);
}

#[test]
fn stirling_and_bound() {
    assert_eq!(
        stdout(&rootsc(&["stirling", "--n", "4", "--k", "2"])),
        "7\n"
    );
    assert_eq!(
        stdout(&rootsc(&["stirling", "--n", "60", "--k", "30"]))
            .trim()
            .len(),
        rootsc::counting::stirling2(60, 30).to_string().len()
    );
    let bound = stdout(&rootsc(&["bound", "--n", "7"]));
    let mut lines = bound.lines();
    let value: f64 = lines.next().unwrap().parse().unwrap();
    assert!(value < 823543.0);
    assert!(lines.next().unwrap().ends_with("holds=true"));
}

#[test]
fn verify_exit_codes() {
    let ok = rootsc(&["verify", "--suite", "full-tn", "--max-n", "5"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("PASS  n=5"));
    assert_eq!(
        rootsc(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        rootsc(&["verify", "--suite", "full-tn", "--max-n", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(rootsc(&["verify"]).status.code(), Some(2));
}

#[test]
fn verify_json_schema() {
    let out = rootsc(&[
        "verify", "--suite", "min-dfa", "--k", "2", "--l", "3", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["suite", "params", "cases", "pass"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["params"]["k"], "2");
    assert_eq!(v["cases"][1]["measured"], "1847");
}

#[test]
fn verify_is_deterministic() {
    let run = || {
        let out = rootsc(&["verify", "--suite", "oracle", "--seed", "5", "--json"]);
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        for case in v["cases"].as_array_mut().unwrap() {
            case["elapsed_ms"] = serde_json::Value::Null;
        }
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn largest2_within_budget() {
    let out = rootsc(&["largest2", "--n", "3"]);
    assert!(stdout(&out).starts_with("size=24\n"));
    assert_eq!(rootsc(&["largest2", "--n", "5"]).status.code(), Some(2));
}
