use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaussbridge")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

const TWO_BRIDGE: &str = "O3+O2-U1+U2-O1+O4-U3+U4-";

#[test]
fn parse_reports_bridges() {
    let s = stdout(&["parse", "O1+O2+U1+U2+"]);
    assert!(s.contains("bridges   1"), "{s}");
    assert!(s.contains("genus     1"), "{s}");
}

#[test]
fn bad_code_exits_with_two() {
    assert_eq!(run(&["parse", "O1+U2+"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "X1"]).status.code(), Some(2));
    assert_eq!(run(&["connect", "O1+U1+", "9", "", "0"]).status.code(), Some(2));
}

#[test]
fn invariants_json_schema() {
    let s = stdout(&["invariants", TWO_BRIDGE, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["input"], TWO_BRIDGE);
    for key in ["vb", "wb"] {
        assert_eq!(v[key]["lower"], 2);
        assert_eq!(v[key]["upper"], 2);
        assert_eq!(v[key]["exact"], true);
        assert!(!v[key]["certificates"].as_array().unwrap().is_empty());
    }
    assert_eq!(v["parity"].as_array().unwrap().len(), 4);
    assert!(v["presentations"]["reduced"].as_str().unwrap().contains('v'));
}

#[test]
fn invariants_text_for_mirror() {
    let mirror = stdout(&["mirror", TWO_BRIDGE]).trim().to_string();
    let s = stdout(&["invariants", &mirror]);
    assert!(s.contains("vb       2 (exact)"), "{s}");
    assert!(s.contains("wb       1 (exact)"), "{s}");
}

#[test]
fn search_prints_replayable_witness() {
    let s = stdout(&["search", "O1+U1+", "--moves", "welded", "--target", "trivial"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["trivialized"], true);
    assert_eq!(v["witness"].as_array().unwrap().len(), 1);
    let s = stdout(&["search", "O1+U1+O2+U2+", "--target", "bridges", "--budget-depth", "3"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["min_bridge_found"], 1);
}

#[test]
fn diagram_operations() {
    assert_eq!(stdout(&["mirror", "O1+U1+"]).trim(), "U1-O1-");
    assert_eq!(stdout(&["project", "O1+O2+U1+U2+"]).trim(), "(empty)");
    assert_eq!(stdout(&["connect", "O1+U1+", "0", "O1-U1-", "0"]).trim(), "O1+U1+O2-U2-");
}

#[test]
fn groups_and_ideals() {
    let g = stdout(&["group", "", "--kind", "reduced"]);
    assert_eq!(g.trim(), "<a1; v | >");
    let e = stdout(&["ideals", TWO_BRIDGE, "--kind", "knot", "--k", "1"]);
    assert_eq!(e.trim(), "E1 = (-2*t+1)");
    let all = stdout(&["ideals", "O1+U2+O3+U1+O2+U3+"]);
    assert!(all.lines().next().unwrap().starts_with("E0 = (0)"), "{all}");
}
