use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};
use tate_core::input::{InputDoc, Source};

fn tate(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tate"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = tate(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn cells(s: &str) -> Vec<Vec<String>> {
    s.lines().map(|l| l.split_whitespace().map(String::from).collect()).collect()
}

const RANK_THREE: &str = r#"{"kind":"catalog","name":"rank_three_bundle"}"#;

#[test]
fn structure_sheaf_table() {
    let t = cells(&ok(&["table", "--ring", "1,1", "--lo=-2,-2", "--hi=2,2"], None));
    assert_eq!(t.len(), 5);
    assert_eq!(t[2][2], "1");
    assert_eq!(t[0][4], "9");
    assert_eq!(t[4][0], "h^2");
}

#[test]
fn rank_three_bundle_table() {
    let t = cells(&ok(&["table", "-", "--lo=-3,-3", "--hi=3,3"], Some(RANK_THREE)));
    assert_eq!(t[0], ["28h", "18h", "8h", "2", "12", "22", "32"]);
    assert_eq!(t[3], ["4h", "3h", "2h", "h", "0", "1", "2"]);
    assert_eq!(t[6], ["20h^2", "12h^2", "4h^2", "4h", "12h", "20h", "28h"]);
}

#[test]
fn table_from_the_beilinson_window_agrees() {
    let a = ok(&["table", "-", "--lo=-3,-3", "--hi=3,3"], Some(RANK_THREE));
    let b = ok(&["table", "-", "--from", "window", "--lo=-3,-3", "--hi=3,3"], Some(RANK_THREE));
    assert_eq!(a, b);
}

#[test]
fn empty_module_gives_zero_table() {
    let m = r#"{"kind":"module","ring":{"n":[1,1]},"generators":[]}"#;
    let t = cells(&ok(&["table", "-", "--lo=-1,-1", "--hi=1,1"], Some(m)));
    assert!(t.iter().flatten().all(|c| c == "0"));
}

#[test]
fn beilinson_monad_of_a_line_bundle() {
    let m = r#"{"kind":"line_bundles","ring":{"n":[1,1]},"twists":[[3,-2]]}"#;
    assert_eq!(ok(&["beilinson", "-"], Some(m)).trim(), "0 → O^6(-1,-1) → O^3(-1,0) ⊕ O^8(0,-1) → O^4 → 0");
}

#[test]
fn split_lists_summands() {
    let m = r#"{"kind":"line_bundles","ring":{"n":[1,1]},"twists":[[0,0],[1,1],[1,1]]}"#;
    assert_eq!(ok(&["split", "-"], Some(m)).trim(), "split: O(1,1)^2 ⊕ O(0,0)");
    let v: Value = serde_json::from_str(&ok(&["split", "-", "--json"], Some(m))).unwrap();
    assert_eq!(v["outcome"], "split");
    assert!(ok(&["split", "-"], Some(RANK_THREE)).starts_with("not split"));
}

#[test]
fn corner_of_the_rank_three_bundle() {
    let out = ok(&["corner", "-", "--at", "1,1"], Some(RANK_THREE));
    let rows: Vec<Vec<String>> = cells(&out).into_iter().skip(1).collect();
    let row = |r: &str| rows.iter().find(|l| l[0] == r).unwrap()[2..].iter().filter(|c| *c != ".").cloned().collect::<Vec<_>>();
    assert_eq!(row("3"), ["36", "15", "4"]);
    assert_eq!(row("2"), ["10", "8", "6", "4", "1"]);
    assert_eq!(row("0"), ["4", "16", "39", "76"]);
}

#[test]
fn universal_subbundle_window() {
    let out = ok(&["window", "-", "--lo=-8", "--hi=5"], Some(r#"{"kind":"catalog","name":"p3_subbundle"}"#));
    let rows = cells(&out);
    let row = |r: &str| rows.iter().find(|l| l[0] == r).unwrap()[2..].to_vec();
    // columns -7..=6; the printed table covers every position of the window
    assert!(row("3").join(" ").contains("120 70 36 15 4"));
    assert!(row("0").join(" ").contains("6 20 45 84 140"));
}

#[test]
fn strand_of_the_structure_sheaf() {
    let out = ok(&["strand", "--ring", "1,1", "--at=0,0", "--j", "1", "--lo=-3,-3", "--hi=3,3"], None);
    assert!(out.contains("strand through (0,0)"));
    let v: Value = serde_json::from_str(&ok(&["strand", "--ring", "1,1", "--at=0,0", "--j", "1", "--json"], None)).unwrap();
    assert_eq!(v["ring"]["n"], serde_json::json!([1]));
}

#[test]
fn check_bundle() {
    assert_eq!(ok(&["check-bundle", "-"], Some(RANK_THREE)).trim(), "vector bundle: yes");
    // the structure sheaf of a point of P¹ × P¹ is not a vector bundle
    let point = r#"{"kind":"catalog","name":"point"}"#;
    assert_eq!(ok(&["check-bundle", "-"], Some(point)).trim(), "vector bundle: test failed");
}

#[test]
fn table_json_round_trips() {
    let first = ok(&["table", "-", "--json", "--lo=-2,-2", "--hi=2,2"], Some(RANK_THREE));
    let v: Value = serde_json::from_str(&first).unwrap();
    let Source::Table(_, t) = InputDoc::parse(&first).unwrap().resolve().unwrap() else { panic!("not a table") };
    assert_eq!(t.entries.len(), 25);
    let second = ok(&["table", "-", "--json"], Some(&first));
    assert_eq!(serde_json::from_str::<Value>(&second).unwrap(), v);
}

#[test]
fn window_json_round_trips() {
    let first = ok(&["window", "-", "--json", "--lo=-2,-2", "--hi=1,1"], Some(RANK_THREE));
    let doc = InputDoc::parse(&first).unwrap();
    assert_eq!(serde_json::to_value(&doc).unwrap(), serde_json::from_str::<Value>(&first).unwrap());
    let Source::Window(w) = doc.resolve().unwrap() else { panic!("not a window") };
    let again = tate_core::input::window_doc(&w).unwrap();
    assert_eq!(again, serde_json::from_str::<Value>(&first).unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(tate(&["table", "-"], Some("{not json")).status.code(), Some(2));
    assert_eq!(
        tate(&["table", "-"], Some(r#"{"kind":"line_bundles","ring":{"n":[1,1]},"twists":[[1]]}"#)).status.code(),
        Some(2)
    );
    assert_eq!(tate(&["table", "--lo", "x"], None).status.code(), Some(2));
    assert_eq!(tate(&["table", "/nonexistent/input.json"], None).status.code(), Some(2));
    let out = tate(&["window", "--ring", "1,1", "--budget", "3"], None);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}
