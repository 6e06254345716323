use std::process::{Command, Output};

fn heisrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heisrep")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn heis_arithmetic() {
    let o = heisrep(&["heis", "mul", "a1 b1", "a1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a1^2 b1 s^-2");
    assert_eq!(stdout(&heisrep(&["heis", "comm", "a1", "b1"])), "s^2");
    assert_eq!(stdout(&heisrep(&["heis", "pow", "a1", "-3"])), "a1^-3");
    assert_eq!(stdout(&heisrep(&["--mod-sigma", "2", "heis", "reduce", "s^3"])), "s");
}

#[test]
fn json_output_is_valid() {
    let o = heisrep(&["--json", "heis", "inv", "a1 b1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["element"], "a1^-1 b1^-1 s^-2");
}

#[test]
fn parse_errors_exit_two() {
    let o = heisrep(&["heis", "mul", "a1 q2", "a1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn pairing_of_bundled_fixtures() {
    let o = heisrep(&["pair", "--file", "empty.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0");
    let o = heisrep(&["pair", "--file", "kernel_8pt.json"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "0".to_string()));
}

#[test]
fn kernel_words() {
    let comm = heisrep(&["rep", "kernel", "--catalog", "kernel_pair_k2.json", "--word", "Talpha Tbeta Talpha^-1 Tbeta^-1"]);
    assert_eq!(comm.status.code(), Some(0));
    assert!(stdout(&comm).contains("identity on all basis vectors"));
    let single = heisrep(&["rep", "kernel", "--catalog", "kernel_pair_k1.json", "--word", "Talpha"]);
    assert_eq!(single.status.code(), Some(1));
}

#[test]
fn verify_single_check() {
    let o = heisrep(&["--json", "verify", "--check", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"][0]["id"], 2);
}

#[test]
fn burau_and_bridge() {
    let o = heisrep(&["burau", "--k", "3", "--word", "s1 s2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
    let b = heisrep(&["bridge", "check", "--region", "V_2g"]);
    assert_eq!(b.status.code(), Some(0));
    assert!(stdout(&b).ends_with("pass"));
    assert_eq!(heisrep(&["burau", "--k", "3", "--word", "s1", "--gassner"]).status.code(), Some(2));
}

#[test]
fn oversized_search_is_refused() {
    let o = heisrep(&["search", "--max-k", "8", "--exponent-bound", "20", "--limit", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("refused"));
}

#[test]
fn fixtures_are_listed() {
    let o = heisrep(&["fixtures"]);
    assert!(stdout(&o).lines().any(|l| l == "kernel_8pt.json"));
}
