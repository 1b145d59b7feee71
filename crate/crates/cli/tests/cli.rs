// Copyright 2026 The pathsum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn pathsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathsum"))
        .args(args)
        .env_remove("PATHSUM_MAX_EVAL_VARS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

/// The value after `key: ` in a text report.
fn field(text: &str, key: &str) -> String {
    let prefix = format!("{key}: ");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .to_string()
}

fn circuit(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn amp_examples() {
    let dir = TempDir::new().unwrap();
    let h = circuit(&dir, "h.qc", "qubits 1\nh 0\n");
    let out = pathsum(&["amp", "--circuit", s(&h), "--in", "0", "--out", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(field(&stdout(&out), "amplitude"), "1 * 2^(-1/2)");
    assert_eq!(field(&stdout(&out), "decimal"), "0.707106781186548");

    let x = circuit(&dir, "x.qc", "qubits 1\nx 0\n");
    let out = pathsum(&["amp", "--circuit", s(&x), "--in", "0", "--out", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(field(&stdout(&out), "amplitude"), "0");

    let bad = circuit(&dir, "bad.qc", "qubits 1\nh 0\ncnot 0 1\n");
    let out = pathsum(&["amp", "--circuit", s(&bad), "--in", "0", "--out", "0"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.qc:3:1:"));

    let out = pathsum(&["amp", "--circuit", s(&h), "--in", "01", "--out", "0"]);
    assert_eq!(code(&out), 2);
    let out = pathsum(&["amp", "--circuit", s(&h), "--in", "2", "--out", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn text_and_json_share_numerals() {
    let dir = TempDir::new().unwrap();
    let c = circuit(&dir, "c.qc", "qubits 2\nh 0\nh 1\nz 0 1\nh 0\nx 1\n");
    let args = ["amp", "--circuit", s(&c), "--in", "01", "--out", "10"];
    let text = stdout(&pathsum(&args));
    let value = json(&pathsum(&[&args[..], &["--json"]].concat()));
    assert_eq!(value["amplitude"], field(&text, "amplitude"));
    assert_eq!(value["decimal"], field(&text, "decimal"));

    let args = ["measure", "--circuit", s(&c), "--in", "00", "--qubit", "0"];
    let text = stdout(&pathsum(&args));
    let value = json(&pathsum(&[&args[..], &["--json"]].concat()));
    assert_eq!(value["probability"]["value"], field(&text, "probability"));
    assert_eq!(value["probability"]["exact"], field(&text, "exact"));
    assert_eq!(value["probability"]["decimal"], field(&text, "decimal"));
}

#[test]
fn measure_examples() {
    let dir = TempDir::new().unwrap();
    let h = circuit(&dir, "h.qc", "qubits 1\nh 0\n");
    let out = pathsum(&["measure", "--circuit", s(&h), "--in", "0", "--qubit", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(field(&stdout(&out), "probability"), "1/2");

    let x = circuit(&dir, "x.qc", "qubits 1\nx 0\n");
    let out = pathsum(&["measure", "--circuit", s(&x), "--in", "0", "--qubit", "0"]);
    assert_eq!(field(&stdout(&out), "probability"), "1");

    let out = pathsum(&["measure", "--circuit", s(&h), "--in", "0", "--qubit", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn eval_guard_comes_from_flag_then_env_then_default() {
    let dir = TempDir::new().unwrap();
    // the cubic phase survives rewriting with three variables
    let c = circuit(&dir, "c.qc", "qubits 3\nh 0\nh 1\nh 2\nz 0 1 2\nh 0\nh 1\nh 2\n");
    let args = ["amp", "--circuit", s(&c), "--in", "000", "--out", "000"];
    let run = |extra: &[&str], env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_pathsum"));
        cmd.args(args).args(extra).env_remove("PATHSUM_MAX_EVAL_VARS");
        if let Some(v) = env {
            cmd.env("PATHSUM_MAX_EVAL_VARS", v);
        }
        code(&cmd.output().unwrap())
    };
    assert_eq!(run(&[], None), 0);
    assert_eq!(run(&[], Some("2")), 3);
    assert_eq!(run(&["--max-eval-vars", "3"], Some("2")), 0);
    assert_eq!(run(&["--max-eval-vars", "2"], Some("24")), 3);
    let out = pathsum(&[&args[..], &["--json"]].concat());
    assert_eq!(json(&out)["amplitude"], "3 * 2^(-4/2)");
}

#[test]
fn hidden_shift_gen_examples() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("hs.qc");
    let out = pathsum(&["hidden-shift-gen", "--n", "6", "--shift", "101100", "--g", "0,1,2", "-o", s(&file), "--json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["ccz"], 2);
    let written = std::fs::read_to_string(&file).unwrap();
    assert_eq!(written.lines().filter(|l| l.split_whitespace().count() == 4).count(), 2);

    let out = pathsum(&["hidden-shift-gen", "--n", "2", "--shift", "10", "--g", ""]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("qubits 2\n"));

    for bad in [
        &["--n", "6", "--shift", "1011", "--g", "0,1,2"][..],
        &["--n", "5", "--shift", "10110", "--g", "0"],
        &["--n", "6", "--shift", "101100", "--g", "0,1,2", "--pi", "0,0,1"],
        &["--n", "6", "--shift", "101100", "--g", "0,x"],
        &["--n", "12", "--shift", "101100101100", "--g", "0,1,2,3"],
    ] {
        let out = pathsum(&[&["hidden-shift-gen"][..], bad].concat());
        assert_eq!(code(&out), 2, "{bad:?}");
    }
}

#[test]
fn gen_then_solve_round_trips() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (4, "0110", "0,1", None),
        (6, "111000", "0,1,2;1", Some("2,0,1")),
        (8, "10110001", "0,1,2;3;1,3", Some("3,2,1,0")),
        (10, "0100111010", "0,2,4;1,3;4", Some("1,2,3,4,0")),
    ];
    for (n, shift, g, pi) in cases {
        let file = dir.path().join(format!("hs{n}.qc"));
        let n = n.to_string();
        let mut args = vec!["hidden-shift-gen", "--n", &n, "--shift", shift, "--g", g, "-o", s(&file)];
        if let Some(pi) = pi {
            args.extend(["--pi", pi]);
        }
        assert_eq!(code(&pathsum(&args)), 0);
        let out = pathsum(&["hidden-shift-solve", "--circuit", s(&file)]);
        assert_eq!(code(&out), 0);
        assert_eq!(field(&stdout(&out), "shift"), shift);
    }
}

#[test]
fn solve_rejects_uncertain_measurements() {
    let dir = TempDir::new().unwrap();
    let h = circuit(&dir, "h.qc", "qubits 1\nh 0\n");
    assert_eq!(code(&pathsum(&["hidden-shift-solve", "--circuit", s(&h)])), 4);
}

#[test]
fn sixteen_qubits_with_eight_ccz_stay_within_the_step_budget() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("hs16.qc");
    let shift = "1011000111010010";
    let g = "0,1,2;3,4,5;5,6,7;0,3,6;1,4";
    let out = pathsum(&[
        "hidden-shift-gen", "--n", "16", "--shift", shift, "--g", g, "--pi", "7,6,5,4,3,2,1,0", "-o", s(&file), "--json",
    ]);
    assert_eq!(json(&out)["ccz"], 8);
    let out = pathsum(&["hidden-shift-solve", "--circuit", s(&file), "--json"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["shift"], shift);
    assert_eq!(report["residual_vars"], 0);
    assert!(report["rewrite_steps"].as_u64().unwrap() <= report["vars_total"].as_u64().unwrap());
}

#[test]
fn normalize_examples() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("hs.qc");
    let shift = "10110001";
    pathsum(&["hidden-shift-gen", "--n", "8", "--shift", shift, "--g", "0,1,2;3", "-o", s(&file)]);
    let out = pathsum(&["normalize", "--circuit", s(&file), "--in", "00000000", "--json"]);
    assert_eq!(code(&out), 0);
    let nf = &json(&out)["normal_form"];
    assert_eq!(nf["num_vars"], 0);
    let outputs: String = nf["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| if p.as_array().unwrap().is_empty() { '0' } else { '1' })
        .collect();
    assert_eq!(outputs, shift);

    let id = circuit(&dir, "id.qc", "qubits 3\n");
    let out = pathsum(&["normalize", "--circuit", s(&id)]);
    let nf: Value = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert_eq!(nf["num_vars"], 3);
    assert_eq!(nf["outputs"], nf["inputs"]);

    let args = ["normalize", "--circuit", s(&file), "--strategy", "random", "--seed", "9", "--trace"];
    let (a, b) = (stdout(&pathsum(&args)), stdout(&pathsum(&args)));
    assert_eq!(a, b);
    assert!(a.lines().skip(1).all(|l| l.starts_with("ELIM ") || l.starts_with("Z ") || l.starts_with("HH ")));

    let bad = circuit(&dir, "bad.qc", "qubits 2\nz 0 0\n");
    assert_eq!(code(&pathsum(&["normalize", "--circuit", s(&bad)])), 2);
}

#[test]
fn check_confluence_reports() {
    let out = pathsum(&["check-confluence", "--trials", "500", "--max-vars", "8", "--seed", "3", "--json"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["passed"], 500);
    assert_eq!(report["failed"], 0);
    assert_eq!(report["check"], "simple-equivalence");

    let args = ["check-confluence", "--trials", "40", "--max-vars", "12", "--seed", "4", "--strategies", "3"];
    let out = pathsum(&args);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert_eq!(field(&stdout(&out), "check"), "eval-only");
    assert_eq!(stdout(&out), stdout(&pathsum(&args)));

    assert_eq!(code(&pathsum(&["check-confluence", "--max-vars", "25"])), 2);
    assert_eq!(code(&pathsum(&["check-confluence", "--strategies", "0"])), 2);
}

#[test]
fn circuit_from_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_pathsum"))
        .args(["measure", "--circuit", "-", "--in", "00", "--qubit", "1"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"qubits 2\nx 0\nswap 0 1\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(field(&stdout(&out), "probability"), "1");
}
