mod common;

use std::process::Command;

use common::{cli, corpus, corpus_files};
use serde_json::Value;

fn json(out: &str) -> Value {
    serde_json::from_str(out).unwrap_or_else(|e| panic!("bad json ({e}): {out}"))
}

#[test]
fn dp_check_koblitz() {
    let path = corpus("koblitz.inst");
    let (code, out, _) = cli(&["dp-check", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["certificate"]["kind"], "remainder");
    assert_eq!(v["timings"], Value::Null);
}

#[test]
fn length_koblitz_char0() {
    let path = corpus("koblitz_char0.inst");
    for order in ["degrevlex", "lex"] {
        let (code, out, _) = cli(&["length", "--file", path.to_str().unwrap(), "--order", order]);
        assert_eq!(code, 0);
        assert_eq!(json(&out)["length"], 36);
    }
}

#[test]
fn gen_hypersurface_q4() {
    let (code, out, _) = cli(&["gen", "--family", "hypersurface-q", "--p", "2", "--r", "2"]);
    assert_eq!(code, 0);
    let inst: pdlift_core::instance::Instance = out.parse().unwrap();
    assert_eq!(inst.nvars, 12);
    assert_eq!(inst.context.unwrap().q(), 4);
}

#[test]
fn gen_output_round_trips_through_every_checker() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 5] = [
        &["--family", "hypersurface-q", "--p", "2", "--r", "1"],
        &["--family", "quadratic", "--p", "3"],
        &["--family", "direct-system", "--p", "2", "--n", "2"],
        &["--family", "direct-system", "--p", "3", "--n", "1"],
        &["--family", "gorenstein-witness", "--p", "2", "--r", "1"],
    ];
    for (k, case) in cases.iter().enumerate() {
        let mut args = vec!["gen"];
        args.extend_from_slice(case);
        let (code, text, err) = cli(&args);
        assert_eq!(code, 0, "{case:?}: {err}");
        let path = dir.path().join(format!("gen{k}.inst"));
        std::fs::write(&path, &text).unwrap();
        let p = path.to_str().unwrap();
        for cmd in [
            vec!["dp-check", "--file", p],
            vec!["length", "--file", p],
            vec!["link", "--file", p],
        ] {
            let (code, _, err) = cli(&cmd);
            assert_eq!(code, 0, "{cmd:?} on {case:?}: {err}");
        }
        // stage 1 of the direct system has no context and no nonzero generator
        if !text.lines().any(|l| l.starts_with("context")) {
            continue;
        }
        let (code, out, err) = cli(&["lift-check", "--file", p]);
        assert!(code == 0 || code == 2, "lift-check on {case:?}: exit {code}, {err}");
        assert!(json(&out)["verdict"].is_string());
    }
}

#[test]
fn identical_invocations_give_identical_json() {
    let files: Vec<String> = corpus_files()
        .into_iter()
        .map(|p| p.to_str().unwrap().to_string())
        .collect();
    let small: Vec<&str> = files
        .iter()
        .map(String::as_str)
        .filter(|f| !f.contains("hypersurface_q") && !f.contains("char0"))
        .collect();
    let mut args = vec!["dp-check"];
    for f in &small {
        args.extend_from_slice(&["--file", f]);
    }
    let first = cli(&args);
    let second = cli(&args);
    assert_eq!(first, second);
    let mut parallel = args.clone();
    parallel.extend_from_slice(&["--jobs", "3"]);
    assert_eq!(cli(&parallel).1, first.1);
    assert_eq!(json(&first.1).as_array().unwrap().len(), small.len());

    let koblitz = corpus("koblitz.inst");
    let lift = ["lift-check", "--file", koblitz.to_str().unwrap(), "--method", "certificate"];
    assert_eq!(cli(&lift), cli(&lift));
}

#[test]
fn lift_check_report_schema() {
    let path = corpus("hypersurface_q_p2_r2.inst");
    let (code, out, _) = cli(&["lift-check", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "obstructed");
    assert_eq!(v["method"], "certificate");
    assert_eq!(v["context"]["p"], 2);
    assert_eq!(v["context"]["r"], 2);
    assert_eq!(v["context"]["e"], 3);
    assert_eq!(v["certificate"]["kind"], "alpha");
    assert_eq!(v["certificate"]["alpha"], "1");
    assert!(v["certificate"]["target_monomial"].is_string());

    let koblitz = corpus("koblitz.inst");
    let (_, out, _) = cli(&["lift-check", "--file", koblitz.to_str().unwrap(), "--method", "membership", "--timings"]);
    let v = json(&out);
    assert_eq!(v["certificate"]["kind"], "remainder");
    assert!(v["timings"]["total_ms"].is_number());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let weak = dir.path().join("weak.inst");
    std::fs::write(&weak, "domain fp:2\nvars 3\nbounds 2 2 2\ncontext 2 1 1\ngen x1 + x2*x3\n").unwrap();
    let (code, out, _) = cli(&["lift-check", "--file", weak.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["verdict"], "hypothesis-not-met");

    let big = corpus("hypersurface_q_p2_r2.inst");
    let (code, _, err) = cli(&["dp-check", "--file", big.to_str().unwrap()]);
    assert_eq!(code, 3, "{err}");
    let koblitz = corpus("koblitz.inst");
    let (code, _, _) = cli(&["lift-check", "--file", koblitz.to_str().unwrap(), "--method", "membership", "--cap", "8"]);
    assert_eq!(code, 3);

    assert_eq!(cli(&["frobnicate"]).0, 64);
    assert_eq!(cli(&["dp-check"]).0, 64);
    assert_eq!(cli(&["gen", "--family", "direct-system", "--p", "2"]).0, 64);
    let bad = dir.path().join("bad.inst");
    std::fs::write(&bad, "domain fp:2\nvars 2\ngen x7\n").unwrap();
    let (code, _, err) = cli(&["dp-check", "--file", bad.to_str().unwrap()]);
    assert_eq!(code, 64);
    assert!(err.contains("line 3"), "{err}");
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn wp_command() {
    let (code, out, _) = cli(&["wp", "--poly", "x1*x2 + x3*x4", "--vars", "4", "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "x1*x2*x3*x4");
    let (code, out, _) = cli(&["wp", "--poly", "x1 + x2", "--vars", "2", "--p", "3", "--domain", "q", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["wp"], "1/2*x1^2*x2 + 1/2*x1*x2^2");
}

#[test]
fn link_and_verify_koblitz() {
    let path = corpus("koblitz.inst");
    let (code, out, _) = cli(&["link", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["dim_c0"], 28);
    assert_eq!(v["dim_a0"], 36);
    assert_eq!(v["socle_dim"], 1);
    assert_eq!(v["gorenstein"], true);

    let (code, out, _) = cli(&["verify-koblitz"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["dp"], false);
    assert_eq!(v["obstructed"], true);
    assert_eq!(v["len_char2"]["lex"], 36);
    assert_eq!(v["len_char0"]["degrevlex"], 36);
    assert_eq!(v["passed"], true);
}

#[test]
fn binary_propagates_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pdlift");
    let koblitz = corpus("koblitz.inst");
    let out = Command::new(bin)
        .args(["dp-check", "--file", koblitz.to_str().unwrap(), "--format", "text"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("does not exist"));
    let out = Command::new(bin).arg("bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(64));
}
