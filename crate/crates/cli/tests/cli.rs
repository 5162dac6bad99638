use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn twistkh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistkh")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn json_of(args: &[&str], name: &str) -> (Output, Value, String) {
    let path = scratch(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--json", &p]);
    let out = twistkh(&full);
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    let v = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out, v, text)
}

#[test]
fn trefoil_untwisted_and_twisted_agree() {
    let (out, u, _) = json_of(&["compute", &fixture("trefoil.pd"), "--mode", "untwisted"], "u.json");
    assert!(out.status.success());
    let (_, t, _) = json_of(&["compute", &fixture("trefoil.pd")], "t.json");
    assert_eq!(u["total"], 3);
    assert_eq!(u["delta_dims"], t["delta_dims"]);
    assert_eq!(u["field"], "gf2");
    assert_eq!(t["field"], "gf2k:5");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("total: 3"), "{stdout}");
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["verify", &fixture("5_2.pd"), "--seed", "11", "--trials", "4"];
    let (_, _, a) = json_of(&args, "a.json");
    let (_, _, b) = json_of(&args, "b.json");
    assert!(!a.is_empty());
    assert_eq!(a, b);
    assert!(!a.contains("elapsed"));
}

#[test]
fn seed_changes_the_digest() {
    let (_, a, _) = json_of(&["verify", &fixture("hopf.pd"), "--suite", "invariance", "--seed", "1"], "s1.json");
    let (_, b, _) = json_of(&["verify", &fixture("hopf.pd"), "--suite", "invariance", "--seed", "2"], "s2.json");
    assert_ne!(a["input_digest"], b["input_digest"]);
}

#[test]
fn spectral_on_a_non_alternating_knot() {
    let (out, v, _) = json_of(&["spectral", &fixture("8_19.pd")], "819.json");
    assert!(out.status.success());
    assert_eq!(v["trees"].as_array().unwrap().len(), 45);
    assert!(!v["d2"].as_array().unwrap().is_empty());
    assert_eq!(v["total"], 5);
}

#[test]
fn spanning_trees_count_tait_trees() {
    let (_, v, _) = json_of(&["spanning-trees", &fixture("4_1.pd")], "st.json");
    assert_eq!(v["trees"].as_array().unwrap().len(), 5);
}

#[test]
fn weight_sources() {
    let (out, v, _) = json_of(&["compute", &fixture("hopf.pd"), "--weights", &fixture("hopf_weights.txt")], "w.json");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(v["field"], "gf2k:4");
    assert_eq!(v["weights"]["2"], "0x2");
    assert_eq!(v["weights"]["3"], "0x5");
    let (_, r, _) = json_of(&["compute", &fixture("trefoil.pd"), "--weights", "roberts"], "r.json");
    assert_eq!(r["total"], 3);
    let (_, f, _) = json_of(&["compute", &fixture("hopf_marked.pd")], "f.json");
    assert_eq!(f["field"], "ratfn(w1,w2,w3)");
    assert_eq!(f["weights"]["3"], "w1");
}

#[test]
fn injected_fault_exits_one_with_reproduction() {
    let (out, v, _) =
        json_of(&["verify", &fixture("trefoil.pd"), "--suite", "spectral", "--inject-d2-fault", "--seed", "5"], "fault.json");
    assert_eq!(out.status.code(), Some(1));
    let failed: Vec<&Value> = v["verdicts"].as_array().unwrap().iter().filter(|x| x["passed"] == false).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["check"], "d2_squared");
    assert_eq!(v["reproduction"]["seed"], 5);
    assert_eq!(v["reproduction"]["pd"], "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
}

#[test]
fn input_errors_exit_two() {
    let bad = scratch("bad.pd");
    std::fs::write(&bad, "X(1,4,2,5)\nX(3,6;4,1)\n").unwrap();
    let out = twistkh(&["compute", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2, column 6"), "{err}");

    let out = twistkh(&["compute", &fixture("does_not_exist.pd")]);
    assert_eq!(out.status.code(), Some(2));

    let out = twistkh(&["compute", &fixture("trefoil.pd"), "--field", "gf3"]);
    assert_eq!(out.status.code(), Some(2));

    // zero weights violate genericity
    let out = twistkh(&["spectral", &fixture("hopf.pd"), "--weights", "zero", "--field", "gf2k:4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("edge"), "{err}");
}

#[test]
fn every_fixture_verifies() {
    for name in ["unknot", "kink", "hopf", "trefoil", "4_1", "5_1", "5_2", "6_1", "hopf_sum", "8_19"] {
        let out = twistkh(&["verify", &fixture(&format!("{name}.pd")), "--trials", "3"]);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stdout));
    }
}
