use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_mrlift"));
    c.env_remove("MRLIFT_REPORT_DIR");
    c
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(format!("{name}.json"))
}

fn run(args: &[&str]) -> (Output, Value) {
    let out = bin().args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out, v)
}

fn lift(name: &str) -> (Output, Value) {
    let p = data(name);
    run(&["lift", "--input", p.to_str().unwrap()])
}

fn ints(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn g2_report() {
    let (out, v) = run(&["root-datum", "--type", "G2", "--isogeny", "sc", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let p = &v["payload"];
    assert_eq!(p["weyl_order"], 12);
    assert_eq!(p["primes"]["effective_min_p"], 73);
    assert_eq!(p["primes"]["improved_constant"], 72);
    assert_eq!(ints(&p["primes"]["bad_primes_good"]), vec![2, 3]);
    assert_eq!(p["bala_carter"].as_array().unwrap().len(), 5);
}

#[test]
fn a1_simply_connected() {
    let (_, v) = run(&["root-datum", "--type", "A1", "--isogeny", "sc"]);
    assert_eq!(ints(&v["payload"]["primes"]["bad_primes_pretty_good"]), vec![2]);
    let (_, v) = run(&["root-datum", "--type", "A1", "--isogeny", "ad"]);
    assert_eq!(ints(&v["payload"]["primes"]["bad_primes_pretty_good"]), vec![2]);
    assert_eq!(ints(&v["payload"]["primes"]["pi1_torsion_primes"]), vec![2]);
}

#[test]
fn torus() {
    let (out, v) = run(&["root-datum", "--type", "T3"]);
    assert_eq!(out.status.code(), Some(0));
    let p = &v["payload"]["primes"];
    for key in [
        "bad_primes_good",
        "bad_primes_pretty_good",
        "center_nonsmooth_primes",
        "pi1_torsion_primes",
    ] {
        assert!(p[key].as_array().unwrap().is_empty(), "{key}");
    }
    assert_eq!(p["cG"], 1);
}

#[test]
fn general_linear_preset() {
    let (out, v) = run(&["root-datum", "--type", "GLn(3)", "--isogeny", "preset"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["payload"]["weyl_order"], 6);
    assert!(v["payload"]["primes"]["bad_primes_pretty_good"]
        .as_array()
        .unwrap()
        .is_empty());
    let (out, _) = run(&["root-datum", "--type", "GLn(3)", "--isogeny", "sc"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_carry_a_position() {
    let (out, v) = run(&["root-datum", "--type", "A2xQ3"]);
    assert_eq!(out.status.code(), Some(1));
    let msg = v["payload"]["error"]["message"].as_str().unwrap();
    assert!(msg.contains("position 3"), "{msg}");
    let (out, _) = run(&["root-datum", "--type", "A9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn q4_fixture_lifts() {
    let (out, v) = lift("q4");
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let p = &v["payload"];
    assert_eq!(p["verification"]["all_passed"], true);
    assert_eq!(p["lift"]["n"], serde_json::json!([[4, 0], [0, 1]]));
    assert_eq!(p["lift"]["u"], serde_json::json!([[1, 1], [0, 1]]));
    assert_eq!(p["verification"]["centralizer_rank_lifted"], 2);
    assert_eq!(p["good_for_type"]["method"], "sufficient condition via signature bound");
}

#[test]
fn extension_field_input() {
    let (out, v) = lift("f25_pair");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["payload"]["ring"]["e"], 2);
    assert_eq!(v["payload"]["lift"]["n"][0][1], serde_json::json!([1, 0]));
}

#[test]
fn order_divisible_by_p() {
    let (out, v) = lift("order_divisible_by_p");
    assert_eq!(out.status.code(), Some(1));
    let msg = v["payload"]["error"]["message"].as_str().unwrap();
    assert!(msg.contains("group order divisible by p"), "{msg}");
}

#[test]
fn broken_frobenius_relation() {
    let (out, v) = lift("bad_relation");
    assert_eq!(out.status.code(), Some(1));
    let msg = v["payload"]["error"]["message"].as_str().unwrap();
    assert!(msg.contains("phi*sigma*phi^-1 = sigma^q"), "{msg}");
}

#[test]
fn hypothesis_failures_exit_2() {
    let (out, v) = lift("c3_inversion");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(v["payload"]["error"]["hypothesis"], "sigma_action_order");
    assert_eq!(v["payload"]["decomposition"]["group_order"], 3);
}

#[test]
fn schema_and_usage_errors_exit_1() {
    let (out, v) = lift("unknown_field");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(v["payload"]["error"]["kind"], "schema");
    let (out, _) = run(&["lift"]);
    assert_eq!(out.status.code(), Some(1));
    let q4 = data("q4");
    let (out, v) = run(&["lift", "--input", q4.to_str().unwrap(), "--z", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(v["payload"]["error"]["message"].as_str().unwrap().contains("invalid z"));
}

#[test]
fn output_is_byte_deterministic() {
    let a = lift("q4").0.stdout;
    let b = lift("q4").0.stdout;
    assert_eq!(a, b);
    let g1 = run(&["root-datum", "--type", "B3"]).0.stdout;
    let g2 = run(&["root-datum", "--type", "B3"]).0.stdout;
    assert_eq!(g1, g2);
}

#[test]
fn batch_inputs_keep_their_order() {
    let (q4, f25) = (data("q4"), data("f25_pair"));
    let out = bin()
        .args([
            "lift",
            "--input",
            q4.to_str().unwrap(),
            "--input",
            f25.to_str().unwrap(),
            "--input",
            q4.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let single_q4 = lift("q4").0.stdout;
    let single_f25 = lift("f25_pair").0.stdout;
    let expected = [single_q4.clone(), single_f25, single_q4].concat();
    assert_eq!(out.stdout, expected);
}

#[test]
fn report_directory() {
    let dir = tempfile::tempdir().unwrap();
    let (q4, bad) = (data("q4"), data("c3_inversion"));
    let out = bin()
        .env("MRLIFT_REPORT_DIR", dir.path())
        .args([
            "lift",
            "--input",
            q4.to_str().unwrap(),
            "--input",
            bad.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let written = std::fs::read(dir.path().join("q4.json")).unwrap();
    assert_eq!(written, lift("q4").0.stdout);
    assert!(dir.path().join("c3_inversion.json").exists());
}

#[test]
fn text_mode() {
    let out = bin()
        .args(["lift", "--input", data("q4").to_str().unwrap(), "--text"])
        .output()
        .unwrap();
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("[PASS] frobenius_relations"));
    let out = bin().args(["root-datum", "--type", "G2", "--text"]).output().unwrap();
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("effective min p  73"));
}
