//! End-to-end tests of the `spinor-kummer` binary.

use std::collections::BTreeMap;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_spinor-kummer");
const CURVE_G4: &str = "x^9+2x^3+x+3 over F5";
const POINT_G4: &str = r#"{"u": "x^4+4x^3+x^2+2x+3", "v": [4,2,3,0,1,1], "r": [1,1,1,3]}"#;
const PSI_G4: [u64; 16] = [1, 1, 1, 3, 3, 4, 2, 3, 4, 2, 0, 4, 1, 2, 1, 3];

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("SPINOR_KUMMER_THREADS").output().expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn coords_mod(v: &Value) -> Vec<u64> {
    v.as_array().expect("array").iter().map(|c| c.as_u64().expect("integer")).collect()
}

fn normalize(v: &[u64], p: u64) -> Vec<u64> {
    let lead = *v.iter().find(|&&c| c != 0).expect("nonzero vector");
    let inv = (1..p).find(|i| i * lead % p == 1).expect("invertible");
    v.iter().map(|c| c * inv % p).collect()
}

/// Evaluates monomial maps such as `{"x1^2*x3": 4}` at `x` modulo `p`.
fn eval_quartics(quartics: &[BTreeMap<String, u64>], x: &[u64], p: u64) -> Vec<u64> {
    quartics
        .iter()
        .map(|q| {
            q.iter().fold(0, |acc, (mono, c)| {
                let term = mono.split('*').fold(*c, |t, factor| {
                    let (var, exp) = factor.split_once('^').unwrap_or((factor, "1"));
                    let i: usize = var[1..].parse().expect("variable index");
                    let e: u32 = exp.parse().expect("exponent");
                    t * x[i - 1].pow(e) % p
                });
                (acc + term) % p
            })
        })
        .collect()
}

#[test]
fn embed_reproduces_the_genus_four_vector() {
    let doc = run_json(&["embed", "--curve", CURVE_G4, "--point", POINT_G4]);
    assert_eq!(coords_mod(&doc["coords"]), PSI_G4);
    assert_eq!(doc["curve"]["genus"], 4);
    assert_eq!(doc["curve"]["field"], "F5");
}

#[test]
fn mul_sixteen_matches_four_duplications() {
    let doc = run_json(&["mul", "--curve", CURVE_G4, "--point", POINT_G4, "--k", "16"]);
    let result = &doc["result"];
    assert_eq!(result["u"], "x^4 + 2x^3 + x^2 + 3x + 1");
    assert_eq!(result["v"], "x^5 + 3x^4 + 3x^3 + 2x^2 + 4x + 4");
    assert_eq!(result["r"], "4x^3 + 3x^2 + 2");
    let sixteen = run_json(&["embed", "--curve", CURVE_G4, "--point", &result.to_string()]);
    let polys = run_json(&["dup-polys", "--curve", CURVE_G4]);
    let quartics: Vec<BTreeMap<String, u64>> =
        serde_json::from_value(polys["quartics"].clone()).expect("monomial maps");
    assert_eq!(quartics.len(), 16);
    let mut x = PSI_G4.to_vec();
    for _ in 0..4 {
        x = eval_quartics(&quartics, &x, 5);
    }
    assert_eq!(normalize(&x, 5), normalize(&coords_mod(&sixteen["coords"]), 5));
}

#[test]
fn dup_polys_are_grevlex_ordered() {
    let doc = run_json(&["dup-polys", "--curve", CURVE_G4, "--labeling", "0,1,2,3,4,7,8,5,6"]);
    assert_eq!(doc["ordering"], "grevlex");
    let first: Vec<(&String, &Value)> = doc["quartics"][0].as_object().expect("map").iter().take(5).collect();
    let keys: Vec<&str> = first.iter().map(|(k, _)| k.as_str()).collect();
    assert_eq!(keys, ["x1^3*x2", "x1^2*x2^2", "x1*x2^3", "x2^4", "x1^3*x3"]);
    let coeffs: Vec<u64> = first.iter().map(|(_, c)| c.as_u64().expect("integer")).collect();
    assert_eq!(coeffs, [4, 2, 1, 3, 3]);
}

#[test]
fn verify_is_deterministic_and_passes() {
    let args = ["verify", "--seed", "0", "--g", "2", "--p", "13", "--points", "30"];
    let a = run(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = Command::new(BIN).args(args).env("SPINOR_KUMMER_THREADS", "1").output().expect("binary runs");
    assert_eq!(a.stdout, b.stdout, "output depends on the thread count");
    let doc: Value = serde_json::from_slice(&a.stdout).expect("JSON");
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["checks"].as_array().expect("checks").len(), 10);
}

#[test]
fn group_law_round_trip_over_q() {
    let curve = "g=2; f=x^5-x+1; field=Q";
    let sum = run_json(&["add", "--curve", curve, "--point", "(0, 1)", "--point", "(1, 1)"]);
    assert_eq!(sum["result"]["degree"], 2);
    let back = run_json(&["add", "--curve", curve, "--point", &sum["result"].to_string(), "--point", "(1, -1)"]);
    assert_eq!(back["result"]["u"], "x");
    assert_eq!(back["result"]["r"], "1");
    let doubled = run_json(&["double", "--curve", curve, "--point", "(0, 1)"]);
    let twice = run_json(&["mul", "--curve", curve, "--point", "(0, 1)", "-k", "2"]);
    assert_eq!(doubled["result"], twice["result"]);
}

#[test]
fn heights_report_local_terms_on_split_curves() {
    // y^2 = x^3 - x, split over Q; the point (-1, 0) is 2-torsion.
    let doc = run_json(&["heights", "--curve", "x^3-x", "--point", "(-1, 0)", "--places", "all-bad"]);
    assert_eq!(doc["canonical"]["estimate"], 0.0);
    let places: Vec<&Value> = doc["local"].as_array().expect("local terms").iter().map(|l| &l["place"]).collect();
    assert_eq!(places, [&Value::from(2), &Value::from("inf")]);
    let generic = run_json(&["heights", "--curve", "x^5+3x+1", "--point", "(0, 1)", "--n-max", "3"]);
    assert_eq!(generic["canonical"]["iterations"], 3);
    assert_eq!(generic["dagger_vs_naive"]["dagger_le_naive"], true);
}

#[test]
fn enumeration_and_membership() {
    let doc = run_json(&["enumerate", "--curve", "x^3+x+1 over F5"]);
    assert_eq!(doc["count"], 9);
    let image = doc["points"][1]["coords"].to_string();
    let verdict = run_json(&["membership", "--curve", "x^3+x+1 over F5", "--coords", &image]);
    assert_eq!(verdict["on_kummer"], true);
    assert_eq!(verdict["lifts"], true);
}

#[test]
fn kummer_equation_is_normalized() {
    let doc = run_json(&["kummer-eq", "--curve", "x^5+3x+1 over Q"]);
    assert_eq!(doc["quartic"]["x3^4"], "1");
}

#[test]
fn jobs_match_direct_invocations() {
    let dir = std::env::temp_dir().join(format!("spinor-kummer-job-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let job = dir.join("job.json");
    let point: Value = serde_json::from_str(POINT_G4).expect("JSON");
    let spec = serde_json::json!({"subcommand": "mul", "curve": CURVE_G4, "point": point, "options": {"k": 16}});
    std::fs::write(&job, spec.to_string()).expect("write job");
    let via_job = run(&["job", job.to_str().expect("utf-8 path")]);
    let direct = run(&["mul", "--curve", CURVE_G4, "--point", POINT_G4, "--k", "16"]);
    assert!(via_job.status.success(), "{}", String::from_utf8_lossy(&via_job.stderr));
    assert_eq!(via_job.stdout, direct.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn table_output() {
    let out = run(&["embed", "--curve", CURVE_G4, "--point", POINT_G4, "--table"]);
    let text = String::from_utf8(out.stdout).expect("utf-8");
    assert!(text.lines().any(|l| l.starts_with("coords") && l.ends_with("[1 : 1 : 1 : 3 : 3 : 4 : 2 : 3 : 4 : 2 : 0 : 4 : 1 : 2 : 1 : 3]")));
}

fn exit_and_kind(args: &[&str]) -> (i32, String) {
    let out = run(args);
    let diag: Value = serde_json::from_slice(&out.stderr).expect("JSON diagnostic on stderr");
    (out.status.code().expect("exit code"), diag["error"]["kind"].as_str().expect("kind").to_string())
}

#[test]
fn exit_codes_partition_errors() {
    assert_eq!(exit_and_kind(&["embed", "--curve", "x^5+3x+1 over Q", "--point", "{oops"]), (2, "schema".into()));
    assert_eq!(exit_and_kind(&["embed", "--curve", "x^5+3y", "--point", "0"]), (2, "schema".into()));
    assert_eq!(exit_and_kind(&["frobnicate"]), (2, "usage".into()));
    assert_eq!(exit_and_kind(&["add", "--curve", "x^3+x+1", "--point", "0"]), (2, "schema".into()));
    assert_eq!(exit_and_kind(&["embed", "--curve", "x^4+1", "--point", "0"]), (3, "precondition".into()));
    assert_eq!(exit_and_kind(&["embed", "--curve", "x^3 over Q", "--point", "0"]), (3, "precondition".into()));
    assert_eq!(exit_and_kind(&["embed", "--curve", "x^5+3x+1 over F4", "--point", "0"]), (3, "precondition".into()));
    assert_eq!(exit_and_kind(&["embed", "--curve", "x^5+3x+1", "--point", "(1, 1)"]), (3, "precondition".into()));
    assert_eq!(exit_and_kind(&["heights", "--curve", CURVE_G4, "--point", POINT_G4]), (3, "precondition".into()));
    assert_eq!(exit_and_kind(&["kummer-eq", "--curve", "x^3+x+1"]), (3, "precondition".into()));
    assert_eq!(exit_and_kind(&["job", "/nonexistent/job.json"]), (4, "io".into()));
}
