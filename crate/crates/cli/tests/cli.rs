use std::process::{Command, Output};

use serde_json::Value;
use siegel_euler::motive::VirtualMotive;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_siegel-euler"))
        .args(args)
        .env_remove("SIEGEL_EULER_FORMS_TABLE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim().to_string()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    (serde_json::from_str(&stdout(&out)).expect("JSON output"), out.status.code().unwrap())
}

#[test]
fn points_at_prime_powers() {
    let out = run(&["points", "--genus", "3", "--q", "8"]);
    assert_eq!(stdout(&out), "299521");
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["points", "--genus", "2", "--prime", "2", "--power", "1"]);
    assert_eq!(stdout(&out), "12");
    let (doc, code) = json(&["points", "--genus", "5", "--q", "2"]);
    assert_eq!((doc["points"].to_string().as_str(), code), ("73452", 0));
}

#[test]
fn non_prime_power_is_a_domain_error() {
    let out = run(&["points", "--genus", "2", "--q", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q = 6"));
}

#[test]
fn euler_c_genus_two_trivial() {
    let out = run(&["euler-c", "--genus", "2", "--weight", "0,0"]);
    assert_eq!(stdout(&out), "L^3 + L^2\nresidue: none");
    let (doc, code) = json(&["euler-c", "--genus", "2", "--weight", "0,0"]);
    assert_eq!(code, 0);
    assert_eq!(doc["residue"], Value::Null);
    let motive = VirtualMotive::from_json(&doc["motive"]).unwrap();
    assert_eq!(motive, VirtualMotive::lefschetz(3) + VirtualMotive::lefschetz(2));
}

#[test]
fn euler_output_round_trips_through_motive_schema() {
    for args in [
        ["euler-c", "--genus", "2", "--weight", "10,10"],
        ["euler-ih", "--genus", "2", "--weight", "10,10"],
        ["euler-c", "--genus", "3", "--weight", "4,2,2"],
    ] {
        let (doc, code) = json(&args);
        assert_eq!(code, 0);
        let motive = VirtualMotive::from_json(&doc["motive"]).unwrap();
        assert_eq!(motive.to_string(), doc["display"].as_str().unwrap());
        assert_eq!(motive.to_json(), doc["motive"]);
    }
    let (doc, _) = json(&["euler-c", "--genus", "2", "--weight", "10,10"]);
    assert_eq!(doc["residue"]["symbol"], "S[13,13]");
    assert_eq!(doc["residue"]["coefficient"], -1);
}

#[test]
fn genus_six_parameters() {
    let (doc, code) = json(&["params", "--genus", "6", "--weight", "0,0,0,0,0,0"]);
    assert_eq!(code, 0);
    let params = doc["parameters"].as_array().unwrap();
    assert_eq!(params.len(), 2);
    assert_eq!(params[1]["parameter"], "[9] ⊕ S(11/2)[2]");
    assert_eq!(params[1]["u"], serde_json::json!([-1]));
    assert_eq!(params[1]["factors"][1]["weights"], serde_json::json!(["11/2"]));
}

#[test]
fn siegel_dimension_needs_table() {
    let (doc, code) = json(&["dim-siegel", "--weight", "10,10"]);
    assert_eq!(code, 3);
    assert_eq!(doc["unresolved"], serde_json::json!(["Oo(9,8)"]));
    let path = std::env::temp_dir().join(format!("siegel-euler-cli-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"families":[{"type":"Oo","weights":[9,8],"count":0}]}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_siegel-euler"))
        .args(["dim-siegel", "--weight", "10,10"])
        .env("SIEGEL_EULER_FORMS_TABLE", &path)
        .output()
        .unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(stdout(&out), "1");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bad_table_is_an_ingestion_error() {
    let path = std::env::temp_dir().join(format!("siegel-euler-cli-bad-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"families":[{"type":"S","weights":["11/2"],"count":2}]}"#).unwrap();
    let out = run(&["points", "--genus", "2", "--q", "2", "--forms-table", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("families[0].count"));
}

#[test]
fn gl_euler_values() {
    assert_eq!(stdout(&run(&["gl-euler", "--n", "4", "--twist", "det-sign"])), "-1");
    assert_eq!(stdout(&run(&["gl-euler", "--n", "7"])), "-1");
    assert_eq!(run(&["gl-euler", "--n", "3", "--twist", "det-sign"]).status.code(), Some(2));
}

#[test]
fn invalid_weights_are_rejected() {
    assert_eq!(run(&["euler-c", "--genus", "2", "--weight", "1,3"]).status.code(), Some(2));
    assert_eq!(run(&["euler-c", "--genus", "3", "--weight", "1,1"]).status.code(), Some(2));
    assert_eq!(run(&["euler-c", "--genus", "2", "--weight", "a,b"]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");
    let (doc, _) = json(&["selftest"]);
    assert_eq!(doc["passed"], true);
}
