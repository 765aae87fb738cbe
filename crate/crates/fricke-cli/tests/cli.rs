use std::process::{Command, Output};

use serde_json::Value;

fn fricke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fricke")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn tame_suite_passes() {
    let o = fricke(&["verify", "tame", "--seed", "7", "--trials", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn all_suites_reported() {
    let o = fricke(&["verify", "all", "--seed", "7", "--trials", "5"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let suites = v["suites"].as_array().unwrap();
    assert!(suites.len() >= 12);
    // The sign suite records the two disputed signs as failures.
    let failing: Vec<&str> = suites.iter().filter(|s| s["passed"] == false).map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(failing, ["signs"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn corrupted_identity_fails_with_witness() {
    let o = fricke(&["verify", "tame", "--seed", "7", "--trials", "10", "--corrupt"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v["suites"][0]["checks"].as_array().unwrap();
    let bad = checks.iter().find(|c| c["verdict"] == "Unequal").expect("an unequal verdict");
    assert_eq!(bad["witness"]["point"]["family"], "V");
    assert_ne!(bad["witness"]["left"], bad["witness"]["right"]);
}

#[test]
fn custom_identity() {
    let ok = fricke(&["verify", "custom", "--lhs", "h12 . h23 . h31", "--rhs", "id", "--family", "VI", "--trials", "10"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = fricke(&["verify", "custom", "--lhs", "h12 . h23", "--rhs", "id", "--family", "VI", "--trials", "10"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn orbit_of_g() {
    let o = fricke(&["orbit", "g", "--start", "1,1,13", "--params", "e0=2,a3=3,a4=5", "--steps", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = json_lines(&o);
    assert_eq!(recs.len(), 4);
    assert_eq!(recs[0]["x"], serde_json::json!(["51", "-3", "13"]));
    assert_eq!(recs[3]["period"], Value::Null);
}

#[test]
fn orbit_of_an_involution_has_period_two() {
    let o = fricke(&["orbit", "sigma1", "--start", "1,1,13", "--params", "e0=2,a3=3,a4=5", "--steps", "4"]);
    let recs = json_lines(&o);
    assert_eq!(recs.last().unwrap()["period"], 2);
}

#[test]
fn lines_of_cv() {
    let o = fricke(&["lines", "V", "--params", "e0=4,e3=3,e4=2"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = json_lines(&o);
    assert_eq!(recs.len(), 18);
    assert!(recs.iter().any(|r| r["plane"]["k"] == 1 && r["plane"]["c"] == "3"));
}

#[test]
fn census_has_twelve_points() {
    let o = fricke(&["census", "--alpha", "1/3,1/5,1/7"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = json_lines(&o);
    assert_eq!(recs.len(), 12);
    assert!(recs.iter().any(|r| !r["also"].as_array().unwrap().is_empty()));
}

#[test]
fn deterministic_output() {
    for args in [
        &["verify", "canonical", "--seed", "3", "--trials", "5"][..],
        &["sample", "VI", "--count", "5", "--seed", "9", "--format", "csv"][..],
        &["cremona", "relations", "--trials", "5"][..],
    ] {
        assert_eq!(fricke(args).stdout, fricke(args).stdout, "{args:?}");
    }
}

#[test]
fn out_file() {
    let path = std::env::temp_dir().join(format!("fricke-cli-test-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let o = fricke(&["sample", "V", "--count", "3", "--format", "csv", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(fricke(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(fricke(&["orbit", "frobnicate", "--start", "1,1,1"]).status.code(), Some(2));
    assert_eq!(fricke(&["census", "--alpha", "1/3,x,1/7"]).status.code(), Some(2));
    assert_eq!(fricke(&["lines", "V", "--params", "e0=4,zz=1"]).status.code(), Some(2));
    assert_eq!(fricke(&["bogus"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one_with_name() {
    let o = fricke(&["orbit", "g", "--start", "1,1,12", "--params", "e0=2,a3=3,a4=5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotOnSurface"));
    let o = fricke(&["census", "--alpha", "1/3,1/5,1/3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NonGenericAlpha"));
    let o = fricke(&["cremona", "apply", "sigma", "--at", "0,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("PoleHit"));
}

#[test]
fn cremona_commands() {
    let o = fricke(&["cremona", "apply", "p^5", "--at", "2,7"]);
    assert_eq!(json_lines(&o)[0]["image"], serde_json::json!(["2", "7"]));
    let o = fricke(&["cremona", "ratio", "w[[2,1],[1,1]]", "--at", "3,5"]);
    assert_eq!(json_lines(&o)[0]["ratio"], "1");
}
