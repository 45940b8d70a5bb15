use std::path::PathBuf;
use std::process::{Command, Output};

use num_rational::BigRational;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_duality-kit"))
        .args(args)
        .env_remove("DUALITY_KIT_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn q(s: &str) -> BigRational {
    s.parse().unwrap()
}

#[test]
fn compose_is_the_rational_matrix_product() {
    let out = cli(&["compose", &format!("{}#mu", data("chapman.json")), &format!("{}#nu", data("chapman.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let mu = [[q("1/2"), q("1/2")], [q("0"), q("1")]];
    let nu = [[q("1"), q("0")], [q("1/3"), q("2/3")]];
    let rows = v["result"]["kernel"]["rows"].as_array().unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let expect: BigRational = (0..2).map(|k| &mu[i][k] * &nu[k][j]).sum();
            assert_eq!(q(rows[i][j].as_str().unwrap()), expect);
        }
    }
    assert_eq!(v["schema_version"], "1");
}

#[test]
fn funcalc_indicator_on_swap() {
    let out = cli(&["funcalc", &data("swap.json"), "--fn", "indicator:0.5,1.5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for row in v["result"]["result"].as_array().unwrap() {
        for z in row.as_array().unwrap() {
            assert!((z[0].as_f64().unwrap() - 0.5).abs() <= 1e-9);
            assert!(z[1].as_f64().unwrap().abs() <= 1e-9);
        }
    }
}

#[test]
fn verify_all_writes_a_passing_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bundle.json");
    let out = cli(&["verify", "--suite", "all", "--seed", "42", "--cases", "200", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["tolerance"]["spectral"], 1e-9);
    assert_eq!(v["result"]["passed"], true);
    let certs = v["result"]["certificates"].as_array().unwrap();
    assert!(certs.len() >= 20);
    for c in certs {
        let control = c["control"].as_bool().unwrap();
        assert_eq!(c["passed"].as_bool().unwrap(), !control, "{}", c["suite"]);
    }
}

#[test]
fn reports_are_deterministic() {
    let a = cli(&["verify", "--suite", "stoch", "--seed", "7", "--cases", "20"]);
    let b = cli(&["verify", "--suite", "stoch", "--seed", "7", "--cases", "20"]);
    assert_eq!(a.stdout, b.stdout);
    let c = cli(&["verify", "--suite", "stoch", "--seed", "8", "--cases", "20"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{ not json").unwrap();
    assert_eq!(cli(&["sobrify", broken.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(cli(&["sobrify", "/nonexistent/x.json"]).status.code(), Some(2));
    assert_eq!(cli(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(cli(&["verify", "--cases", "many"]).status.code(), Some(2));
    let shear = format!("{}#shear", data("structures.json"));
    assert_eq!(cli(&["spec", &shear]).status.code(), Some(2));
}

#[test]
fn law_failure_exits_one() {
    let out = cli(&["verify", "--suite", "cstar", "--cases", "5", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["passed"], false);
}

#[test]
fn budget_env_controls_exhaustive_checks() {
    let run = |budget: &str| {
        Command::new(env!("CARGO_BIN_EXE_duality-kit"))
            .args(["verify", "--suite", "bool", "--cases", "2"])
            .env("DUALITY_KIT_BUDGET", budget)
            .output()
            .unwrap()
    };
    let small = run("1");
    assert_eq!(small.status.code(), Some(0));
    let v = json(&small);
    assert!(v["result"]["certificates"].as_array().unwrap().iter().all(|c| c["exhaustive_checks"].is_null()));
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn stone_of_a_space_round_trips() {
    let out = cli(&["stone", &format!("{}#lumpy", data("structures.json"))]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = cli(&["stone", &format!("{}#three", data("structures.json"))]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn integrate_exactly() {
    let povm = format!("{}#fair", data("structures.json"));
    let out = cli(&["integrate", &povm, "--values", "1,1/3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"2/3\"") && text.contains("\"1/3\""));
}
