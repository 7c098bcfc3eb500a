use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn unitri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitri")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn statuses(v: &Value) -> Vec<(String, String)> {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["status"].as_str().unwrap().to_string()))
        .collect()
}

fn equations(v: &Value) -> Vec<String> {
    v["results"]["equations"].as_array().unwrap().iter().map(|e| e.as_str().unwrap().to_string()).collect()
}

#[test]
fn decompose_examples() {
    for (args, count, dim) in [
        (["--n", "3", "--q", "2", "--lambda", "1,2=1"], 3, Some("4")),
        (["--n", "4", "--q", "2", "--lambda", "1,3=1"], 6, Some("16")),
        (["--n", "5", "--q", "2", "--lambda", "1,4=1;2,3=0"], 9, None),
    ] {
        let mut full = vec!["decompose"];
        full.extend(args);
        let out = unitri(&full);
        assert_eq!(out.status.code(), Some(0), "{:?}", args);
        let v = json_of(&out);
        assert_eq!(v["results"]["decomposition"]["component_count"], count);
        if let Some(d) = dim {
            assert_eq!(v["results"]["decomposition"]["total_dim"], d);
        }
    }
}

#[test]
fn orbit_examples() {
    let v = json_of(&unitri(&["orbit", "--n", "3", "--q", "2", "--subset", "", "--a", "1"]));
    assert_eq!(equations(&v), ["y31 = 1"]);
    assert_eq!(v["results"]["orbit_size"], 4);

    let out = unitri(&["orbit", "--n", "4", "--q", "3", "--lambda", "1,3=1", "--subset", "1,3", "--a", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let mut eqs = equations(&json_of(&out));
    eqs.sort();
    assert_eq!(eqs, ["y31 = 1", "y41 = 0", "y42 = 1", "y42y21 + y43y31 = 2"]);

    let v = json_of(&unitri(&["orbit", "--n", "5", "--q", "2", "--subset", "pi"]));
    assert_eq!(equations(&v).len(), 6);
    assert!(statuses(&v).iter().all(|(_, s)| s == "pass"));
}

#[test]
fn markdown_lists_the_equations() {
    let out = unitri(&["orbit", "--n", "3", "--q", "2", "--subset", "", "--a", "1", "--format", "md"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("- y31 = 1"));
    assert!(text.contains("Orbit size: 4"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(unitri(&["decompose", "--n", "4", "--q", "4"]).status.code(), Some(2));
    assert_eq!(unitri(&["decompose", "--n", "4", "--lambda", "1,3=0"]).status.code(), Some(2));
    assert_eq!(unitri(&["orbit", "--n", "3", "--subset", "bogus"]).status.code(), Some(2));
    assert_eq!(unitri(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn tampered_fixture_fails_its_check() {
    let dir = tempfile::tempdir().unwrap();
    let src = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/n4-ii.json");
    let mut fx: Value = serde_json::from_str(&fs::read_to_string(src).unwrap()).unwrap();
    let eqs = fx["equations"].as_array_mut().unwrap();
    let last = eqs.last_mut().unwrap();
    let flipped = last.as_str().unwrap().replacen(" + ", " - ", 1);
    assert_ne!(&flipped, last.as_str().unwrap());
    *last = Value::String(flipped);
    fs::write(dir.path().join("n4-ii.json"), serde_json::to_string_pretty(&fx).unwrap()).unwrap();

    let out = unitri(&["verify", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    let failed: Vec<String> = statuses(&v).into_iter().filter(|(_, s)| s == "fail").map(|(n, _)| n).collect();
    assert!(failed.iter().any(|n| n == "fixture n4-ii q=2: equation tokens"), "{:?}", failed);
    assert!(failed.iter().all(|n| n.starts_with("fixture n4-ii")), "{:?}", failed);
}

#[test]
fn verify_is_deterministic_and_seed_only_moves_samples() {
    let a = unitri(&["verify"]);
    let b = unitri(&["verify", "--workers", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = unitri(&["verify", "--seed", "12345"]);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(statuses(&json_of(&a)), statuses(&json_of(&c)));
    assert!(json_of(&a)["timing"].is_null());
}
