use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_brieskorn"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    (serde_json::from_slice(&out.stdout).expect("json output"), code(&out))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

#[test]
fn hilbert_fermat() {
    let (v, c) = json(&["hilbert", "x^3+y^3+z^3"]);
    assert_eq!(c, 0);
    assert_eq!(v["dims"], serde_json::json!([1, 3, 3, 1, 0, 0]));
    assert_eq!(v["mu"], 8);
    assert_eq!(v["isolated"], true);
    assert_eq!(v["vars"], serde_json::json!(["x", "y", "z"]));
}

#[test]
fn hilbert_binary_monomial_tail() {
    let (v, c) = json(&["hilbert", "x^2*y^3", "--max-deg", "8"]);
    assert_eq!(c, 0);
    let dims: Vec<u64> = v["dims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    assert!(dims[4..].iter().all(|&d| d == 3), "{dims:?}");
    assert_eq!(v["mu"], Value::Null);
}

#[test]
fn precondition_and_parse_exit_codes() {
    assert_eq!(code(&run(&["hilbert", "x+y"])), 3);
    assert_eq!(code(&run(&["hilbert", "x^2+y"])), 3);
    assert_eq!(code(&run(&["hilbert", "x^2+*y"])), 2);
    assert_eq!(code(&run(&["hilbert", "x^2+w^2", "--vars", "x,y"])), 2);
    assert_eq!(code(&run(&["xpyq", "2", "4"])), 3);
}

#[test]
fn dims_fermat() {
    let (v, c) = json(&["dims", "x^3+y^3+z^3", "--min-deg", "3", "--max-deg", "9"]);
    assert_eq!(c, 0);
    assert_eq!(v["schema"], "brieskorn/1");
    let b: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["dim_B"].as_u64().unwrap()).collect();
    assert_eq!(b, vec![1, 3, 3, 2, 3, 3, 2]);
}

#[test]
fn dims_binary_monomial() {
    let (v, c) = json(&["dims", "x^2*y^3", "--max-deg", "12"]);
    assert_eq!(c, 0);
    let rows = v["rows"].as_array().unwrap();
    let c_degrees: Vec<u64> = rows
        .iter()
        .filter(|r| r["dim_C"] == 1)
        .map(|r| r["s"].as_u64().unwrap())
        .collect();
    assert_eq!(c_degrees, vec![10]);
    let (v, _) = json(&["dims", "x^2*y^3", "--kmax", "3"]);
    for r in v["rows"].as_array().unwrap() {
        let t = r["torsion"].as_array().unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.iter().all(|x| x == &t[0]), "{r}");
    }
}

#[test]
fn torsion_order_writes_a_certificate_that_replays() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = run(&["torsion", "x^3+y^2*z", "--order", "--cert-out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("torsion order"));
    let cert: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert["verified"], true);
    assert_eq!(code(&run(&["verify", path.to_str().unwrap()])), 0);
}

#[test]
fn torsion_unresolved_exits_five() {
    let out = run(&["torsion", "x^2*y^2+x*z^3+y*z^3", "--order", "--kmax", "2"]);
    assert_eq!(code(&out), 5);
    assert!(stdout(&out).contains("unresolved"));
}

#[test]
fn torsion_membership_cubic_surface() {
    let (v, c) = json(&["torsion", "x^2*z+y^3+x*y*t", "--k", "1"]);
    assert_eq!(c, 0);
    assert_eq!(v["verdict"], "solvable");
    assert_eq!(v["certificate"]["verified"], true);
    let (v, _) = json(&["torsion", "x^2*y^2+x*z^3+y*z^3", "--k", "2"]);
    assert_eq!(v["verdict"], "not_solvable");
}

#[test]
fn verify_fixture_and_tampered_copies() {
    let good = fixture("cusp_k2_witness.json");
    assert_eq!(code(&run(&["verify", good.to_str().unwrap()])), 0);

    let dir = tempfile::tempdir().unwrap();
    let body = fs::read_to_string(&good).unwrap();
    let perturbed = dir.path().join("perturbed.json");
    fs::write(&perturbed, body.replace("32/3*x^3*y*z", "31/3*x^3*y*z")).unwrap();
    assert_eq!(code(&run(&["verify", perturbed.to_str().unwrap()])), 1);

    let empty = dir.path().join("empty.json");
    fs::write(&empty, "").unwrap();
    assert_eq!(code(&run(&["verify", empty.to_str().unwrap()])), 2);

    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, body.replace("32/3*x^3*y*z", "32/3*x^^3")).unwrap();
    assert_eq!(code(&run(&["verify", garbage.to_str().unwrap()])), 2);

    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["verify", missing.to_str().unwrap()])), 2);
}

#[test]
fn series_values() {
    assert_eq!(stdout(&run(&["series", "3", "3", "--terms", "9"])).trim(), "0,0,0,1,4,7,8,8,8");
    assert_eq!(stdout(&run(&["series", "1", "3", "--terms", "5"])).trim(), "0,1,2,2,2");
    assert_eq!(stdout(&run(&["series", "2", "2", "--terms", "5"])).trim(), "0,0,1,1,1");
}

#[test]
fn xpyq_cross_check_passes() {
    let out = run(&["xpyq", "2", "3", "--max-deg", "16"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("cross-check PASS"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "torsion", "x^3+y^2*z", "--k", "2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["--json", "dims", "x^2*y+y^3", "--kmax", "2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn manifest_runs_jobs_in_id_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("jobs.json");
    let manifest = serde_json::json!({
        "jobs": [
            {"id": "c-surface", "f": "x^2*z+y^3+x*y*t", "command": "torsion", "params": {"k": 1}},
            {"id": "a-fermat", "f": "x^3+y^3+z^3", "command": "hilbert"},
            {"id": "b-monomial", "f": "x^2*y^3", "vars": ["x", "y"], "command": "dims",
             "params": {"max_deg": 10, "kmax": 1}},
            {"id": "d-bad", "f": "x^2+y", "command": "hilbert"}
        ]
    });
    fs::write(&path, manifest.to_string()).unwrap();
    let out = run(&["manifest", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|j| j["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["a-fermat", "b-monomial", "c-surface", "d-bad"]);
    assert_eq!(v[0]["result"]["mu"], 8);
    assert_eq!(v[2]["result"]["verdict"], "solvable");
    assert_eq!(v[3]["exit"], 3);
    assert_eq!(run(&["manifest", path.to_str().unwrap()]).stdout, out.stdout);

    let dup = dir.path().join("dup.json");
    fs::write(&dup, r#"[{"id":"a","f":"x^2","command":"hilbert"},{"id":"a","f":"y^2","command":"hilbert"}]"#).unwrap();
    assert_eq!(code(&run(&["manifest", dup.to_str().unwrap()])), 2);
}
