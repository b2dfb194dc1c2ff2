use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use wittlab::json::TambaraJson;

fn wittlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wittlab")).args(args).output().expect("run wittlab")
}

fn json_ok(args: &[&str]) -> Value {
    let out = wittlab(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wittlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(path: &Path, v: &Value) {
    std::fs::write(path, serde_json::to_string_pretty(v).unwrap()).unwrap();
}

#[test]
fn eqwitt_f3_over_c2() {
    let v = json_ok(&["eqwitt", "--ring", "F3", "--n", "2", "--p", "3", "--k", "1"]);
    assert_eq!(v["levels"]["C6/C3"], serde_json::json!({ "invariant_factors": [9] }));
    assert_eq!(v["levels"]["C6/e"], serde_json::json!({ "invariant_factors": [3] }));
    assert_eq!(v["nu"], 1);
}

#[test]
fn eqwitt_oracle_passes() {
    let v = json_ok(&["eqwitt", "--ring", "F3", "--n", "1", "--p", "3", "--k", "1", "--oracle"]);
    let text = v["oracle"].to_string();
    assert!(text.contains("PASS") && !text.contains("FAIL"), "{text}");
}

#[test]
fn classical_fv_is_multiplication_by_p() {
    let v = json_ok(&["classical", "--p", "3", "--k", "2", "--op", "FV", "--x", "1,0"]);
    assert_eq!(v["coords"], serde_json::json!([3, -8]));
    assert_eq!(v["ghost"], serde_json::json!([3, 3]));
}

#[test]
fn classical_negative_coordinates_parse() {
    let v = json_ok(&["classical", "--p", "5", "--k", "2", "--op", "add", "--x", "-1,0", "--y", "1,0"]);
    assert_eq!(v["coords"], serde_json::json!([0, 0]));
}

#[test]
fn missing_file_exits_two() {
    let out = wittlab(&["mackey", "show", "--file", "/nonexistent/wittlab.json"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).expect("JSON error on stderr");
    assert_eq!(err["error"]["kind"], "io");
}

#[test]
fn bad_json_and_bad_flags_exit_two() {
    let path = scratch("garbage.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(wittlab(&["mackey", "show", "--file", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(wittlab(&["eqwitt", "--ring", "F3", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn computation_errors_exit_one() {
    // 3 divides |C_3|
    let out = wittlab(&["eqwitt", "--ring", "F3", "--n", "3", "--p", "3", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "computation");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let runs: [&[&str]; 3] = [
        &["eqwitt", "--ring", "Z/4", "--n", "2", "--p", "3", "--k", "1"],
        &["classical", "--p", "3", "--k", "3", "--op", "props", "--seed", "17", "--samples", "10"],
        &["norm", "--ring", "A", "--n", "2", "--p", "3", "--k", "1", "--format", "table"],
    ];
    for args in runs {
        let (a, b) = (wittlab(args), wittlab(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn props_seed_changes_samples_not_verdict() {
    let a = json_ok(&["classical", "--p", "2", "--k", "2", "--op", "props", "--seed", "1", "--samples", "5"]);
    let b = json_ok(&["classical", "--p", "2", "--k", "2", "--op", "props", "--seed", "2", "--samples", "5"]);
    assert_eq!(a["passed"], true);
    assert_eq!(b["passed"], true);
    assert_eq!(a["seed"], 1);
}

#[test]
fn mackey_and_box_outputs_round_trip() {
    let eq = json_ok(&["eqwitt", "--ring", "F3", "--n", "2", "--p", "3", "--k", "1"]);
    let functor = eq["functor"].clone();
    let path = scratch("functor.json");
    write(&path, &functor);
    let shown = json_ok(&["mackey", "show", "--file", path.to_str().unwrap()]);
    assert_eq!(shown, functor);

    let boxed = json_ok(&["box", "--a", path.to_str().unwrap(), "--b", path.to_str().unwrap()]);
    let boxed_path = scratch("boxed.json");
    write(&boxed_path, &boxed);
    let again = json_ok(&["mackey", "show", "--file", boxed_path.to_str().unwrap()]);
    assert_eq!(again, boxed);
}

#[test]
fn norm_output_round_trips() {
    let norm = json_ok(&["norm", "--ring", "F3", "--n", "1", "--p", "3", "--k", "1"]);
    assert_eq!(norm["N"], 3);
    assert_eq!(norm["norm_class"], "other");
    let parsed: TambaraJson = serde_json::from_value(norm.clone()).unwrap();
    let back = TambaraJson::from_tambara(&parsed.to_tambara().unwrap());
    assert_eq!(serde_json::to_value(&back).unwrap()["levels"], norm["levels"]);
    assert_eq!(serde_json::to_value(&back).unwrap()["mul"], norm["mul"]);

    // norms of norms have no closed form here
    let path = scratch("norm.json");
    write(&path, &norm);
    let out = wittlab(&["eqwitt", "--input", path.to_str().unwrap(), "--p", "5", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));

    // the Burnside functor is its own norm
    let a = json_ok(&["norm", "--ring", "A", "--n", "1", "--p", "3", "--k", "1"]);
    let path = scratch("norm-a.json");
    write(&path, &a);
    assert_eq!(json_ok(&["eqwitt", "--input", path.to_str().unwrap(), "--p", "5", "--k", "1"])["N"], 15);
}

#[test]
fn family_check_and_dump_round_trip() {
    let family = scratch("family.json");
    std::fs::write(&family, r#"{"family":{"ring":"F3","n":1,"p":3,"S":2,"classical":true}}"#).unwrap();
    let report = json_ok(&["check", "witt-complex", "--file", family.to_str().unwrap()]);
    assert_eq!(report["passed"], true);
    assert_eq!(report["classical"]["passed"], true);

    let dump = json_ok(&["check", "witt-complex", "--file", family.to_str().unwrap(), "--dump"]);
    let explicit = scratch("explicit.json");
    write(&explicit, &dump);
    assert_eq!(json_ok(&["check", "witt-complex", "--file", explicit.to_str().unwrap(), "--dump"]), dump);
    assert_eq!(json_ok(&["check", "witt-complex", "--file", explicit.to_str().unwrap()])["passed"], true);
}

#[test]
fn injected_violations_fail_with_witnesses() {
    for (inject, axiom) in [("leibniz", "differential"), ("scaled-transfer", "mackey")] {
        let path = scratch(&format!("{inject}.json"));
        std::fs::write(&path, format!(r#"{{"family":{{"ring":"F3","n":2,"p":3,"S":2,"inject":"{inject}"}}}}"#)).unwrap();
        let out = wittlab(&["check", "witt-complex", "--file", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "{inject}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        let results = v["equivariant"]["results"].as_array().unwrap();
        let hit = results.iter().find(|r| r["axiom"] == axiom).unwrap();
        assert_eq!(hit["status"], "FAIL", "{inject}");
        assert!(!hit["witness"]["element"].as_array().unwrap().is_empty(), "{inject}");
        assert_ne!(hit["witness"]["lhs"], hit["witness"]["rhs"]);
    }
}
