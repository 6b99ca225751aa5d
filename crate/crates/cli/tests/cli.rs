use std::path::PathBuf;
use std::process::{Command, Output};

fn bfh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bfh"))
        .args(args)
        .env_remove("BFH_JMAX")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn documented_computations() {
    let o = bfh(&["compute", "mor-homology", "cfd-U", "cfd-J"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("mor-homology [source=\"cfd-U\" target=\"cfd-J\"] = 10\n"));
    let o = bfh(&["compute", "cable-tau", "--p", "3", "--eps2", "1"]);
    assert!(stdout(&o).starts_with("cable-tau [eps1=0 eps2=1 p=3] = 3\n"));
    let o = bfh(&["compute", "surgery-hat", "--n", "4"]);
    assert!(stdout(&o).starts_with("surgery-hat [eps1=0 eps2=0 n=4] = 12\n"));
}

#[test]
fn json_result_shape() {
    let path = tmp("tau.json");
    let o = bfh(&["compute", "cable-tau", "--p", "2", "--json", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["invariant"], "cable-tau");
    assert_eq!(v["value"], 2);
    assert_eq!(v["params"]["p"], 2);
    assert!(v["witness"].as_array().is_some_and(|w| !w.is_empty()));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bfh(&["compute", "nope"]).status.code(), Some(2));
    assert_eq!(bfh(&["compute", "homology", "cfa-cable"]).status.code(), Some(2));
    assert_eq!(bfh(&["compute", "cable-tau", "--eps1", "2", "--p", "2"]).status.code(), Some(2));
    assert_eq!(bfh(&["verify", "--check", "nope"]).status.code(), Some(2));
    assert_eq!(bfh(&["import", "/nonexistent/x.json"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_bfh"))
        .args(["verify", "--check", "mor-dim"])
        .env("BFH_JMAX", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_import_round_trip() {
    for name in ["cfd-J", "cfk-J", "cfa-cable:3", "cfa-framed:4", "cfk-cable-J:5", "basis-map:g1"] {
        let path = tmp(&format!("{}.json", name.replace(':', "_")));
        assert!(bfh(&["export", name, path.to_str().unwrap()]).status.success());
        let o = bfh(&["import", path.to_str().unwrap()]);
        assert!(o.status.success(), "{name}: {}", stdout(&o));
        assert!(stdout(&o).ends_with("valid\n"));
        // Re-export of the imported object is byte-identical.
        let again = tmp("again.json");
        let object = format!("{name}={}", path.display());
        assert!(bfh(&["export", name, again.to_str().unwrap(), "--object", &object]).status.success());
        assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap());
    }
    let o = bfh(&["import", tmp("cfk-cable-J_5.json").to_str().unwrap()]);
    assert!(stdout(&o).starts_with("complex over FU with 145 generators"));
}

#[test]
fn unknown_rho_is_a_schema_error() {
    let path = tmp("bad_rho.json");
    std::fs::write(
        &path,
        r#"{"format":1,"kind":"type_d","generators":[{"id":"v","idem":"i0"}],"delta":[{"from":"v","rho":"r13","to":"v"}]}"#,
    )
    .unwrap();
    let o = bfh(&["import", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("delta[0].rho"));
}

#[test]
fn single_check_and_report() {
    let path = tmp("report.json");
    let o = bfh(&["verify", "--check", "mor-dim", "--json", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "PASS mor-dim [criterion 1, literature]\n1 checks, 0 failed\n");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["results"][0]["basis"], "literature");
    assert_eq!(v["results"][0]["computed"], "10");
    assert!(v["results"][0].get("millis").is_none());
}

#[test]
fn mutated_structure_fails_the_validator_check() {
    let path = tmp("cfd_j_mutant.json");
    assert!(bfh(&["export", "cfd-J", path.to_str().unwrap()]).status.success());
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["delta"]
        .as_array_mut()
        .unwrap()
        .push(serde_json::json!({"from": "x", "rho": "r1", "to": "y1_1"}));
    std::fs::write(&path, v.to_string()).unwrap();
    let object = format!("cfd-J={}", path.display());
    let o = bfh(&["verify", "--check", "validators", "--check", "mor-dim", "--object", &object]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL validators"), "{out}");
    assert!(out.contains("cfd-J: structure equation fails"), "{out}");
}

#[test]
fn verify_all_passes_and_is_deterministic() {
    let a = bfh(&["verify", "--all"]);
    let b = bfh(&["verify", "--all"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("15 checks, 0 failed\n"));
}
