use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gdl(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gdl"));
    c.args(args).env_remove("GDL_CAP").env_remove("GDL_SEED").env_remove("GDL_THREADS");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("gdl runs")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn construct(dir: &Path, name: &str, extra: &[&str]) -> String {
    let path = dir.join(format!("{name}.json")).display().to_string();
    let mut args = vec!["construct", name];
    args.extend_from_slice(extra);
    args.extend_from_slice(&["-o", &path]);
    let o = gdl(&args, &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn construct_symplectic_and_certify() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct(dir.path(), "symplectic-planes", &[]);
    let f: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(f["size"], 135);
    assert_eq!(f["version"], "gdl-v1");
    assert!(f["manifest"]["digests"]["bitset"].is_string());
    let o = gdl(&["certify", &path], &[]);
    assert_eq!(code(&o), 0);
    let r = json_of(&o);
    assert_eq!(r["result"]["verdict"]["status"], "certified");
    assert_eq!(r["result"]["stored_certificate"]["status"], "replays");
}

#[test]
fn incident_pph_has_120_members() {
    let o = gdl(&["construct", "incident-pph"], &[]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_of(&o)["size"], 120);
}

#[test]
fn refuted_family_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct(dir.path(), "line-solid", &["--variant", "pi13"]);
    let o = gdl(&["certify", &path], &[]);
    assert_eq!(code(&o), 3);
    assert_eq!(json_of(&o)["result"]["verdict"]["status"], "refuted");
    let path = construct(dir.path(), "line-solid", &["--variant", "completion1"]);
    assert_eq!(code(&gdl(&["certify", &path], &[])), 0);
}

#[test]
fn corrupted_bitset_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct(dir.path(), "symplectic-planes", &[]);
    let mut f: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let bits = f["bitset"].as_str().unwrap();
    f["bitset"] = Value::String(bits[..bits.len() - 8].to_string());
    std::fs::write(&path, serde_json::to_vec(&f).unwrap()).unwrap();
    let o = gdl(&["certify", &path], &[]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bitset length mismatch"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&gdl(&["construct", "no-such-family"], &[])), 2);
    assert_eq!(code(&gdl(&["construct", "symplectic-planes", "--n", "7"], &[])), 2);
    assert_eq!(code(&gdl(&["frobnicate"], &[])), 2);
    assert_eq!(code(&gdl(&["certify", "/nonexistent/family.json"], &[])), 2);
}

#[test]
fn cap_exits_4() {
    let o = gdl(&["construct", "symplectic-planes"], &[("GDL_CAP", "100")]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    assert_eq!(code(&gdl(&["--cap", "100", "construct", "symplectic-planes"], &[])), 4);
}

#[test]
fn digests_do_not_depend_on_threads() {
    let digests = |threads: &str| {
        let o = gdl(&["construct", "quadric-planes", "--which", "f2"], &[("GDL_THREADS", threads)]);
        assert_eq!(code(&o), 0);
        json_of(&o)["manifest"]["digests"].clone()
    };
    let one = digests("1");
    assert_eq!(one, digests("4"));
    assert_eq!(one, digests("1"));
}

#[test]
fn covering_is_reproducible_per_seed() {
    let run = |seed: &str| {
        let o = gdl(&["covering", "--n", "6", "--k", "3", "--q", "2", "--budget", "60"], &[("GDL_SEED", seed)]);
        json_of(&o)["result"]["outcome"].clone()
    };
    assert_eq!(run("5"), run("5"));
    assert_ne!(run("5")["members"], run("6")["members"]);
}

#[test]
fn report_builtin_sizes_are_divisible_by_5() {
    let o = gdl(&["report", "--builtin"], &[]);
    assert_eq!(code(&o), 0);
    let r = json_of(&o);
    let fams = r["result"]["families"].as_array().unwrap();
    assert!(fams.len() >= 10);
    for f in fams {
        assert_eq!(f["size"].as_u64().unwrap() % 5, 0, "{f}");
    }
}

#[test]
fn empty_report_succeeds() {
    let o = gdl(&["report"], &[]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_of(&o)["result"]["families"], Value::Array(vec![]));
}

#[test]
fn tables_match_closed_forms() {
    let o = gdl(&["report", "--tables", "--markdown"], &[]);
    assert_eq!(code(&o), 0);
    let md = String::from_utf8(o.stdout).unwrap();
    assert!(md.contains("hyperbolic quadric of F_3^6"));
    assert!(!md.contains('✗'));
}

#[test]
fn selftest_quick_passes() {
    let o = gdl(&["selftest", "quick"], &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json_of(&o)["result"]["passed"], true);
}

#[test]
fn symplectic_group_orbits_and_unions() {
    let dir = tempfile::tempdir().unwrap();
    let group = dir.path().join("sp6.json").display().to_string();
    let o = gdl(&["orbits", "--symplectic", "--m", "3", "--emit-group", &group], &[]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_of(&o)["result"]["sizes"], serde_json::json!([1260, 135]));
    let o = gdl(&["block", "--group", &group, "--d", "2", "--k", "3"], &[]);
    assert_eq!(json_of(&o)["result"]["equal"], true);
    let out = dir.path().join("unions");
    let o = gdl(&["search-unions", "--group", &group, "--d", "2", "--k", "3", "--emit", out.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0);
    let sizes: Vec<u64> =
        json_of(&o)["result"]["unions"].as_array().unwrap().iter().map(|u| u["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![135, 1260]);
    let first = out.join("union-1.json");
    assert_eq!(code(&gdl(&["certify", first.to_str().unwrap()], &[])), 0);
}

#[test]
fn junta_of_incident_pph() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct(dir.path(), "incident-pph", &[]);
    let o = gdl(&["junta", &path], &[]);
    assert_eq!(code(&o), 0);
    assert!(json_of(&o)["result"]["cover_bound"]["bound"].as_u64().unwrap() >= 1);
}
