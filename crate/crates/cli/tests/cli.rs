use std::process::Command;

fn gol(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gol")).args(args).output().unwrap()
}

fn polyfunc(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_polyfunc")).args(args).output().unwrap()
}

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn green_suite_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("green.json");
    let out = gol(&["--suite", "green", "--p", "5", "--precision", "6", "--seed", "1", "--json", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("PASS green"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let r = &v[0];
    assert_eq!(r["schema"], "gol-1");
    assert_eq!(r["status"], "pass");
    assert_eq!(r["seed"], 1);
    let m = &r["metrics"];
    assert_eq!(m["p"], 5);
    assert_eq!(m["rank"], 18);
    assert_eq!(m["rational_components"], 6);
    assert_eq!(m["reduced_dim"], 18);
    assert_eq!(m["lattice_count"]["total"], 23);
    assert_eq!(m["commutative_factors"], 12);
    assert_eq!(m["closure_trials"], 1000);
    assert_eq!(m["closure_failures"], 0);
    assert_eq!(m["checks"]["cartan_match"], true);
    assert_eq!(m["cartan"][0], serde_json::json!([2, 1, 0, 0, 0]));
}

#[test]
fn same_seed_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let canon = |name: &str, extra: &[&str]| {
        let path = dir.path().join(name);
        let mut args = vec!["--suite", "polyfunc", "--p", "5", "--trials", "20", "--seed", "3", "--json", path.to_str().unwrap()];
        args.extend_from_slice(extra);
        assert!(gol(&args).status.success());
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        v[0].as_object_mut().unwrap().remove("runtime_ms");
        v
    };
    assert_eq!(canon("a.json", &[]), canon("b.json", &["--sequential"]));
}

#[test]
fn bad_arguments_fail() {
    assert_eq!(gol(&["--suite", "nope"]).status.code(), Some(2));
    assert_eq!(gol(&["--suite", "green", "--p", "4"]).status.code(), Some(2));
    assert!(!polyfunc(&["dims", "--functor", "sym:x", "--k", "2"]).status.success());
}

#[test]
fn tree_and_algebra_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let tree = gol(&["tree", "--star", "3", "--multiplicity", "2"]);
    assert!(tree.status.success());
    let tree_path = dir.path().join("tree.json");
    std::fs::write(&tree_path, tree.stdout).unwrap();
    let alg = gol(&["algebra", "--file", tree_path.to_str().unwrap(), "--p", "3"]);
    assert!(alg.status.success());
    let alg_path = dir.path().join("alg.json");
    std::fs::write(&alg_path, &alg.stdout).unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&alg.stdout).unwrap();
    assert_eq!(doc["p"], 3);
    let out = gol(&["inspect", alg_path.to_str().unwrap(), "--tree", tree_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("matches tree prediction: true"));
}

#[test]
fn polyfunc_commands() {
    assert_eq!(stdout(&polyfunc(&["dims", "--functor", "sym:3", "--k", "4"])).trim(), "20");
    let cross: serde_json::Value =
        serde_json::from_str(&stdout(&polyfunc(&["cross", "--functor", "tensor:3", "--slots", "5"]))).unwrap();
    assert_eq!(cross["values"], serde_json::json!([1, 6, 6, 0, 0]));
    assert_eq!(cross["offset"], 0);
    let out = polyfunc(&["verify", "--lemma", "welldefined", "--p", "5", "--trials", "50", "--seed", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["failures"], 0);
    assert!(polyfunc(&["verify", "--lemma", "tensor-end", "--p", "5", "--n", "2"]).status.success());
}
