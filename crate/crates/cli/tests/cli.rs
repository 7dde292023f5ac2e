use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphq")).current_dir(dir).args(args).output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_in(&fixtures(), args)
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn error_code(o: &Output) -> String {
    json(o)["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn spherical_simple_over_cb3() {
    let o = run(&["spherelike", "cb3.json", "--object", "S:1"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["verdict"], "spherical");
    assert_eq!(v["d"], 3);
    let t = run(&["--text", "spherelike", "cb3.json", "--object", "S:1"]);
    assert_eq!(String::from_utf8(t.stdout).unwrap().trim(), "S:1: Spherical, d = 3, profile 0:1 3:1");
}

#[test]
fn euler_form_of_ncc() {
    let v = json(&run(&["euler", "ncc.json"]));
    assert_eq!(v["euler"], serde_json::json!([[1, -2, 2], [0, 1, -2], [0, 0, 1]]));
    assert_eq!(v["cartan"], serde_json::json!([[1, 0, 0], [2, 1, 0], [2, 2, 1]]));
}

#[test]
fn exit_codes_and_error_format() {
    let o = run(&["build", "missing.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_code(&o), "IoError");
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_code(&o), "UsageError");
    let o = run(&["spherelike", "cb3.json", "--object", "S:9"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_code(&o), "UnknownVertex");
    let o = run(&["poset", "pipeline:x"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--field", "4", "build", "cb2.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["asphericality", "dda_1_2_0.json", "--object", "interval:2,3"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_code(&o), "DZeroUnsupported");
    let o = run(&["asphericality", "ncc.json", "--object", "file:ncc_E.json"]);
    assert_eq!(error_code(&o), "SpecInvariantViolated");
}

#[test]
fn cap_too_small_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(fixtures().join("cb2.json")).unwrap()).unwrap();
    v["length_cap"] = 1.into();
    std::fs::write(dir.path().join("a.json"), v.to_string()).unwrap();
    let o = run_in(dir.path(), &["build", "a.json"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_code(&o), "CapInsufficient");
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["scan", "circular_7_5.json", "--set", "intervals"][..],
        &["poset", "family:canonical:2,2,2:1"],
        &["build", "auslander_x3.json"],
        &["--text", "scan", "dda_1_2_0.json", "--set", "intervals"],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["scan", "dda_2_3_1.json", "--set", "dimbound:3"];
    let one = Command::new(env!("CARGO_BIN_EXE_sphq")).current_dir(fixtures()).env("SPHQ_THREADS", "1").args(args).output().unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_sphq")).current_dir(fixtures()).env("SPHQ_THREADS", "4").args(args).output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn dot_for_single_node_poset() {
    let o = run(&["poset", "family:dda:1,2,0", "--dot"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("digraph P {"));
    assert_eq!(s.matches("label=").count(), 1);
    assert!(!s.contains("->"));
}

#[test]
fn poset_from_synthesis_file_verifies() {
    let o = run(&["poset", "synth:poset_cycle.poset.json", "--verify"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(json(&o)["poset"]["nodes"].as_array().unwrap().len(), 4);
}

#[test]
fn insert_and_tack_write_embeddings() {
    let dir = tempfile::tempdir().unwrap();
    let emb = dir.path().join("ins.emb.json");
    let o = run(&["insert", "cb2.json", "--vertex", "1", "--n", "1", "--emb-out", emb.to_str().unwrap()]);
    assert!(o.status.success());
    let big = dir.path().join("big.json");
    std::fs::write(&big, &o.stdout).unwrap();
    let e: Value = serde_json::from_str(&std::fs::read_to_string(&emb).unwrap()).unwrap();
    assert!(e.get("small").is_some());
    let o = run_in(dir.path(), &["induce", "big.json", "--emb", "ins.emb.json", "--object", "S:1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));

    let tree = dir.path().join("tree.json");
    std::fs::write(&tree, r#"{"quiver": {"vertices": ["u", "v"], "arrows": [{"id": "e", "from": "u", "to": "v"}]}}"#).unwrap();
    let temb = dir.path().join("tack.emb.json");
    let o = run(&[
        "tack", "cb2.json", "--tree", tree.to_str().unwrap(), "--sink", "v", "--mult", "1=2",
        "--emb-out", temb.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    assert!(temb.exists());
    let o = run(&["tack", "cb2.json", "--tree", tree.to_str().unwrap(), "--sink", "u"]);
    assert_eq!(error_code(&o), "NotASink");
}

#[test]
fn member_reads_stored_asphericality() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.json");
    let f = "induced:circular_7_5.emb.json:S:1";
    let o = run(&["asphericality", "circular_7_5.json", "--object", f, "--out", q.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let o = run(&["member", "circular_7_5.json", "--object", f, "--q", q.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(json(&o)["member"], true);
}

#[test]
fn corpus_run_passes() {
    let o = run(&["corpus", "run"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let o = run(&["corpus", "run", "--only", "3"]);
    assert!(o.status.success());
    let o = run(&["corpus", "run", "--only", "13"]);
    assert_eq!(o.status.code(), Some(2));
}
