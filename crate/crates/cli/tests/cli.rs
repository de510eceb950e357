use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_vtalg"));
    c.env_remove("VTALG_JOBS");
    c
}

fn suites() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../suites")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn corrupted_tau_fails_reproducibly() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = suites().join("corrupted_tau.json");
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let o = run(&["verify", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    }
    let report = std::fs::read_to_string(&a).unwrap();
    assert_eq!(report, std::fs::read_to_string(&b).unwrap());
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["verdict"], "FAIL");
    let r = &v["items"][0]["reports"][0];
    assert_eq!(r["verdict"], "FAIL");
    assert!(r["counterexample"]["value"].as_str().unwrap().contains("a_"));
    for key in ["suite", "algebra", "cap", "mode", "checked"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn avf_suite_passes_and_jobs_do_not_change_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = suites().join("avf.json");
    let one = dir.path().join("one.json");
    let two = dir.path().join("two.json");
    let o = run(&["verify", cfg.to_str().unwrap(), "--out", one.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = bin().args(["verify", cfg.to_str().unwrap(), "--out", two.to_str().unwrap()]).env("VTALG_JOBS", "2").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&one).unwrap(), std::fs::read(&two).unwrap());
}

#[test]
fn cap_below_identity_degree_is_an_error() {
    let cfg = suites().join("strongly11_envelope.json");
    let o = run(&["verify", cfg.to_str().unwrap(), "--cap", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("below the identity degree"), "{}", stderr(&o));
    let o = run(&["verify", cfg.to_str().unwrap(), "--cap", "13"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn random_mode_records_seed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        &dir,
        "r.json",
        r#"{"suite":"r","items":[{"name":"cyclic","algebra":{"kind":"vector-type","variables":2,"truncation":2},
           "presets":["cyclic"],"mode":{"kind":"random","seed":3,"count":40},"cap":3}]}"#,
    );
    let o = run(&["verify", &cfg, "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["items"][0]["reports"][0]["seed"], 11);
    assert_eq!(v["items"][0]["reports"][0]["checked"], 40);
    assert_eq!(stdout(&run(&["verify", &cfg, "--seed", "11"])), stdout(&o));
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(&dir, "bad.json", r#"{"suite":"x","items":[{"name":"a","algebra":{"kind":"avf","max_weight":2},"presets":["nope"],"cap":3}]}"#);
    assert_eq!(run(&["verify", &bad]).status.code(), Some(2));
    let broken = write(&dir, "broken.json", "{");
    assert_eq!(run(&["verify", &broken]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn dims_and_goldens() {
    let o = run(&["dims", "free-on-x", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let dims: Vec<String> = stdout(&o).lines().skip(2).map(|l| l.split(" : ").nth(1).unwrap().to_string()).collect();
    assert_eq!(dims, ["1", "1", "1", "2", "2", "3", "3", "5"]);

    let golden = suites().join("golden/f0.dim");
    let o = run(&["dims", "F0", "6", "--golden", golden.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(&golden).unwrap().replace("2 2 : 1", "2 2 : 2");
    let wrong = write(&dir, "wrong.dim", &text);
    let o = run(&["dims", "F0", "6", "--golden", &wrong]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("expected `2 2 : 2`, computed `2 2 : 1`"), "{}", stderr(&o));

    let o = run(&["dims", "F0", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["grading"], serde_json::json!(["z", "x"]));
    assert_eq!(run(&["dims", "F7", "3"]).status.code(), Some(2));
}

#[test]
fn eval_examples() {
    let dir = tempfile::tempdir().unwrap();
    let term = write(&dir, "t.term", "even z odd x :: (assoc z x x)");
    let gens = write(&dir, "g.json", r#"{"z":"z","x":"x"}"#);
    let o = run(&["eval", "F0", &term, &gens]);
    assert_eq!(stdout(&o).trim(), "2*s", "{}", stderr(&o));
    let bars = write(&dir, "b.json", r#"{"z":"z","x":"bar(1)"}"#);
    assert_eq!(stdout(&run(&["eval", "F1", &term, &bars])).trim(), "2*s");
    let s = write(&dir, "s.json", r#"{"z":"s","x":"bar(1)"}"#);
    assert_eq!(stdout(&run(&["eval", "F1", &term, &s])).trim(), "0");
    let sq = write(&dir, "sq.term", "odd x :: (* x x)");
    assert_eq!(stdout(&run(&["eval", "F1", &sq, &gens])).trim(), "1");
    let bad = write(&dir, "bad.json", r#"{"x":"bar("}"#);
    assert_eq!(run(&["eval", "F1", &sq, &bad]).status.code(), Some(2));
}

#[test]
fn nf_prints_element_and_expansion() {
    let o = run(&["nf", "F0", "even z x :: (* (assoc z x x) (assoc z x x))"]);
    assert_eq!(stdout(&o), "4*s^2\n1*[(zR)^2]\n");
    assert_eq!(run(&["nf", "F0", "even q :: q"]).status.code(), Some(2));
}

#[test]
fn consequence_examples() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let o = run(&["consequence", "--defining", "strongly-11", "preset:sym-assoc", "3", "--out", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(v["verdict"], "MEMBER");
    assert_eq!(v["verified"], true);

    assert_eq!(run(&["consequence", "--defining", "jordan", "preset:k-symmetry", "4"]).status.code(), Some(0));

    let comm = write(&dir, "comm.term", "even x y :: (comm x y)");
    let o = run(&["consequence", "--defining", "right-alt", &comm, "2"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "NOT_MEMBER");

    assert_eq!(run(&["consequence", "--defining", "right-alt", &comm, "7"]).status.code(), Some(2));
    assert_eq!(run(&["consequence", "preset:commutator-leibniz", "3"]).status.code(), Some(0));
}
