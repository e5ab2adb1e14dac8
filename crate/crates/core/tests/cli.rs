use std::fs;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_d2d-discovery")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn defaults_run_cleanly() {
    let out = cli(&["analytic"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("dz_index,"));
    assert_eq!(text.lines().count(), 21);
}

#[test]
fn unknown_config_key_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    fs::write(&path, "resources = 22\nbogus = 1\n").unwrap();
    let out = cli(&["analytic", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bogus"));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn invalid_values_are_input_errors() {
    for args in [
        &["analytic", "--resources", "0"][..],
        &["analytic", "--backoff-window", "25"],
        &["analytic", "--alpha", "-1"],
        &["analytic", "--dz-count", "many"],
        &["figure", "fig9"],
        &["sweep", "--axis", "Q=1,2"],
        &["analytic", "--format", "xml"],
    ] {
        let out = cli(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty());
    }
}

#[test]
fn flags_override_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w3.cfg");
    fs::write(&path, "# scenario\nbackoff_window = 3\n").unwrap();
    let cfg = path.to_str().unwrap();
    let from_file = cli(&["analytic", "--config", cfg, "--format", "json"]);
    let overridden = cli(&["analytic", "--config", cfg, "--backoff-window", "5", "--format", "json"]);
    let w = |o: &Output| -> u64 {
        let v: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
        v["summary"]["config"]["backoff_window"].as_u64().unwrap()
    };
    assert_eq!(w(&from_file), 3);
    assert_eq!(w(&overridden), 5);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = cli(&["mc", "--seed", "7", "--seeds", "4", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn figure_two_series_shape() {
    let out = cli(&["figure", "fig2", "--seeds", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("backoff_window,max_transmissions,engine,dz_index"));
    assert_eq!(lines.count(), 4 * 3 * 20);
}

#[test]
fn sweep_summary_has_one_line_per_cell() {
    let out = cli(&["sweep", "--axis", "L_max=2,3", "--engines", "analytic-coupled,mc", "--seeds", "2", "--table", "summary"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 1 + 2 * 2);
}

#[test]
fn unwritable_output_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = cli(&["analytic", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
