use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn zol(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_zol"));
    cmd.args(args).env_remove("ZOL_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn interval_and_refutation() {
    let o = zol(&["interval", "--k", "4", "--frac", "2/3", "--strong"], &[]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("left  = 53/80"));
    let o = zol(&["interval", "--k", "4", "--frac", "2/3"], &[]);
    assert!(stdout(&o).contains("85/128"));
    let o = zol(&["refute-alpha", "--m", "2", "--k", "15"], &[]);
    assert!(stdout(&o).contains("alpha = 15/16"));
    let o = zol(&["interval", "--k", "3", "--frac", "2/3"], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn construct_then_play() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.el");
    let o = zol(&["construct", "m-cycle", "--m", "2", "--d", "5", "-o", a.to_str().unwrap()], &[]);
    assert!(o.status.success());
    let b = write(dir.path(), "b.el", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n");
    let t = dir.path().join("t.json");
    let o = zol(
        &["ehr", "--left", a.to_str().unwrap(), "--right", &b, "-k", "3", "--transcript", t.to_str().unwrap()],
        &[],
    );
    assert_eq!(stdout(&o).trim(), "spoiler");
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&t).unwrap()).unwrap();
    assert_eq!(doc["winner"], "spoiler");
    assert_eq!(doc["transcript"]["winner"], "spoiler");
    assert_eq!(doc["strategy"]["player"], "spoiler");

    let o = zol(&["construct", "figure-eight", "--m", "2", "--l1", "8", "--l2", "8"], &[]);
    assert!(stdout(&o).starts_with("15 16\n"));
    let o = zol(&["construct", "balanced", "--density", "3/2", "--vmax", "8"], &[]);
    assert!(stdout(&o).starts_with("4 6\n"));
}

#[test]
fn mc_run_seeds_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write(
        dir.path(),
        "suite.json",
        r#"{"experiments": [
            {"name": "tri", "n": 60, "p": 0.05, "pattern": "K3", "samples": 40, "seed": 3, "event": "has_copy",
             "threshold": {"min": 0.0}}
        ]}"#,
    );
    let out = dir.path().join("out");
    let args = ["mc-run", "--manifest", &manifest, "--out", out.to_str().unwrap(), "--threads", "2"];
    let first = zol(&args, &[]);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    assert!(stdout(&first).contains("seed=3"));
    let seeded = zol(&args, &[("ZOL_SEED", "99")]);
    assert!(stdout(&seeded).contains("seed=99"));
    let again = zol(&args, &[]);
    let freq = |o: &Output| stdout(o).split("freq=").nth(1).unwrap().split(' ').next().unwrap().to_string();
    assert_eq!(freq(&first), freq(&again));
    let csv = fs::read_to_string(out.join("results.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);

    let breach = write(
        dir.path(),
        "breach.json",
        r#"{"experiments": [{"n": 10, "p": 1.0, "pattern": "K3", "samples": 3, "seed": 1, "event": "has_copy",
             "threshold": {"max": 0.5}}]}"#,
    );
    let o = zol(&["mc-run", "--manifest", &breach], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("BREACH"));
    let empty = write(dir.path(), "empty.json", r#"{"experiments": []}"#);
    assert!(zol(&["mc-run", "--manifest", &empty], &[]).status.success());
    let bad = zol(&["mc-run", "--manifest", &manifest], &[("ZOL_SEED", "nope")]);
    assert_eq!(bad.status.code(), Some(2));
}
