use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn knottab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knottab")).args(args).env_remove("KNOT_WORKERS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tab(dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["tabulate", "--out", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    knottab(&args)
}

#[test]
fn tabulate_six() {
    let dir = tempfile::tempdir().unwrap();
    let o = tab(dir.path(), &["--max-crossings", "6", "--max-group", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(dir.path().join("table.csv")).unwrap(), "0,1\n1,0\n2,0\n3,1\n4,1\n5,2\n6,3\n");
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["classes"], 8);
    assert_eq!(manifest["sha256"].as_object().unwrap().len(), 3);
    assert!(dir.path().join("merges.log").exists());
}

#[test]
fn tabulate_zero_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = tab(dir.path(), &["--max-crossings", "0", "--max-group", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(dir.path().join("table.csv")).unwrap(), "0,1\n");
    let o = tab(dir.path(), &["--max-crossings", "3", "--format", "json", "--workers", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("table.json")).unwrap()).unwrap();
    assert_eq!(rows[3]["classes"], 1);
}

#[test]
fn invalid_configs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(tab(dir.path(), &["--max-crossings", "-1"]).status.code(), Some(2));
    assert_eq!(tab(dir.path(), &["--max-crossings", "3", "--max-group", "0"]).status.code(), Some(2));
    assert_eq!(tab(dir.path(), &["--max-crossings", "3", "--resume"]).status.code(), Some(2));
}

#[test]
fn budget_then_resume_matches_a_full_run() {
    let full = tempfile::tempdir().unwrap();
    let part = tempfile::tempdir().unwrap();
    assert_eq!(tab(full.path(), &["--max-crossings", "7"]).status.code(), Some(0));
    let o = tab(part.path(), &["--max-crossings", "7", "--budget-seconds", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(part.path().join("checkpoint.json").exists());
    let o = tab(part.path(), &["--max-crossings", "7", "--resume"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!part.path().join("checkpoint.json").exists());
    for f in ["table.csv", "knots.txt", "merges.log", "manifest.json"] {
        assert_eq!(fs::read(full.path().join(f)).unwrap(), fs::read(part.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn printed_codes_check_as_drawable_and_prime() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(tab(dir.path(), &["--max-crossings", "6"]).status.code(), Some(0));
    let knots = fs::read_to_string(dir.path().join("knots.txt")).unwrap();
    for line in knots.lines() {
        let code = line.split('\t').nth(1).unwrap();
        let report = stdout(&knottab(&["check", code]));
        assert!(report.contains("\nDRAWABLE\n"), "{code}: {report}");
        assert!(report.contains("prime: yes"), "{code}: {report}");
    }
}

#[test]
fn check_reports() {
    let o = knottab(&["check", "1,3 2,4"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout(&o);
    assert!(r.contains("UNDRAWABLE") && r.contains("witness:"), "{r}");
    let r = stdout(&knottab(&["check", "1,4 3,6 5,2"]));
    assert!(r.contains("\nDRAWABLE\n") && r.contains("prime: yes") && r.contains("canonical: 3 ;"), "{r}");
    assert!(r.contains("dt: 4 6 2"), "{r}");
    let r = stdout(&knottab(&["check", ""]));
    assert!(r.contains("crossings: 0") && r.contains("DRAWABLE"), "{r}");
    assert_eq!(knottab(&["check", "1,1"]).status.code(), Some(2));
}

#[test]
fn invariant_certificates() {
    let o = knottab(&["invariants", "1,4 3,6 5,2", "--q", "3"]);
    assert_eq!(stdout(&o), "alexander: 1 -1 1 ; colorings(affine 3,2): 9\n");
    assert_eq!(stdout(&knottab(&["invariants", ""])), "alexander: 1\n");
    assert_eq!(knottab(&["invariants", "1,3 2,4"]).status.code(), Some(2));
    let r = stdout(&knottab(&["invariants", "1,4 3,6 5,8 7,2", "--conway", "--skein", "1,-1,1"]));
    assert_eq!(r, "alexander: 1 -3 1 ; conway: 1 0 -1 ; skein(1,-1,1): 0\n");
}

#[test]
fn notations() {
    let r = stdout(&knottab(&["braid", "4 1 1 1 2 3 3 3"]));
    assert!(r.contains("components: 1") && r.contains("generator 2"), "{r}");
    assert_eq!(stdout(&knottab(&["saw", "1 2 -1 -2"])), "VALID\n");
    assert_eq!(stdout(&knottab(&["saw", "1 1 -1 -1"])), "INVALID\n");
    assert_eq!(knottab(&["braid", "2 5"]).status.code(), Some(2));
}
