//! End-to-end runs of the bmx binary: exit codes, output shapes, and the
//! documented file side effects.

use std::process::{Command, Output};

use bmx_core::catalogue::bootstrap;

fn bmx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmx"))
        .args(args)
        .env_remove("BMX_CACHE_LIMIT")
        .output()
        .expect("binary runs")
}

fn bmx_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmx"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn count_rank_six_hits_the_census() {
    let out = bmx(&["count", "--rank", "6", "--csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "475499108");
    let human = bmx(&["count", "--rank", "6"]);
    assert_eq!(code(&human), 0);
    assert!(stdout(&human).contains("475499108"), "{}", stdout(&human));
}

#[test]
fn count_per_size_and_rank_zero() {
    let out = bmx(&["count", "--rank", "2", "--per-size", "--csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "size,count\n0,1\n1,1\n2,1\n3,1\n");
    let zero = bmx(&["count", "--rank", "0", "--csv"]);
    assert_eq!(code(&zero), 0);
    assert_eq!(stdout(&zero).trim(), "1");
}

#[test]
fn usage_failures_exit_64() {
    for args in [
        &["count", "--rank", "9"][..],
        &["catalogue", "build", "--rank", "0", "--max-size", "0", "--out", "/tmp/x"],
        &["catalogue", "build", "--rank", "4", "--max-size", "20", "--out", "/tmp/x"],
        &["catalogue", "build", "--rank", "2", "--max-size", "3", "--out", "/tmp/x", "--workers", "0"],
        &["count", "--bogus"],
        &[],
        &["minor", "--in", "/nonexistent/m.bmx", "--target", "f7"],
    ] {
        let out = bmx(args);
        assert_eq!(code(&out), 64, "args {args:?}: {}", stderr(&out));
    }
}

#[test]
fn help_exits_zero() {
    let out = bmx(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("Usage"));
}

#[test]
fn catalogue_build_writes_a_loadable_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r2.bmcat");
    let out = bmx(&["catalogue", "build", "--rank", "2", "--max-size", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    for line in ["r=0 k=0 n=1", "r=1 k=1 n=1", "r=2 k=2 n=1", "r=2 k=3 n=1"] {
        assert!(text.contains(line), "{text}");
    }
    assert!(text.contains("total 4 classes"), "{text}");
    assert_eq!(bmx::files::load_catalogue(&path).unwrap(), bootstrap(2, 3, true));

    // a rerun produces byte-identical output
    let again = dir.path().join("again.bmcat");
    let out = bmx(&["catalogue", "build", "--rank", "2", "--max-size", "3", "--out", again.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn member_limit_aborts_with_a_partial_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("partial.bmcat");
    let out = bmx(&[
        "catalogue", "build", "--rank", "4", "--max-size", "11",
        "--member-limit", "5", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2, "{}", stderr(&out));
    assert!(stderr(&out).contains("aborted at member limit"), "{}", stderr(&out));
    let partial = bmx::files::load_catalogue(&path).unwrap();
    assert!(partial.total() > 5);
    assert!(partial.strata().any(|(_, _, st)| !st.is_complete()));
}

#[test]
fn construct_minor_iso_flow() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name);
    let path = |name: &str| p(name).to_str().unwrap().to_owned();

    let out = bmx(&["construct", "--name", "ag32", "--out", &path("a.bmx")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "wrote ag32: rank 4, 8 points");

    let out = bmx(&["minor", "--in", &path("a.bmx"), "--target", "ag32"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "yes"));

    assert_eq!(code(&bmx(&["construct", "--name", "f7", "--out", &path("f.bmx")])), 0);
    let out = bmx(&["minor", "--in", &path("f.bmx"), "--target", "f7dual"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "no"));
    let out = bmx(&["minor", "--in", &path("f.bmx"), "--target", "f7"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "yes"));

    let out = bmx(&["iso", "--a", &path("f.bmx"), "--b", &path("f.bmx")]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "yes"));
    assert_eq!(code(&bmx(&["construct", "--name", "mk", "--param", "4", "--out", &path("m.bmx")])), 0);
    let out = bmx(&["iso", "--a", &path("f.bmx"), "--b", &path("m.bmx")]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "no"));

    let out = bmx(&["construct", "--name", "gpc_f7", "--param", "7", "--out", &path("g.bmx")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "wrote gpc_f7: rank 7, 25 points");
}

#[test]
fn construct_rejects_bad_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.bmx");
    let out_str = out_path.to_str().unwrap();
    for (args, need) in [
        (&["construct", "--name", "pg", "--param", "99", "--out", out_str][..], "out of range"),
        (&["construct", "--name", "mk", "--out", out_str], "needs --param"),
        (&["construct", "--name", "ag32", "--param", "3", "--out", out_str], "takes no --param"),
        (&["construct", "--name", "zzz", "--out", out_str], "known:"),
    ] {
        let out = bmx(args);
        assert_eq!(code(&out), 64, "args {args:?}");
        assert!(stderr(&out).contains(need), "args {args:?}: {}", stderr(&out));
        assert!(!out_path.exists(), "args {args:?} must not write");
    }
}

#[test]
fn cache_limit_env_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("a.bmx");
    assert_eq!(code(&bmx(&["construct", "--name", "ag32", "--out", m.to_str().unwrap()])), 0);
    let ok = bmx_with_env(&["minor", "--in", m.to_str().unwrap(), "--target", "ag32"], "BMX_CACHE_LIMIT", "64");
    assert_eq!((code(&ok), stdout(&ok).trim()), (0, "yes"));
    let bad = bmx_with_env(&["minor", "--in", m.to_str().unwrap(), "--target", "ag32"], "BMX_CACHE_LIMIT", "abc");
    assert_eq!(code(&bad), 64);
    assert!(stderr(&bad).contains("not a number"), "{}", stderr(&bad));
}

#[test]
fn verify_paper_quick_passes() {
    let out = bmx(&["verify-paper", "--level", "quick", "--workers", "2"]);
    assert_eq!(code(&out), 0, "{}\n{}", stdout(&out), stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("checks passed"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

// io failures on the output side also map to the usage exit code
#[test]
fn unwritable_output_is_reported() {
    let out = bmx(&["construct", "--name", "f7", "--out", "/nonexistent/dir/f.bmx"]);
    assert_eq!(code(&out), 64);
    assert!(stderr(&out).contains("writing"), "{}", stderr(&out));
}
