//! Golden-file tests: every subcommand's output is compared byte-for-byte
//! against a checked-in snapshot. Refresh with KLEINIAN_UPDATE_GOLDEN=1.

use std::path::PathBuf;
use std::process::Command;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join("v1")
}

fn run(args: &[&str]) -> (String, bool) {
    let out = Command::new(env!("CARGO_BIN_EXE_kleinian"))
        .args(args)
        .env_remove("KLEINIAN_SEQUENTIAL")
        .output()
        .expect("spawn kleinian");
    (
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        out.status.success(),
    )
}

fn check(name: &str, args: &[&str]) {
    let (got, ok) = run(args);
    assert!(ok, "{name}: command failed");
    let path = golden_dir().join(format!("{name}.golden"));
    if std::env::var("KLEINIAN_UPDATE_GOLDEN").as_deref() == Ok("1") {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing {}; run with KLEINIAN_UPDATE_GOLDEN=1", path.display()));
    assert_eq!(got, want, "{name}: output differs from golden file");
}

#[test]
fn golden_group_c4() {
    check("group_c4", &["group", "C4"]);
}

#[test]
fn golden_group_2t_latex() {
    check("group_2t_latex", &["group", "2T", "--emit", "latex"]);
}

#[test]
fn golden_kleinian_bd2() {
    check("kleinian_bd2", &["kleinian", "BD2"]);
}

#[test]
fn golden_kleinian_c4_latex() {
    check("kleinian_c4_latex", &["kleinian", "C4", "--emit", "latex"]);
}

#[test]
fn golden_deform_c4() {
    check("deform_c4", &["deform", "C4"]);
}

#[test]
fn golden_pair_c2_c4() {
    check("pair_c2_c4", &["pair", "--g1", "C2", "--g2", "C4"]);
}

#[test]
fn golden_pair_c4_bd2() {
    check("pair_c4_bd2", &["pair", "--g1", "C4", "--g2", "BD2"]);
}

#[test]
fn golden_fold_c4_bd2() {
    check("fold_c4_bd2", &["fold", "--g1", "C4", "--g2", "BD2"]);
}

#[test]
fn golden_fold_2t() {
    check("fold_2t", &["fold", "2T"]);
}

#[test]
fn golden_cbh_c3() {
    check(
        "cbh_c3",
        &["cbh", "C3", "--degree", "6", "--param", "t1=1,t2=1/2,z=0"],
    );
}

#[test]
fn golden_cbh_c2_formal() {
    check("cbh_c2_formal", &["cbh", "C2", "--formal"]);
}

#[test]
fn golden_catalog() {
    check("catalog", &["catalog"]);
}

#[test]
fn deterministic_rerun() {
    let args = ["pair", "--g1", "C4", "--g2", "BD2"];
    let (a, ok1) = run(&args);
    let (b, ok2) = run(&args);
    assert!(ok1 && ok2);
    assert_eq!(a, b, "re-run output must be byte-identical");
}

#[test]
fn sequential_mode_agrees() {
    let args = ["verify", "--suite", "goldens"];
    let out_par = Command::new(env!("CARGO_BIN_EXE_kleinian"))
        .args(args)
        .env_remove("KLEINIAN_SEQUENTIAL")
        .output()
        .unwrap();
    let out_seq = Command::new(env!("CARGO_BIN_EXE_kleinian"))
        .args(args)
        .env("KLEINIAN_SEQUENTIAL", "1")
        .output()
        .unwrap();
    assert!(out_par.status.success() && out_seq.status.success());
    assert_eq!(out_par.stdout, out_seq.stdout);
}

#[test]
fn bad_input_fails_cleanly() {
    let (_, ok) = run(&["group", "XYZ"]);
    assert!(!ok);
    let (_, ok) = run(&["verify", "--suite", "bogus"]);
    assert!(!ok);
}
