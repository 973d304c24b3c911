//! End-to-end runs of the `modlie` binary.

use std::path::Path;
use std::process::{Command, Output};

fn modlie(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modlie"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn zoo_then_decompose_the_cycle_example() {
    let dir = tempfile::tempdir().unwrap();
    let o = modlie(&["zoo", "mattarei", "--p", "3"], dir.path());
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("summary=derived_length=2 nonnilpotent nonsingular"), "{out}");
    assert!(dir.path().join("mattarei_p3_k2.algebra.json").exists());

    let o = modlie(
        &[
            "decompose",
            "mattarei_p3_k2.algebra.json",
            "mattarei_p3_k2.derivation.json",
            "--out",
            "summands.json",
        ],
        dir.path(),
    );
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}");
    assert!(out.contains("dim_derived=3"), "{out}");
    assert!(out.contains("summands=1"), "{out}");
    assert!(out.contains("certificate=pass"), "{out}");
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summands.json")).unwrap()).unwrap();
    assert_eq!(doc["summands"].as_array().unwrap().len(), 1);
}

#[test]
fn max_class_over_gf4_reports_k_and_fails() {
    let dir = tempfile::tempdir().unwrap();
    let o = modlie(&["zoo", "maxclass", "--p", "2", "--k", "2"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("dim_K=3"), "{}", stdout(&o));
    let o = modlie(&["zoo", "maxclass", "--p", "2", "--k", "3"], dir.path());
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn heisenberg_cube_family() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&modlie(&["zoo", "heisp3", "--p", "2"], dir.path())), 2);
    let o = modlie(&["zoo", "heisp3", "--p", "3"], dir.path());
    // derived length is 2, not the stated 3
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict=fail"));
}

#[test]
fn decompose_rejects_bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&modlie(&["zoo", "heis2p", "--p", "3"], dir.path())), 0);
    // L/L' has dimension 2
    let o = modlie(&["decompose", "heis2p_p3_k2.algebra.json", "heis2p_p3_k2.derivation.json"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).starts_with("hypothesis="), "{}", stdout(&o));

    assert_eq!(code(&modlie(&["zoo", "mattarei", "--p", "5"], dir.path())), 0);
    let o = modlie(&["decompose", "mattarei_p5_k2.algebra.json", "heis2p_p3_k2.derivation.json"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("error="), "{}", stdout(&o));

    let o = modlie(&["decompose", "missing.json", "missing.json"], dir.path());
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_suites() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["verify", "roundtrip", "--trials", "20"][..],
        &["verify", "thm1_8", "--p", "5", "--trials", "20"],
        &["verify", "leibniz"],
        &["verify", "primary", "--seed", "3", "--trials", "20"],
    ] {
        let o = modlie(args, dir.path());
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).contains("verdict=pass"));
    }
    assert_eq!(code(&modlie(&["verify", "nonsense"], dir.path())), 2);
    assert_eq!(code(&modlie(&["bogus"], dir.path())), 2);
}

#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = modlie(&["verify", "lemma4_1_16", "--seed", "9", "--trials", "15"], dir.path());
    let b = modlie(&["verify", "lemma4_1_16", "--seed", "9", "--trials", "15"], dir.path());
    assert_eq!(stdout(&a), stdout(&b));
}
