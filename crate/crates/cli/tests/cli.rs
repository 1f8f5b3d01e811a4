use std::path::Path;
use std::process::{Command, Output};

fn boolsig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boolsig")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn sign_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("alice");
    let out = boolsig(&["keygen", "--params", "n=12", "--seed", "5", "-o", path(&prefix)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (public, key) = (dir.path().join("alice.pub"), dir.path().join("alice.key"));
    assert!(public.exists() && key.exists());

    let sig = dir.path().join("msg.sig");
    let out = boolsig(&["sign", "--key", path(&key), "--text", "pay bob 5", "--seed", "6", "-o", path(&sig)]);
    assert!(out.status.success());

    let verify = |text: &str| {
        boolsig(&["verify", "--pub", path(&public), "--text", text, "--sig", path(&sig), "--trials", "exhaustive"])
    };
    let ok = verify("pay bob 5");
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("decision    : accept"));
    // exhaustive counting of an honest signature gives identical counts
    assert!(stdout(&ok).contains("difference  : 0"));
}

#[test]
fn message_file_and_text_are_equivalent() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("k");
    boolsig(&["keygen", "--params", "test", "--seed", "1", "-o", path(&prefix)]);
    let msg = dir.path().join("m.txt");
    std::fs::write(&msg, "same bytes").unwrap();
    let a = boolsig(&["sign", "--key", path(&dir.path().join("k.key")), "--message", path(&msg), "--seed", "2"]);
    let b = boolsig(&["sign", "--key", path(&dir.path().join("k.key")), "--text", "same bytes", "--seed", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn keygen_is_reproducible_with_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a", "b"] {
        boolsig(&["keygen", "--params", "n=9", "--seed", "42", "-o", path(&dir.path().join(name))]);
    }
    let read = |f: &str| std::fs::read_to_string(dir.path().join(f)).unwrap();
    assert_eq!(read("a.pub"), read("b.pub"));
    assert_eq!(read("a.key"), read("b.key"));
}

#[test]
fn foreign_signature_gets_a_decision() {
    // a signature made with an unrelated key is a valid file; the verifier
    // must decide (accept or reject) rather than fail
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("k");
    boolsig(&["keygen", "--params", "n=10", "--seed", "3", "-o", path(&prefix)]);
    let other = dir.path().join("o");
    boolsig(&["keygen", "--params", "n=10", "--seed", "4", "-o", path(&other)]);
    let sig = dir.path().join("s");
    boolsig(&["sign", "--key", path(&dir.path().join("o.key")), "--text", "x", "--seed", "1", "-o", path(&sig)]);
    let out = boolsig(&[
        "verify", "--pub", path(&dir.path().join("k.pub")), "--text", "x", "--sig", path(&sig), "--trials", "exhaustive",
    ]);
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
}

#[test]
fn errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("k");
    boolsig(&["keygen", "--params", "n=10", "--seed", "8", "-o", path(&prefix)]);
    let sig = dir.path().join("s");
    boolsig(&["sign", "--key", path(&dir.path().join("k.key")), "--text", "one", "--seed", "1", "-o", path(&sig)]);

    let bad = boolsig(&[
        "verify", "--pub", path(&dir.path().join("k.pub")), "--text", "one", "--sig", path(&sig), "--trials",
        "exhaustive", "--threshold", "0",
    ]);
    assert_eq!(bad.status.code(), Some(2), "threshold 0 is invalid");

    let missing = boolsig(&["verify", "--pub", "/nonexistent", "--text", "one", "--sig", path(&sig)]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("error"));

    std::fs::write(&sig, "nvars=3\n1:1\n").unwrap();
    let malformed = boolsig(&["verify", "--pub", path(&dir.path().join("k.pub")), "--text", "one", "--sig", path(&sig)]);
    assert_eq!(malformed.status.code(), Some(2));
}

#[test]
fn analyze_commands() {
    let dim = boolsig(&["analyze", "dimension", "--record"]);
    assert_eq!(stdout(&dim).trim(), "nvars=31 max_degree=27 at_most=26252279997448736 exactly=14031391033119152");
    let trials = boolsig(&["analyze", "trials"]);
    assert_eq!(stdout(&trials).trim(), "required trials : 3023");

    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("k");
    boolsig(&["keygen", "--params", "n=9", "--seed", "1", "-o", path(&prefix)]);
    let size = boolsig(&["analyze", "size", "--pub", path(&dir.path().join("k.pub")), "--record"]);
    assert!(stdout(&size).starts_with("kind=public variable_occurrences="));
    assert_eq!(boolsig(&["analyze", "size"]).status.code(), Some(2));
}
