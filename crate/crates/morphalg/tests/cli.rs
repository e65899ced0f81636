use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name);
    root.to_str().unwrap().to_owned()
}

fn morphalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_morphalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn certify_two_letter_word() {
    let spec = data("xy-yyx.morph");
    let o = morphalg(&["certify", "--spec", &spec, "--weights", "1,2", "--u", "xyy"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("gcd_sequence: 5,13"), "{out}");
    assert!(out.contains("verdict: CERTIFIED"), "{out}");
}

#[test]
fn certify_counterexample_is_negative() {
    let o = morphalg(&["certify", "--spec", &data("tm.morph"), "--weights", "1,2"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("verdict: NOT_APPLICABLE"), "{out}");
    assert!(out.contains("det=0"), "{out}");
}

#[test]
fn word_prints_prefix() {
    let o = morphalg(&[
        "word",
        "--spec",
        &data("xy-yyx.morph"),
        "--start",
        "x",
        "--length",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim_end(), "xyyyx");
}

#[test]
fn scan_flags_thue_morse() {
    let o = morphalg(&[
        "scan",
        "--spec",
        &data("tm.morph"),
        "--dmax",
        "4",
        "--horizons",
        "1000,10000",
    ]);
    let out = stdout(&o);
    assert!(out.contains("flagged: 3"), "{out}");
}

#[test]
fn empty_scan_exits_zero() {
    let o = morphalg(&["scan", "--spec", &data("tm.morph"), "--dmax", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn reports_are_byte_identical() {
    let spec = data("xyz-zx-yz.morph");
    let args = ["certify", "--spec", spec.as_str(), "--u", "xz"];
    let first = morphalg(&args);
    let second = morphalg(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).contains("gcd_sequence: 4,11"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(morphalg(&["bogus"]).status.code(), Some(2));
    assert_eq!(morphalg(&["certify"]).status.code(), Some(2));
    let o = morphalg(&["certify", "--spec", "/nonexistent.morph"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn free_cube_view() {
    let o = morphalg(&[
        "free",
        "--view",
        "cubes",
        "--alphabet",
        "xyzw",
        "--gen",
        "x+y",
        "--gen",
        "z+w",
        "--Lfree",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("rank: 31"), "{}", stdout(&o));
}

#[test]
fn growth_control_fails() {
    let o = morphalg(&["growth", "--period", "xy"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert_eq!(morphalg(&["growth"]).status.code(), Some(0));
}
