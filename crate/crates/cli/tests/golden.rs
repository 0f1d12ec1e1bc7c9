//! Each golden file starts with `args: ...` and `exit: N`, followed by the exact stdout.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn golden_dir() -> PathBuf {
    std::env::var_os("PIN2HOMALG_GOLDEN_DIR").map(PathBuf::from).unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pin2homalg")).args(args).current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn golden_outputs_regenerate() {
    let bless = std::env::var_os("PIN2HOMALG_BLESS").is_some();
    let mut files: Vec<PathBuf> =
        fs::read_dir(golden_dir()).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|e| e == "golden")).collect();
    files.sort();
    assert!(files.len() >= 6);
    for path in files {
        let text = fs::read_to_string(&path).unwrap();
        let mut lines = text.splitn(3, '\n');
        let args: Vec<&str> = lines.next().unwrap().strip_prefix("args: ").unwrap().split_whitespace().collect();
        let exit: i32 = lines.next().unwrap().strip_prefix("exit: ").unwrap().parse().unwrap();
        let expected = lines.next().unwrap_or("");
        let (code, stdout, stderr) = run(&args);
        if bless {
            fs::write(&path, format!("args: {}\nexit: {code}\n{stdout}", args.join(" "))).unwrap();
            continue;
        }
        assert_eq!(code, exit, "{}: {stderr}", path.display());
        assert_eq!(stdout, expected, "{}", path.display());
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["massey", "crates/cli/fixtures/strict_dga.json", "a", "b", "c", "--seed", "3", "--format", "json"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["polytope", "K", "4", "--f-vector"]).0, 0);
    let (code, _, err) = run(&["tor", "--left", "Nope", "--right", "F"]);
    assert_eq!(code, 3);
    assert!(err.contains("Nope"));
    assert_eq!(run(&["tor", "--left", "F"]).0, 3);
    assert_eq!(run(&["check", "crates/cli/fixtures/missing.json"]).0, 3);
    let (code, _, err) =
        run(&["ss", "--left", "HS2311", "--right", "HS2311", "--window", "-7:3", "--nmax", "0", "--pattern", "crates/ssq/data/two_y_endgame.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("(0, 1)"), "{err}");
}

#[test]
fn mutated_structure_fails_check() {
    let dir = std::env::temp_dir().join(format!("pin2homalg-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let mut j: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/toy_module.json")).unwrap()).unwrap();
    j["ops"]["1,3"].as_array_mut().unwrap().pop();
    let path = dir.join("broken.json");
    fs::write(&path, j.to_string()).unwrap();
    let (code, out, err) = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 2, "{out}");
    assert!(out.contains("fail") && err.contains("residue"));
}

#[test]
fn json_formats_parse() {
    for args in [
        vec!["tor", "--left", "R", "--right", "N", "-p", "4", "--window", "-12:0", "--nmax", "2", "--format", "json"],
        vec!["polytope", "J", "4", "--format", "json"],
        vec!["check", "crates/cli/fixtures/toy_module.json", "--format", "json"],
        vec!["massey", "crates/cli/fixtures/r_candidate.json", "Q2", "Q", "Q2", "Q", "-p", "3", "--format", "json"],
    ] {
        let (code, out, _) = run(&args);
        assert_eq!(code, 0, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v.is_object());
    }
}
