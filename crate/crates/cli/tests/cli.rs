use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn contextus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contextus"))
        .args(args)
        .env_remove("CONTEXTUS_COLOR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn scenarios_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("contextus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn pentagram_parity_is_inconsistent() {
    let out = contextus(&["pentagram"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("certificate: rows 1, 2, 3, 4, 5"), "{text}");
    assert!(text.trim_end().ends_with("verdict: INCONSISTENT"), "{text}");
}

#[test]
fn pentagram_all_faces() {
    let out = contextus(&[
        "pentagram",
        "--state-dependent",
        "--presheaf",
        "--pspec",
        "--algebra",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("generated algebra dimension 64 ≅ M₈(ℂ)"),
        "{text}"
    );
    assert!(text.contains("functor has no points"), "{text}");
    assert!(
        text.contains("global sections of the spectral presheaf: 0"),
        "{text}"
    );
    assert!(
        text.contains("GHZ support presheaf, all four contexts: 0 global sections"),
        "{text}"
    );
}

#[test]
fn shipped_scenarios_match_export() {
    for name in ["ghz", "prbox"] {
        let out = contextus(&["export-scenario", name]);
        assert_eq!(out.status.code(), Some(0));
        let shipped = std::fs::read(scenarios_dir().join(format!("{name}.scenario.json"))).unwrap();
        assert_eq!(out.stdout, shipped, "{name}");
    }
}

#[test]
fn scenario_levels() {
    for name in ["ghz", "prbox"] {
        let path = scenarios_dir().join(format!("{name}.scenario.json"));
        let out = contextus(&["scenario", path.to_str().unwrap(), "--level"]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        assert_eq!(stdout(&out), "STRONG\n");
    }
}

#[test]
fn scenario_rejects_signalling_and_malformed_files() {
    let path = scenarios_dir().join("prbox.scenario.json");
    let text = std::fs::read_to_string(path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let tampered = scratch("signalling.json");
    std::fs::write(&tampered, tamper(value).to_string()).unwrap();
    let out = contextus(&["scenario", tampered.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stdout(&out).contains("verdict: VIOLATION"),
        "{}",
        stdout(&out)
    );

    let broken = scratch("broken.json");
    std::fs::write(&broken, "{\n  \"observables\": [1,").unwrap();
    let out = contextus(&["scenario", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("line 2, column"), "{err}");
    assert_eq!(err.matches("line 2").count(), 1, "{err}");
}

// Moves all weight of the first context onto its first row, which breaks the
// marginals shared with the neighbouring contexts.
fn tamper(mut value: serde_json::Value) -> serde_json::Value {
    let table = value["model"][0]["rows"]
        .as_object_mut()
        .expect("rows object");
    for (i, (_, p)) in table.iter_mut().enumerate() {
        *p = serde_json::Value::String(if i == 0 { "1".into() } else { "0".into() });
    }
    value
}

#[test]
fn avn_examples() {
    let out = contextus(&["avn", "--generators", "XXX;XYY;YXY", "--state", "ghz"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("AvN triple: yes"));
    assert!(stdout(&out).contains("verdict: STRONG"));

    let out = contextus(&["avn", "--generators", "XXX;XYY;YXY"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict: INCONSISTENT"));

    let out = contextus(&["avn", "--generators", "III"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict: CONSISTENT"));

    let out = contextus(&["avn", "--generators", "XX;XZ"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("do not commute"));

    let out = contextus(&["avn", "--generators", "XXX;XQX"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("offset 5"), "{}", stderr(&out));
}

#[test]
fn roots_closure_and_colouring() {
    let out = contextus(&["roots", "--complete", "--identify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(
        stdout(&out).contains("40 rays → 240 roots; diagram: E8"),
        "{}",
        stdout(&out)
    );

    let out = contextus(&["roots", "--colouring"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("orthogonal bases among the rays: 25"),
        "{text}"
    );
    assert!(text.contains("verdict: INFEASIBLE"), "{text}");

    let path = scratch("roots.txt");
    let out = contextus(&["roots", "--export", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 240);
}

#[test]
fn colour_and_json_output() {
    let plain = contextus(&["pentagram"]);
    assert!(!stdout(&plain).contains('\x1b'));
    let coloured = Command::new(env!("CARGO_BIN_EXE_contextus"))
        .arg("pentagram")
        .env("CONTEXTUS_COLOR", "always")
        .output()
        .unwrap();
    assert!(stdout(&coloured).contains("\x1b[1;32m"));

    let out = contextus(&["pentagram", "--json"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["verdict"], "INCONSISTENT");
    assert_eq!(value["exit_code"], 0);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["pentagram", "--presheaf"][..],
        &["roots", "--colouring"],
        &["avn", "--generators", "XXX;XYY;YXY", "--state", "ghz"],
    ] {
        assert_eq!(contextus(args).stdout, contextus(args).stdout, "{args:?}");
    }
}
