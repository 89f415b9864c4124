use std::path::PathBuf;
use std::process::{Command, Output};

fn cgv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgv"))
        .args(args)
        .output()
        .expect("spawn cgv")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch_file(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("cgv-test-{}-{name}", std::process::id()))
}

#[test]
fn eval_prints_canonical_values() {
    for (expr, want) in [
        ("r^3+r^2", "1"),
        ("9*r^6-12*r^5+4*r^4+6*r^3+11*r^2-25*r+10", "0"),
        ("(3*r-2)*(r+1)", "-2 + r + 3*r^2"),
        ("-X^2", "-X^2"),
        ("(X+Y)^2 - X^2 - Y^2", "2*X*Y"),
    ] {
        let o = cgv(&["eval", expr]);
        assert_eq!(o.status.code(), Some(0), "{expr}: {}", stderr(&o));
        assert_eq!(stdout(&o).trim_end(), want, "{expr}");
    }
}

#[test]
fn eval_reports_parse_position() {
    let o = cgv(&["eval", "X + * Y"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("offset 4"), "{err}");
    assert!(err.contains("      ^"), "{err}");
}

#[test]
fn refutations_do_not_change_the_exit_code() {
    let o = cgv(&["check", "base-locus"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("[refuted] base-locus.det-T.m-free"), "{text}");
    assert!(text.contains("errors=0"), "{text}");
}

#[test]
fn divisors_suite_confirms_four_checks() {
    let o = cgv(&["check", "divisors"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summary: confirmed=4 refuted=0"), "{}", stdout(&o));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = cgv(&["check", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("unknown suite 'nonsense'"), "{err}");
    assert!(err.contains("usage: cgv check"), "{err}");
}

#[test]
fn malformed_m_is_a_usage_error_with_diagnostics() {
    let o = cgv(&["check", "sigma", "--m", "r +"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("syntax error"), "{err}");
    assert!(err.contains('^'), "{err}");
    let o = cgv(&["check", "sigma", "--m", "X"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn invalid_sizes_are_usage_errors() {
    assert_eq!(cgv(&["check", "tangent", "--survey", "0"]).status.code(), Some(2));
    assert_eq!(cgv(&["check", "pencil", "--bound", "0"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_fails_with_status_one() {
    let o = cgv(&["check", "sigma", "--out", "/nonexistent-dir/report.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cannot write"));
}

#[test]
fn json_report_follows_the_schema() {
    let o = cgv(&["check", "genus", "--format", "json", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "genus");
    assert_eq!(v["config"]["m"], "2");
    assert_eq!(v["config"]["seed"], "1");
    assert_eq!(v["config"]["survey"], "100");
    assert_eq!(v["config"]["bound"], "5");
    for key in ["confirmed", "refuted", "indeterminate", "errors"] {
        assert!(v["summary"][key].is_string(), "summary.{key}");
    }
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        let obj = c.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        for key in ["check-id", "computed", "paper-claim", "agreement", "notes", "elapsed"] {
            assert!(keys.contains(&key), "missing {key} in {c}");
        }
        assert_eq!(keys.len(), 6, "{c}");
        assert!(c["elapsed"].is_null());
        if let Some(claim) = c["paper-claim"].as_object() {
            assert!(claim["value"].is_string() && claim["citation"].is_string());
        }
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for format in ["text", "json"] {
        let a = cgv(&["check", "all", "--format", format]);
        let b = cgv(&["check", "all", "--format", format]);
        assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
}

#[test]
fn out_writes_the_same_bytes_as_stdout() {
    let path = scratch_file("tangent.json");
    let o = cgv(&["check", "tangent", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, cgv(&["check", "tangent", "--format", "json"]).stdout);
}

#[test]
fn seed_and_survey_are_echoed() {
    let a = stdout(&cgv(&["check", "tangent", "--seed", "7", "--survey", "20"]));
    assert!(a.contains("seed=7 survey=20"), "{a}");
    assert!(a.contains("[confirmed] tangent.rank-survey"), "{a}");
}
