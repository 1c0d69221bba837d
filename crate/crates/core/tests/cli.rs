use std::process::{Command, Output};

use proptest::prelude::*;

fn mvtcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvtcheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn quadratic_rolle_report() {
    let o = mvtcheck(&[
        "verify",
        "--f",
        "x^2 - 4*x + 3",
        "--a",
        "1",
        "--b",
        "3",
        "--mode",
        "rolle",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Rolle's Theorem applies."), "{text}");
    assert!(text.contains("c = 2\n"), "{text}");
}

#[test]
fn sine_with_constant_endpoints_as_json() {
    let o = mvtcheck(&[
        "verify", "--f", "sin(x)", "--a", "0", "--b", "pi/2", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(json["status"], "applicable");
    assert_eq!(json["method"], "bracket_bisect");
    let c = json["c"].as_f64().unwrap();
    assert!((c.cos() - 2.0 / std::f64::consts::PI).abs() <= 1e-8);
}

#[test]
fn non_applicable_cases_exit_two() {
    for (f, a, b, reason) in [
        ("abs(x)", "-1", "1", "not_differentiable"),
        ("tan(x)", "0", "2", "not_continuous"),
        ("1/x", "-1", "1", "not_continuous"),
    ] {
        let o = mvtcheck(&["verify", "--f", f, "--a", a, "--b", b]);
        assert_eq!(o.status.code(), Some(2), "{f}");
        assert!(
            stdout(&o).contains("The Mean Value Theorem does not apply"),
            "{f}"
        );

        let o = mvtcheck(&["verify", "--f", f, "--a", a, "--b", b, "--json"]);
        assert_eq!(o.status.code(), Some(2), "{f}");
        let json: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(json["status"], "not_applicable");
        assert_eq!(json["reason"], reason);
    }
}

#[test]
fn rolle_precondition_failure_exits_two() {
    let o = mvtcheck(&[
        "verify", "--f", "x^2", "--a", "0", "--b", "1", "--mode", "rolle", "--json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        stdout(&o).trim(),
        r#"{"status":"not_applicable","reason":"rolle_precondition_failed"}"#
    );
}

#[test]
fn parse_errors_report_position() {
    let o = mvtcheck(&["verify", "--f", "4x", "--a", "0", "--b", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("position 1"), "{err}");
    assert!(err.contains("  4x\n   ^"), "{err}");

    let o = mvtcheck(&["eval", "--f", "foo(x)", "--x", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("position 0"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &[][..],
        &["bogus"],
        &["verify", "--f", "x"],
        &["verify", "--f", "x", "--a", "2", "--b", "1"],
        &[
            "verify",
            "--f",
            "x",
            "--a",
            "0",
            "--b",
            "1",
            "--samples",
            "1",
        ],
        &["verify", "--f", "x", "--a", "0", "--b", "1", "--eps", "-1"],
        &[
            "verify", "--f", "x", "--a", "0", "--b", "1", "--plot", "out.png",
        ],
        &["eval", "--f", "ln(x)", "--x", "0"],
    ] {
        let o = mvtcheck(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty() || args.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    for flag in ["--help", "--version"] {
        let o = mvtcheck(&[flag]);
        assert_eq!(o.status.code(), Some(0));
        assert!(!o.stdout.is_empty());
    }
}

#[test]
fn diff_and_eval() {
    let o = mvtcheck(&["diff", "--f", "x^2 - 4*x + 3"]);
    assert_eq!(stdout(&o), "((2 * x) - 4)\n");
    let o = mvtcheck(&["eval", "--f", "-x^2", "--x", "-3"]);
    assert_eq!(stdout(&o), "-9\n");
}

#[test]
fn plots_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("quad.csv");
    let svg = dir.path().join("quad.svg");
    for path in [&csv, &svg] {
        let o = mvtcheck(&[
            "verify",
            "--f",
            "x^2 - 4*x + 3",
            "--a",
            "1",
            "--b",
            "3",
            "--plot",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }

    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,f,secant,tangent"));
    assert_eq!(lines.next(), Some("1,0,0,-1"));
    assert_eq!(text.lines().last(), Some("3,0,0,-1"));
    assert!(!text.contains('\r'));

    let doc = std::fs::read_to_string(&svg).unwrap();
    assert!(doc.starts_with("<?xml") || doc.starts_with("<svg"));
    assert_eq!(doc.matches("<polyline").count(), 3);
    assert_eq!(doc.matches("<circle").count(), 1);
}

#[test]
fn not_applicable_plot_has_function_only() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("abs.csv");
    let o = mvtcheck(&[
        "verify",
        "--f",
        "abs(x)",
        "--a",
        "-1",
        "--b",
        "1",
        "--plot",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("x,f\n"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exit_codes_are_total(
        f in "[-+*/^() x0-9.]{0,12}|(sin|ln|sqrt|tan|abs|x|1|[()*+/^-]){1,8}",
        a in "-?[0-9]{1,2}|pi|-pi|x|",
        b in "[0-9]{1,2}|pi|e|2\\*pi",
        json in any::<bool>(),
    ) {
        let mut args = vec!["verify", "--f", &f, "--a", &a, "--b", &b];
        if json {
            args.push("--json");
        }
        let o = mvtcheck(&args);
        let code = o.status.code();
        prop_assert!(matches!(code, Some(0..=2)), "{:?}: {:?}", args, code);
    }
}
