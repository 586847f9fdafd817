use std::process::Command;

use dynprim::algebra::{PrimeField, Rationals};
use dynprim::dynsys::DegreeCap;
use dynprim_cli::expr::{eval, parse_expr, parse_xpoly};
use dynprim_cli::report::Report;

const CORPUS: [&str; 50] = [
    "0",
    "1",
    "t",
    "x",
    "-t",
    "--x",
    "x^2",
    "x^0",
    "t^12",
    "1/2",
    "-3/4",
    "x^3 + t*x + 1",
    "x^3 + ((-3*t^3-3*t)/(3*t^2+2))*x^2 + t",
    "x^2 + (1/2)*x",
    "(x - t^2)^2 + 2*t^2 + t",
    "(x - t)^2 + 3*t",
    "x^5 + x^4 + t",
    "x^3+t*x^2+t*x+1",
    "1 - 2 - 3",
    "1 - (2 - 3)",
    "2*3*4",
    "2*(3*4)",
    "12/3/2",
    "12/(3/2)",
    "(-x)^2",
    "-x^2",
    "-(x + 1)",
    "(t + 1)^3*x - t",
    "x*(x + 1)*(x + 2)",
    "(x^2 + t)^2 + t",
    "((x^2 + t)^2 + t)^2 + t",
    "t/(t + 1)*x",
    "(t^2 - 1)/(t - 1)",
    "x/t + x/(t + 1)",
    "(x + 1/t)^2",
    "5*x^7 - 7*x^5 + t^3",
    "x^4 - 2*t*x^2 + t^2",
    "(2*t + 1)*x^2 - (t - 1)",
    "x^2 - x + 1/3",
    "3*(x - 1)*(x + 1)",
    "-(1/2)*x^3 + (1/2)*t",
    "(((x)))",
    "x^6 + t*x^2 + (t^2 + 1)/(t^3 - 2)",
    "(t^3 + t)^2",
    "100000000000000000000*x + 1",
    "x - -t",
    "2^10*x",
    "(x + t)*(x - t) - x^2",
    "(1 + t + t^2 + t^3)*x^2 + (4 - t)*x",
    "-(-(-x))",
];

#[test]
fn expression_round_trip() {
    let cap = DegreeCap::default();
    for src in CORPUS {
        let tree = parse_expr(src).unwrap_or_else(|e| panic!("{src}: {e}"));
        // The printed tree reparses to the same tree.
        let printed = tree.to_string();
        assert_eq!(parse_expr(&printed).unwrap(), tree, "{src} -> {printed}");
        // The canonical form of the value reparses to the same value.
        let value = eval(&tree, Rationals, cap).unwrap();
        let canon = value.display_var("x").to_string();
        assert_eq!(parse_xpoly(&canon, Rationals, cap).unwrap(), value, "{src} -> {canon}");
        let f7 = PrimeField::new(7).unwrap();
        if let Ok(v7) = eval(&tree, f7, cap) {
            let canon7 = v7.display_var("x").to_string();
            assert_eq!(parse_xpoly(&canon7, f7, cap).unwrap(), v7);
        }
    }
}

fn dynprim(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dynprim"))
        .args(args)
        .env_remove("DYNPRIM_DEGREE_CAP")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn without_timing(r: &Report) -> Report {
    Report { elapsed_ms: 0.0, ..r.clone() }
}

#[test]
fn json_reports_round_trip_and_repeat() {
    let runs: [&[&str]; 6] = [
        &["--json", "riccati", "--phi", "x^3+t*x^2+t*x+1"],
        &["--json", "family", "certify", "--p", "3", "--levels", "3"],
        &["--json", "density", "scan", "--d", "1", "--B", "1", "--nmax", "4", "--workers", "2"],
        &["--json", "zsigmondy", "--phi", "x^3+t", "--b", "0", "--p", "5", "--nmax", "4"],
        &["--json", "trinomial", "--d", "3", "--s", "1", "--A", "t", "--B", "1", "--place", "t"],
        &["--json", "factor", "--poly", "(t^2+1)^2*(t-2)", "--p", "5", "--seed", "3"],
    ];
    for args in runs {
        let (code, out, err) = dynprim(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        let r = Report::from_json(&out).unwrap();
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        let (_, again, _) = dynprim(args);
        let r2 = Report::from_json(&again).unwrap();
        assert_eq!(without_timing(&r).to_json(), without_timing(&r2).to_json(), "{args:?}");
    }
}

#[test]
fn riccati_example() {
    let (code, out, _) = dynprim(&["--json", "riccati", "--phi", "x^3+t*x^2+t*x+1"]);
    assert_eq!(code, 0);
    let r = Report::from_json(&out).unwrap();
    assert_eq!(r.result["delta"], "-2*t^2 + 6*t");
    assert_eq!(r.result["solution"]["matrix_residual"], serde_json::json!(["0", "0", "0"]));
}

#[test]
fn exit_codes() {
    assert_eq!(dynprim(&["density", "bounds", "--d", "3"]).0, 0);
    // Inconclusive verdicts still complete.
    assert_eq!(dynprim(&["riccati", "--phi", "x^3 + 1"]).0, 0);
    let (code, _, err) = dynprim(&["riccati", "--phi", "x^3 + * t"]);
    assert_eq!(code, 1);
    assert!(err.contains("position 6"), "{err}");
    assert_eq!(dynprim(&["riccati", "--phi", "x^2 + (1/2)*x", "--p", "2"]).0, 1);
    assert_eq!(dynprim(&["family", "construct", "--p", "4"]).0, 1);
    assert_eq!(dynprim(&["density", "scan", "--d", "1", "--B", "1", "--nmax", "17"]).0, 1);
    let (code, _, err) = dynprim(&["--degree-cap", "50", "family", "an", "--p", "3", "--n", "4"]);
    assert_eq!(code, 2, "{err}");
    let out = Command::new(env!("CARGO_BIN_EXE_dynprim"))
        .args(["family", "certify", "--p", "3", "--levels", "4"])
        .env("DYNPRIM_DEGREE_CAP", "20")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(dynprim(&["density", "scan", "--d", "4", "--B", "9"]).0, 2);
    // Usage errors are input errors, not cap overruns.
    assert_eq!(dynprim(&["riccati"]).0, 1);
    assert_eq!(dynprim(&["no-such-command"]).0, 1);
    assert_eq!(dynprim(&["--help"]).0, 0);
}
