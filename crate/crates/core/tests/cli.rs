mod common;

use std::path::Path;
use std::process::Command;

use common::*;
use exponent_bootstrap::cli::classification_json;
use exponent_bootstrap::*;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_exboot");
const EXACT_KEYS: &[&str] = &[
    "p", "q_star", "t_star", "map", "spinor", "exact", "Q0", "q_minus", "q_plus", "p0",
];

fn exboot(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN)
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("spawn exboot");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_of(args: &[&str]) -> Value {
    let (code, out, err) = exboot(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn exact_strings<'a>(v: &'a Value, key: Option<&str>, acc: &mut Vec<&'a str>) {
    match v {
        Value::String(s) if key.is_some_and(|k| EXACT_KEYS.contains(&k)) => acc.push(s),
        Value::Object(m) => {
            for (k, child) in m {
                if k == "params" {
                    child.as_object().unwrap().values().for_each(|s| acc.push(s.as_str().unwrap()));
                } else if k != "input" && k != "decimal" {
                    exact_strings(child, Some(k), acc);
                }
            }
        }
        Value::Array(items) => items.iter().for_each(|i| exact_strings(i, key, acc)),
        _ => {}
    }
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["classify", "--p", "4.15"],
        vec!["trace", "--p", "21/5", "--scheme", "el"],
        vec!["fixed-point", "--p", "4.1"],
        vec!["figure", "fixed-points", "--p-min", "4.01", "--p-max", "4.3", "--samples", "20"],
    ] {
        assert_eq!(exboot(&args), exboot(&args), "{args:?}");
    }
}

#[test]
fn exact_fields_round_trip() {
    let docs = [
        json_of(&["classify", "--p", "4.15"]),
        json_of(&["classify", "--p", "inf"]),
        json_of(&["fixed-point", "--p", "4.1"]),
        json_of(&["fixed-point", "--p", "6"]),
        json_of(&["trace", "--p", "5"]),
        json_of(&["trace", "--p", "21/5", "--scheme", "el"]),
    ];
    let mut total = 0;
    for doc in &docs {
        let mut found = Vec::new();
        exact_strings(&doc["result"], None, &mut found);
        assert!(!found.is_empty());
        for s in found {
            let parsed: Exponent = s.parse().unwrap_or_else(|err| panic!("{s}: {err}"));
            assert_eq!(parsed.to_string(), s);
            total += 1;
        }
    }
    assert!(total > 40, "only {total} exact fields seen");
}

#[test]
fn classify_agrees_with_library() {
    let mut ps = sample(rational_in(rat(401, 100), rat(12, 1)), 18);
    ps.push(rat(21, 5));
    ps.push(rat(83, 20));
    for p in ps {
        let text = p.to_string();
        let doc = json_of(&["classify", "--p", &text]);
        let lib = classification_json(&classify(&ex(&p)).unwrap(), 12).unwrap();
        assert_eq!(doc["result"], lib, "p = {text}");
        assert_eq!(doc["command"], "classify");
        assert_eq!(doc["meta"]["digits"], 12);
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# test config\ndigits = 4\nformat = text\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let (code, out, _) = exboot(&["--config", cfg, "trace", "--p", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("2.4138\t4.6667"), "{out}");

    let (code, out, _) = exboot(&["--config", cfg, "--digits", "2", "--format", "json", "classify", "--p", "4.15"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["meta"]["digits"], 2);
    assert_eq!(doc["result"]["decimal"]["q_star"], "2.27");

    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "colour = red\n").unwrap();
    let (code, _, err) = exboot(&["--config", bad.to_str().unwrap(), "classify", "--p", "5"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown key"), "{err}");

    let (code, _, _) = exboot(&["--config", "/nonexistent/run.cfg", "classify", "--p", "5"]);
    assert_eq!(code, 2);
}

#[test]
fn scheme_run_on_shipped_files() {
    let doc = json_of(&["scheme", "run", "--file", "schemes/abstract.scm-exp", "--param", "p=5"]);
    assert_eq!(doc["result"]["terminal"], "case2");
    assert_eq!(doc["result"]["steps"][0]["state"]["q"]["exact"], "215/73");

    let doc = json_of(&[
        "scheme", "run", "--file", "schemes/euler_lagrange.scm-exp", "--param", "p=21/5", "--param", "q0=42/17",
    ]);
    assert_eq!(doc["result"]["terminal"], "barrier");
    assert_eq!(doc["result"]["steps"].as_array().unwrap().len(), 6);

    let (code, _, err) = exboot(&["scheme", "run", "--file", "schemes/abstract.scm-exp"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, err) =
        exboot(&["scheme", "run", "--file", "schemes/abstract.scm-exp", "--param", "p=5", "--param", "r=1"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn fixed_point_figure_is_monotone() {
    let (code, out, _) = exboot(&[
        "figure", "fixed-points", "--p-min", "4.01", "--p-max", "4.21", "--samples", "100",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("p,q_minus,q_plus,Q0"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 100);
    for w in rows.windows(2) {
        assert!(w[0][0] < w[1][0]);
        assert!(w[0][1] < w[1][1], "q_minus not increasing at p = {}", w[1][0]);
        assert!(w[0][2] > w[1][2], "q_plus not decreasing at p = {}", w[1][0]);
    }
    for r in &rows {
        assert!((r[1] - q_minus_f64(r[0])).abs() < 1e-9);
        assert!(r[2] < r[3]);
    }
}

#[test]
fn trace_figure_approaches_the_stall() {
    let (code, out, _) = exboot(&["figure", "trace", "--p", "4.15"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<f64>> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert!(rows.len() >= 50, "{} rows", rows.len());
    let limit = q_minus_f64(4.15);
    let last = rows.last().unwrap();
    assert!((last[1] - limit).abs() < 1e-6);
    // exact iterates increase strictly; at 12 digits the tail may tie
    assert!(rows.windows(2).all(|w| w[0][1] <= w[1][1] && w[1][1] <= limit + 1e-12));
}

#[test]
fn figure_files_land_in_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, out, _) = exboot(&["--output-dir", d, "figure", "trace", "--p", "5", "--svg"]);
    assert_eq!(code, 0);
    let written: Vec<&str> = out.lines().collect();
    assert_eq!(written.len(), 2);
    for w in &written {
        assert!(Path::new(w).is_file(), "{w}");
    }
    let svg = std::fs::read_to_string(written.iter().find(|w| w.ends_with(".svg")).unwrap()).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<polyline"));
}

#[test]
fn exit_codes() {
    assert_eq!(exboot(&["classify", "--p", "5"]).0, 0);
    assert_eq!(exboot(&["--help"]).0, 0);
    assert_eq!(exboot(&["--version"]).0, 0);
    // domain failures
    assert_eq!(exboot(&["classify", "--p", "3"]).0, 1);
    assert_eq!(exboot(&["classify", "--p", "4"]).0, 1);
    assert_eq!(exboot(&["trace", "--p", "5", "--start", "q=4"]).0, 1);
    // usage failures
    assert_eq!(exboot(&["classify"]).0, 2);
    assert_eq!(exboot(&["classify", "--p", "four"]).0, 2);
    assert_eq!(exboot(&["frobnicate"]).0, 2);
    assert_eq!(exboot(&["--digits", "0", "classify", "--p", "5"]).0, 2);
    assert_eq!(exboot(&["trace", "--p", "5", "--scheme", "missing.scm-exp"]).0, 2);
    let (code, out, err) = exboot(&["classify", "--p", "-1"]);
    assert_ne!(code, 0);
    assert!(out.is_empty() && err.starts_with("exboot: "), "{err}");
}
