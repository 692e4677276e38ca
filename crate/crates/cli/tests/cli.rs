use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use foliate::exactmath::Rational;
use foliate::families::riccati_invariant_curve;
use serde_json::Value;
use tempfile::TempDir;

fn foliate(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_foliate"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn ok_json(args: &[&str], stdin: Option<&str>) -> Value {
    let out = foliate(args, stdin);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn first_integral_bound_for_square_plurigenera() {
    let dir = TempDir::new().unwrap();
    let oracle = write(
        &dir,
        "squares.json",
        r#"{"P": ["1", "4", "9", "16", "25"]}"#,
    );
    let v = ok_json(
        &[
            "bound",
            "first-integral",
            "--d",
            "4",
            "--g",
            "2",
            "--oracle",
            s(&oracle),
        ],
        None,
    );
    assert_eq!(v["report"]["n0"], 2);
    assert_eq!(v["report"]["bound"], 6);
    assert_eq!(v["trace_verified"], true);
}

#[test]
fn exhausted_oracle_exits_with_three() {
    let dir = TempDir::new().unwrap();
    let oracle = write(&dir, "short.json", r#"{"P": [0, 0]}"#);
    let out = foliate(
        &[
            "bound",
            "first-integral",
            "--d",
            "4",
            "--g",
            "2",
            "--oracle",
            s(&oracle),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exhausted"));
}

#[test]
fn generated_lins_neto_pipes_into_degree() {
    let gen = foliate(
        &[
            "examples",
            "gen",
            "--family",
            "lins_neto",
            "--params",
            r#"{"alpha":"2"}"#,
        ],
        None,
    );
    assert_eq!(gen.status.code(), Some(0));
    let text = String::from_utf8(gen.stdout).unwrap();
    let desc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(desc["descriptor"]["family"], "lins_neto");
    let v = ok_json(&["degree"], Some(&text));
    assert_eq!(v["degree"], 4);
}

#[test]
fn riccati_curve_certificate() {
    let dir = TempDir::new().unwrap();
    let gen = ok_json(
        &[
            "examples",
            "gen",
            "--family",
            "riccati_hypergeometric",
            "--params",
            r#"{"k":3,"b":"1/2","c":"1/3"}"#,
        ],
        None,
    );
    let riccati = write(&dir, "riccati.json", &gen.to_string());
    let curve = riccati_invariant_curve(3, &Rational::frac(1, 2), &Rational::frac(1, 3)).unwrap();
    let rc = write(&dir, "rc_k3.json", &serde_json::to_string(&curve).unwrap());
    let v = ok_json(
        &[
            "invariant-check",
            "--foliation",
            s(&riccati),
            "--curve",
            s(&rc),
        ],
        None,
    );
    assert_eq!(v["invariant"], true);
    assert_eq!(v["verified"], true);
    assert_eq!(v["curve_degree"], 3);
    assert!(v["certificate"]["cofactor"].is_string());
    // the descriptor records the published degree k + 1 next to it
    let published = gen["descriptor"]["published"].as_array().unwrap();
    assert!(published
        .iter()
        .any(|p| p["name"] == "invariant_curve_degree" && p["value"] == 4));
}

#[test]
fn malformed_input_is_located() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"P\": \"x\",\n \"Q\": ]");
    let out = foliate(&["degree", "--foliation", s(&bad)], None);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("bad.json: byte 17"), "{err}");
    let bad = write(&dir, "bad2.json", r#"{"P": "x*(", "Q": "y"}"#);
    let out = foliate(&["degree", "--foliation", s(&bad)], None);
    assert_eq!(out.status.code(), Some(2));
    let out = foliate(
        &["degree", "--foliation", s(&dir.path().join("missing.json"))],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn singularities_and_classification() {
    let f = r#"{"P": "x", "Q": "2*y"}"#;
    let v = ok_json(&["singularities"], Some(f));
    assert_eq!(v["total_milnor"], 3);
    assert_eq!(v["expected_total"], 3);
    let v = ok_json(&["classify", "--point", "0,0"], Some(f));
    assert_eq!(v["classification"], "non-reduced");
    assert_eq!(v["eigen_ratio"], "2");
    let v = ok_json(
        &["classify", "--point", "0,0"],
        Some(r#"{"P": "x", "Q": "-y"}"#),
    );
    assert_eq!(v["classification"], "reduced-nondegenerate");
    let out = foliate(&["classify", "--point", "1,1"], Some(f));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reduction_trees() {
    let f = r#"{"P": "x", "Q": "y"}"#;
    let v = ok_json(&["reduce"], Some(f));
    assert_eq!(v["dicritical"], 1);
    let v = ok_json(&["safe-resolve"], Some(r#"{"P": "x", "Q": "-y"}"#));
    assert_eq!(v["mode"], "safe");
    let out = foliate(&["reduce", "--cap", "2"], Some(r#"{"P": "x", "Q": "5*y"}"#));
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn index_of_an_invariant_line() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "saddle.json", r#"{"P": "x", "Q": "-y"}"#);
    let c = write(&dir, "line.json", r#"{"f": "y"}"#);
    let v = ok_json(&["index", "--foliation", s(&f), "--curve", s(&c)], None);
    // (d - 1) deg C = 2g - 2 + Z with d = 1, g = 0
    assert_eq!(v["Z"], 2);
    assert_eq!(v["Z_direct"], 2);
}

#[test]
fn extactic_and_first_integral() {
    let f = r#"{"P": "3*x", "Q": "2*y"}"#;
    let v = ok_json(&["extactic", "--m", "2"], Some(f));
    assert_eq!(v["vanishes"], false);
    let v = ok_json(&["extactic", "--m", "3"], Some(f));
    assert_eq!(v["vanishes"], true);
    let v = ok_json(&["first-integral", "--max-m", "5"], Some(f));
    assert_eq!(v["degree"], 3);
    // y/x^2 - log x is the only first integral
    let v = ok_json(
        &["first-integral", "--max-m", "4"],
        Some(r#"{"P": "x", "Q": "2*y + x^2"}"#),
    );
    assert_eq!(v["degree"], Value::Null);
}

#[test]
fn genus_of_curves() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "cubic.json", r#"{"f": "y^2 - x^3 - x"}"#);
    assert_eq!(ok_json(&["genus", "--curve", s(&c)], None)["genus"], 1);
    let c = write(&dir, "nodal.json", r#"{"f": "y^2 - x^2*(x + 1)"}"#);
    assert_eq!(ok_json(&["genus", "--curve", s(&c)], None)["genus"], 0);
}

#[test]
fn output_is_deterministic_and_formats_agree() {
    let f = r#"{"P": "x^2 - y", "Q": "x*y - 1"}"#;
    let a = foliate(&["--jobs", "1", "singularities"], Some(f));
    let b = foliate(&["--jobs", "4", "singularities"], Some(f));
    assert_eq!(a.stdout, b.stdout);
    let json: Value = serde_json::from_slice(&a.stdout).unwrap();
    let text =
        String::from_utf8(foliate(&["--format", "text", "singularities"], Some(f)).stdout).unwrap();
    assert!(text.contains(&format!("total_milnor = {}\n", json["total_milnor"])));
    assert!(text.contains(&format!("degree = {}\n", json["degree"])));
}

#[test]
fn budget_exhaustion_exits_with_three() {
    let params = r#"{"alpha":"2","r":3,"frame":"lins-neto"}"#;
    let gen = ok_json(
        &[
            "examples",
            "gen",
            "--family",
            "power_pullback",
            "--params",
            params,
        ],
        None,
    );
    assert_eq!(gen["degree"], 10);
    let out = foliate(&["--budget-seconds", "0", "reduce"], Some(&gen.to_string()));
    assert_eq!(out.status.code(), Some(3));
}
