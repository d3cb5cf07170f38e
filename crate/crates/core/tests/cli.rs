use std::process::Command;

use serde_json::Value;

fn dquant(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dquant"))
        .args(args)
        .env_remove("DQUANT_CAPS")
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/output.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, _) = dquant(&full);
    let v: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}"));
    let errors: Vec<String> = schema().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{out}");
    (code, v)
}

fn term_value(t: &Value) -> (Vec<u64>, String) {
    let e = t["exponents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    let num = t["numerator"].as_str().unwrap();
    let den = t["denominator"].as_str().unwrap();
    (
        e,
        if den == "1" {
            num.to_string()
        } else {
            format!("{num}/{den}")
        },
    )
}

#[test]
fn star_table() {
    let (code, out, _) = dquant(&["star", "--pi", "std2", "x", "y"]);
    assert_eq!(code, 0);
    assert_eq!(out, "(x) ⋆ (y)\n  ħ^0: x*y\n  ħ^1: -1/2\n");
}

#[test]
fn star_json_is_graded() {
    let (code, v) = json(&["star", "x", "y"]);
    assert_eq!(code, 0);
    let c = &v["products"][0]["coefficients"];
    assert_eq!(term_value(&c[0][0]), (vec![1, 1], "1".into()));
    assert_eq!(term_value(&c[1][0]), (vec![0, 0], "-1/2".into()));
    assert!(c[2].as_array().unwrap().is_empty());
}

#[test]
fn star_matrix_and_gauge() {
    let (code, out, _) = dquant(&[
        "star", "--pi", "0,-1;1,0", "--vars", "p,q", "--gauge", "0,1;1,0", "--order", "2", "p", "q",
    ]);
    assert_eq!(code, 0, "{out}");
    // (π + γ)^{pq} = 0, so p ⋆ q = pq
    assert_eq!(out, "(p) ⋆ (q)\n  ħ^0: p*q\n");
    let (code, _, err) = dquant(&["star", "--pi", "0,1;1,0", "--vars", "p,q", "p", "q"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn wkb_catalan_row() {
    let (code, out, _) = dquant(&[
        "wkb",
        "--curve",
        "-y + x^2 + 2*x*y + y^2",
        "--orders",
        "2",
        "--degree",
        "8",
    ]);
    assert_eq!(code, 0);
    assert!(
        out.contains("u_0: 0, 0, 1, 2, 5, 14, 42, 132, 429\n"),
        "{out}"
    );
}

#[test]
fn reduce_unit_point() {
    let (code, v) = json(&[
        "reduce",
        "--preset",
        "ks4d",
        "--params",
        "a=1,b=1,c=1,d=1,A=0,B=0,D=0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "AGREE");
    assert_eq!(v["elimination_route"], "const*exp((1/ħ)*(z1^2))");
    assert_eq!(v["coefficient_exact"]["numerator"], "2");
}

#[test]
fn reduce_degenerate_fails() {
    let (code, v) = json(&[
        "reduce",
        "--preset",
        "ks4d",
        "--random",
        "degenerate",
        "--seed",
        "3",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "NONTRANSVERSAL");
    assert_eq!(v["det_kernel"], "0");
}

#[test]
fn reduce_from_equations() {
    let (code, v) = json(&[
        "reduce",
        "--positions",
        "x1,x2",
        "--momenta",
        "y1,y2",
        "--symbols",
        "q",
        "--coisotropic",
        "x1 + x2 + y1 + y2",
        "--lagrangian",
        "y1 + q*x1; y2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "AGREE");
    // A = q, B = D = 0, a = b = c = d = 1 gives X = (2 − q)/(1 − q)
    assert_eq!(v["coefficient"], "(q - 2)/(q - 1)");
}

#[test]
fn lambda_mutation_exits_one() {
    let (code, v) = json(&["lambda", "--preset", "conic"]);
    assert_eq!(code, 0);
    assert_eq!(v["lambda"][3]["numerator"], "-1");
    assert_eq!(v["lambda"][3]["denominator"], "6");
    let (code, v) = json(&["lambda", "--preset", "conic", "--mutate", "3=1"]);
    assert_eq!(code, 1);
    assert_eq!(v["residual_vanishes"], false);
}

#[test]
fn parse_errors_exit_two() {
    let (code, v) = json(&["star", "x + ", "y"]);
    assert_eq!(code, 2);
    assert_eq!(v["offset"], 4);
    let (code, _, err) = dquant(&["star", "x", "z"]);
    assert_eq!(code, 2);
    assert!(err.contains("undeclared identifier `z`"), "{err}");
    let (code, _, _) = dquant(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = dquant(&["check", "--suite", "nope"]);
    assert_eq!(code, 2);
}

#[test]
fn caps_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_dquant"))
        .args(["wkb", "--preset", "conic"])
        .env("DQUANT_CAPS", "degree=4")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("u_0: 0, 0, 1, 2, 5\n"), "{text}");
    let out = Command::new(env!("CARGO_BIN_EXE_dquant"))
        .args(["wkb", "--preset", "conic"])
        .env("DQUANT_CAPS", "degree=zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_is_deterministic() {
    let a = dquant(&[
        "--json",
        "check",
        "--suite",
        "associativity,wick",
        "--seed",
        "9",
        "--pairs",
        "10",
    ]);
    let b = dquant(&[
        "--json",
        "check",
        "--suite",
        "associativity,wick",
        "--seed",
        "9",
        "--pairs",
        "10",
    ]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = dquant(&["--help"]);
    assert_eq!(code, 0);
    for cmd in ["star", "wkb", "lambda", "reduce", "check"] {
        assert!(out.contains(cmd));
    }
}
