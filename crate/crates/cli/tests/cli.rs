use std::process::{Command, Output};

use hecke::json::{decision_from_json, matrix_from_json, reduction_from_json, report_from_json};
use hecke::{HeckeGroup, Token};
use serde_json::Value;

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = hecke(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    hecke(args).status.code().expect("exit code")
}

fn matrix_arg(v: &Value) -> String {
    let e = |k: &str| v[k].as_str().unwrap().to_string();
    format!("[[{},{}],[{},{}]]", e("a"), e("b"), e("c"), e("d"))
}

#[test]
fn decide_examples() {
    let v = json(&["decide", "--q", "3", "--matrix", "[[1,1],[1,2]]"]);
    let r = decision_from_json(&v).unwrap();
    assert!(r.member);
    assert_eq!(r.word, Some(vec![Token::GInv(2), Token::GInv(1)]));
    let v = json(&["decide", "--q", "4", "--matrix", "[[1,1],[1,2]]"]);
    assert_eq!(v["member"], false);
    assert_eq!(v["word"], Value::Null);
}

#[test]
fn reduce_example() {
    let v = json(&["reduce", "--q", "3", "--form", "[1;1;-1;+]"]);
    assert_eq!(v["level"], 1);
    assert_eq!(v["period"].as_array().unwrap().len(), 2);
    let g = HeckeGroup::new(3).unwrap();
    let r = reduction_from_json(&g, &v).unwrap();
    assert_eq!(r.period_word, vec![2, 1]);
    assert!(v["displacement"].as_str().unwrap().starts_with("1.92484730023841"));
}

#[test]
fn reduce_accepts_a_matrix() {
    let by_matrix = json(&["reduce", "--q", "3", "--matrix", "[[1,1],[1,2]]"]);
    let by_form = json(&["reduce", "--q", "3", "--form", "[1;1;-1;+]"]);
    assert_eq!(by_matrix, by_form);
}

#[test]
fn reduced_elements_are_members() {
    for q in [3u32, 5, 7] {
        let qs = q.to_string();
        let report = json(&["enumerate", "--q", &qs, "--dmax", "20"]);
        let g = HeckeGroup::new(q).unwrap();
        let parsed = report_from_json(g.ctx(), &report).unwrap();
        assert!(!parsed.forms.is_empty());
        for f in &parsed.forms {
            let r = json(&["reduce", "--q", &qs, "--form", &f.form.to_string()]);
            let element = &r["hyperbolic_element"];
            matrix_from_json(g.ctx(), element).unwrap();
            let d = json(&["decide", "--q", &qs, "--matrix", &matrix_arg(element)]);
            assert_eq!(d["member"], true, "q = {q}: {}", f.form);
        }
    }
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec!["info", "--q", "7"],
        vec!["reduce", "--q", "5", "--form", "[1;L;-1;+]", "--precision-bits", "200"],
        vec!["enumerate", "--q", "6", "--dmax", "25"],
    ];
    for args in &runs {
        assert_eq!(hecke(args).stdout, hecke(args).stdout, "{args:?}");
    }
    let one = hecke(&["enumerate", "--q", "6", "--dmax", "25", "--threads", "1"]).stdout;
    let four = hecke(&["enumerate", "--q", "6", "--dmax", "25", "--threads", "4"]).stdout;
    assert_eq!(one, four);
}

#[test]
fn info_reports_lambda() {
    let v = json(&["info", "--q", "5"]);
    assert_eq!(v["min_poly"], "x^2 - x - 1");
    assert_eq!(v["delta0"], "L");
    assert!(v["lambda_decimal"].as_str().unwrap().starts_with("1.6180339887498948482"));
    assert_eq!(v["alphabet"].as_array().unwrap().len(), 4);
    assert_eq!(v["alphabet"][3]["left"], "0");
    assert_eq!(v["alphabet"][0]["right"], "inf");
    let text = String::from_utf8(hecke(&["info", "--q", "4", "--output", "text"]).stdout).unwrap();
    assert!(text.contains("x^2 - 2"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["decide", "--q", "3", "--matrix", "[[1,1],[1,2]]"]), 0);
    let out = hecke(&["decide", "--q", "3", "--matrix", "[[1,1],[1,x]]"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("`x`"), "{err}");
    assert_eq!(code(&["reduce", "--q", "3", "--form", "[1;1;-1]"]), 2);
    assert_eq!(code(&["enumerate", "--q", "3", "--dmax", "ten"]), 2);
    assert_eq!(code(&["info", "--q", "2"]), 2);
    assert_eq!(code(&["decide", "--q", "3"]), 2);
    assert_eq!(code(&["reduce", "--q", "3", "--form", "[1;1;-1;+]", "--matrix", "[[1,1],[1,2]]"]), 2);
    assert_eq!(code(&["reduce", "--q", "4", "--form", "[1;1;-1;+]"]), 3);
    assert_eq!(code(&["reduce", "--q", "3", "--form", "[1;0;-1;+]"]), 3);
    assert_eq!(code(&["decide", "--q", "3", "--matrix", "[[1,1],[1,1]]"]), 3);
    assert_eq!(code(&["reduce", "--q", "3", "--matrix", "[[0,1],[-1,0]]"]), 3);
}

#[test]
fn text_mode() {
    let out = hecke(&["decide", "--q", "3", "--matrix", "[[1,1],[1,2]]", "--output", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("member: true"));
    assert!(text.contains("word: g2^-1 g1^-1"));
}
