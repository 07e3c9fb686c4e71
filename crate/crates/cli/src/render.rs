//! Output formatting shared by the command implementations: stable
//! human-readable text on one side, JSON values on the other. All rationals
//! go through the exact `p/q` formatter; nothing here ever rounds.

use algpoly::scalar::format_scalar;
use algpoly::{Element, Polynomial, ReductionResult, Scalar, Tensor};
use serde_json::{json, Value};

pub fn scalar_list(coords: &[Scalar]) -> Vec<Value> {
    coords.iter().map(|c| Value::String(format_scalar(c))).collect()
}

pub fn element_json(e: &Element) -> Value {
    json!({ "coords": scalar_list(e.coords()), "text": e.to_string() })
}

pub fn tensor_json(t: &Tensor) -> Value {
    let mut v: Value = serde_json::from_str(&t.to_json()).expect("tensor serializes to json");
    v["text"] = Value::String(t.to_string());
    v
}

pub fn poly_json(p: &Polynomial) -> Value {
    let mut v: Value =
        serde_json::from_str(&p.to_json()).expect("polynomial serializes to json");
    v["degree"] = match p.degree() {
        Some(d) => json!(d),
        None => Value::Null,
    };
    v["text"] = Value::String(p.to_string());
    v
}

pub fn reduction_json(r: &ReductionResult, basis_checked: usize) -> Value {
    let terms: Vec<Value> = r
        .terms()
        .iter()
        .map(|(u, v)| json!({ "u": poly_json(u), "v": element_json(v) }))
        .collect();
    json!({
        "side": r.side().to_string(),
        "remainder": element_json(r.remainder()),
        "terms": terms,
        "verified_basis_points": basis_checked,
    })
}

pub fn reduction_human(r: &ReductionResult, basis_checked: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!("side: {}\n", r.side()));
    out.push_str(&format!("remainder: {}\n", r.remainder()));
    out.push_str(&format!("terms: {}\n", r.terms().len()));
    for (i, (u, v)) in r.terms().iter().enumerate() {
        out.push_str(&format!("term {}: u = {} ; v = {}\n", i + 1, u, v));
    }
    out.push_str(&format!("identity verified at {basis_checked} basis points\n"));
    out
}
