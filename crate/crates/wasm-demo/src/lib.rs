use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use liebrace::liealg::{ClassLabel, LieAlgebra};
use liebrace::lsb;
use liebrace::matgrp::{Group, GroupSpec, Mat};
use liebrace::tablerepro::{certify_cell, CellStatus};

fn js_err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn rows(m: &Mat) -> Value {
    let n = m.n();
    json!((0..n).map(|i| (0..n).map(|j| m.get(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn label(s: &str) -> Result<ClassLabel, JsValue> {
    serde_json::from_value(Value::String(s.into())).map_err(|_| js_err(format!("unknown label {s:?}")))
}

/// Exponentiates `h H + e E12 + f E21` in SL(2) and splits it as `k a n`.
#[wasm_bindgen]
pub fn iwasawa_sl2(h: f64, e: f64, f: f64) -> Result<String, JsValue> {
    let g = Group::new(&GroupSpec::sl(2)).map_err(js_err)?;
    let x = g.exp_chart(&[h, e, f]).map_err(js_err)?;
    let w = g.iwasawa(&x).map_err(js_err)?;
    let m = g.matrix(&x).expect("sl2 is a matrix group");
    let residual = w.k.mul(&w.a).mul(&w.n).sub(&m).norm_inf();
    let angle = w.k.get(1, 0).atan2(w.k.get(0, 0));
    Ok(json!({
        "g": rows(&m),
        "k": rows(&w.k),
        "a": rows(&w.a),
        "n": rows(&w.n),
        "angle": angle,
        "residual": residual,
    })
    .to_string())
}

/// Samples the brace identity for the witness of a table cell.  A nonzero
/// `perturb` shifts the first circ coordinate to show the check failing.
#[wasm_bindgen]
pub fn witness_residual(dot: &str, circ: &str, samples: usize, seed: u64, perturb: f64) -> Result<String, JsValue> {
    let cell = certify_cell(label(dot)?, label(circ)?);
    let Some(spec) = cell.witness.clone() else {
        let rule = cell.obstruction.map(|r| format!("{r:?}")).unwrap_or_default();
        return Ok(json!({"status": "dash", "rule": rule}).to_string());
    };
    let mut inst = lsb::realize(&spec).map_err(js_err)?;
    if perturb != 0.0 {
        inst = inst.with_perturbation(0, perturb).map_err(js_err)?;
    }
    let report = lsb::verify_lsb(&inst, samples.max(1), seed, lsb::DEFAULT_TOL).map_err(js_err)?;
    let status = if cell.status == CellStatus::Cong { "cong" } else { "check" };
    Ok(json!({
        "status": status,
        "witness": spec.name(),
        "dim": inst.dim(),
        "max_residual": report.max_residual,
        "pass": report.pass,
        "lambda_nontrivial": lsb::lambda_nontrivial(&inst, samples.max(1), seed).map_err(js_err)?,
    })
    .to_string())
}

/// Classifies a Lie algebra given as structure-constant JSON.
#[wasm_bindgen]
pub fn classify(text: &str) -> Result<String, JsValue> {
    let g: LieAlgebra = serde_json::from_str(text).map_err(js_err)?;
    if let Some((i, j, k)) = g.jacobi_violation() {
        return Err(js_err(format!("Jacobi identity fails on (e{}, e{}, e{})", i + 1, j + 1, k + 1)));
    }
    serde_json::to_string(&g.classify_detailed()).map_err(js_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iwasawa_rotation_only() {
        let out: Value = serde_json::from_str(&iwasawa_sl2(0.0, 0.7, -0.7).unwrap()).unwrap();
        assert!(out["residual"].as_f64().unwrap() < 1e-12);
        assert!((out["angle"].as_f64().unwrap() + 0.7).abs() < 1e-12);
    }

    #[test]
    fn witness_and_perturbation() {
        let ok: Value = serde_json::from_str(&witness_residual("simp", "solv", 20, 42, 0.0).unwrap()).unwrap();
        assert_eq!(ok["pass"], true);
        let bad: Value = serde_json::from_str(&witness_residual("simp", "solv", 20, 42, 0.1).unwrap()).unwrap();
        assert_eq!(bad["pass"], false);
        let dash: Value = serde_json::from_str(&witness_residual("ab", "simp", 20, 42, 0.0).unwrap()).unwrap();
        assert_eq!(dash["status"], "dash");
    }

    #[test]
    fn classify_h3() {
        let text = r#"{"name": "h3", "dim": 3, "brackets": [{"i": 0, "j": 1, "coeffs": [{"k": 2, "c": "1"}]}]}"#;
        let out: Value = serde_json::from_str(&classify(text).unwrap()).unwrap();
        assert_eq!(out["label"], "nil");
    }
}
