//! Browser bindings: evaluate an `nGn`, list newform coefficients and
//! tabulate the supercongruences for a range of primes.
//!
//! Each export returns a JSON string; the plain `*_json` functions do the
//! work and are what the native tests call.

use padic_hypergeo::gfunction::evaluate_ngn;
use padic_hypergeo::qseries::{Form, Newforms};
use padic_hypergeo::rat::parse_list;
use padic_hypergeo::verify::{self, VerifyConfig};
use padic_hypergeo::GnParams;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest prime the table accepts; keeps the page responsive.
pub const TABLE_P_MAX: u64 = 400;
pub const COEFF_N_MAX: usize = 5000;

pub fn evaluate_gn_json(a: &str, b: &str, s: i64, p: u64, prec: u32) -> Result<String, String> {
    let a = parse_list(a).map_err(|e| e.to_string())?;
    let params = if b.trim().is_empty() {
        GnParams::with_unit_lower(a)
    } else {
        GnParams::new(a, parse_list(b).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?
    };
    let v = evaluate_ngn(&params, s, p, prec).map_err(|e| e.to_string())?;
    let residue = v.symmetric_residue(prec).ok().map(|r| r.to_string());
    Ok(json!({
        "params": params.to_string(),
        "value": v.to_string(),
        "residue": residue,
    })
    .to_string())
}

pub fn coefficients_json(form: &str, nmax: usize) -> Result<String, String> {
    if nmax > COEFF_N_MAX {
        return Err(format!("nmax is capped at {COEFF_N_MAX}"));
    }
    let form = Form::parse(form).map_err(|e| e.to_string())?;
    let forms = Newforms::compute(nmax.max(1)).map_err(|e| e.to_string())?;
    let coeffs: Vec<String> = forms.series(form).coeffs()[..=nmax]
        .iter()
        .map(i128::to_string)
        .collect();
    Ok(json!({ "form": form.label(), "coeffs": coeffs }).to_string())
}

pub fn supercongruence_table_json(p_max: u64) -> Result<String, String> {
    if p_max > TABLE_P_MAX {
        return Err(format!("p_max is capped at {TABLE_P_MAX}"));
    }
    let ids = ["kilbourn-super", "rv3-super", "dmc-level25-f"]
        .map(|id| verify::index_of(id).expect("registered"));
    let cfg = VerifyConfig::new(3, p_max, 3);
    let reports = verify::run_selected(&ids, &cfg).map_err(|e| e.to_string())?;
    serde_json::to_string(&reports).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn evaluate_gn(a: &str, b: &str, s: i32, p: u32, prec: u32) -> Result<String, JsValue> {
    evaluate_gn_json(a, b, s as i64, p as u64, prec).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn coefficients(form: &str, nmax: u32) -> Result<String, JsValue> {
    coefficients_json(form, nmax as usize).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn supercongruence_table(p_max: u32) -> Result<String, JsValue> {
    supercongruence_table_json(p_max as u64).map_err(|e| JsValue::from_str(&e))
}
