//! Browser bindings. Every export returns a JSON string; failures come back
//! as `{"error": ...}` instead of throwing.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use steinberg_core::combinat::{comp_length_gl, comp_length_gu, e_tilde, e_value, mullineux_socle_label};
use steinberg_core::suite::{verify, VerifyOptions};

/// Small groups only; the browser has no patience for big coset spaces.
pub const WEB_MAX_INDEX: u64 = 400;

fn error(e: impl std::fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}

pub fn comp_length_value(family: &str, n: usize, q: u64, ell: u64) -> Value {
    let out = match family {
        "gl" => comp_length_gl(n, q, ell)
            .and_then(|len| Ok(json!({"e": serde_json::to_value(e_value(q, ell)?).unwrap(), "length": len.to_string()}))),
        "gu" => comp_length_gu(n, q, ell).and_then(|len| {
            Ok(json!({"etilde": serde_json::to_value(e_tilde(q, ell)?).unwrap(), "length": len.to_string()}))
        }),
        other => return error(format!("unknown family {other}")),
    };
    out.unwrap_or_else(error)
}

pub fn socle_label_value(n: usize, q: u64, ell: u64) -> Value {
    match e_value(q, ell) {
        Ok(e) => {
            let mu0 = mullineux_socle_label(n, e);
            json!({"e": serde_json::to_value(e).unwrap(), "mu0": mu0.to_string(), "exponent": mu0.exponent_notation()})
        }
        Err(e) => error(e),
    }
}

pub fn verify_value(n: usize, q: u64, ell: u64, seed: u64) -> Value {
    match verify(n, q, ell, VerifyOptions { seed, max_index: WEB_MAX_INDEX }) {
        Ok(r) => serde_json::to_value(&r).unwrap(),
        Err(e) => json!({"error": e.to_string(), "code": e.code()}),
    }
}

#[wasm_bindgen]
pub fn comp_length(family: &str, n: usize, q: u32, ell: u32) -> String {
    comp_length_value(family, n, q.into(), ell.into()).to_string()
}

#[wasm_bindgen]
pub fn socle_label(n: usize, q: u32, ell: u32) -> String {
    socle_label_value(n, q.into(), ell.into()).to_string()
}

#[wasm_bindgen]
pub fn verify_group(n: usize, q: u32, ell: u32, seed: u32) -> String {
    verify_value(n, q.into(), ell.into(), seed.into()).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exports_return_json() {
        assert_eq!(socle_label_value(3, 2, 7)["mu0"], "(2,1)");
        assert_eq!(comp_length_value("gu", 4, 2, 5)["length"], "2");
        assert_eq!(comp_length_value("gl", 3, 2, 7)["e"], 3);
        assert!(comp_length_value("sp", 4, 2, 5)["error"].is_string());
        assert!(socle_label_value(3, 2, 2)["error"].is_string());
    }

    #[test]
    fn verify_small_group() {
        let v = verify_value(2, 2, 3, 1);
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
        assert_eq!(verify_value(4, 3, 2, 1)["code"], "cap_exceeded");
    }
}
