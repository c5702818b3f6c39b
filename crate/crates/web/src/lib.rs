//! Browser bindings. Each export returns a JSON document; errors come back
//! as `{"error": "..."}` so the page never has to catch exceptions.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use involution_lab::conjecture;
use involution_lab::periodicity;
use involution_lab::valuations;

const MAX_K: u32 = 2000;
const MAX_MODULUS: u32 = 1000;

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|e| error(&e.to_string()))
}

fn error(msg: &str) -> String {
    json!({ "error": msg }).to_string()
}

/// Rows `n = 0..=4k_max+3` of computed and predicted 2-adic valuations of
/// `t_n`, `t_n(1,-1)`, `t_n^e` and `t_n^o`.
#[wasm_bindgen]
pub fn valuation_table(k_max: u32) -> String {
    if k_max > MAX_K {
        return error(&format!("k_max is limited to {MAX_K} in the browser"));
    }
    to_json(&valuations::valuation_table(k_max as u64))
}

/// Preperiod and smallest period of `t_n mod m`, next to the closed form.
#[wasm_bindgen]
pub fn t_mod_period(m: u32) -> String {
    if m == 0 || m > MAX_MODULUS {
        return error(&format!("modulus must be in 1..={MAX_MODULUS}"));
    }
    let m = m as u64;
    match periodicity::detect_t_period(m, periodicity::default_window(m)) {
        Ok(report) => {
            let (pre, per) = periodicity::expected_t_period(m);
            let matches = report.preperiod == pre && report.period == per;
            to_json(&json!({
                "report": report,
                "expected_preperiod": pre,
                "expected_period": per,
                "matches": matches,
            }))
        }
        Err(e) => error(&e.to_string()),
    }
}

/// Binary digits of the 2-adic constant forced by the rows `k <= k_max`.
#[wasm_bindgen]
pub fn fit_rho(k_max: u32, bits: Option<u32>) -> String {
    if k_max == 0 || k_max > MAX_K {
        return error(&format!("k_max must be in 1..={MAX_K}"));
    }
    to_json(&conjecture::fit_rho(k_max as u64, bits))
}
