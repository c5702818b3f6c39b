use serde_json::Value;

use involution_lab_web::{fit_rho, t_mod_period, valuation_table};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn table_rows() {
    let v = parse(valuation_table(1));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[2]["signed"]["computed"], "inf");
    assert_eq!(rows[6]["signed"]["computed"], 4);
    assert!(parse(valuation_table(100_000))["error"].is_string());
}

#[test]
fn periods() {
    let v = parse(t_mod_period(12));
    assert_eq!(v["report"]["preperiod"], 6);
    assert_eq!(v["report"]["period"], 3);
    assert_eq!(v["matches"], true);
    assert!(parse(t_mod_period(0))["error"].is_string());
}

#[test]
fn rho_digits() {
    let v = parse(fit_rho(1000, Some(11)));
    assert_eq!(v["digits"], serde_json::json!([1, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1]));
    assert_eq!(parse(fit_rho(1, None))["undetermined_from"], 3);
    assert!(parse(fit_rho(0, None))["error"].is_string());
}
