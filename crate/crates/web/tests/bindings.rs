use padic_hypergeo_web::{coefficients_json, evaluate_gn_json, supercongruence_table_json};
use serde_json::Value;

#[test]
fn gn_halves_at_three() {
    let v: Value =
        serde_json::from_str(&evaluate_gn_json("1/2,1/2,1/2,1/2", "", 1, 3, 2).unwrap()).unwrap();
    assert_eq!(v["residue"], "-1");
    assert_eq!(v["params"], "4G4[1/2,1/2,1/2,1/2; 1,1,1,1]");
}

#[test]
fn gn_rejects_bad_input() {
    assert!(evaluate_gn_json("1/3", "", 1, 3, 2).is_err());
    assert!(evaluate_gn_json("x", "", 1, 5, 2).is_err());
    assert!(evaluate_gn_json("1/2", "1,1", 1, 5, 2).is_err());
}

#[test]
fn level8_coefficients() {
    let v: Value = serde_json::from_str(&coefficients_json("f1", 7).unwrap()).unwrap();
    let c: Vec<&str> = v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(c, ["0", "1", "0", "-4", "0", "-2", "0", "24"]);
    assert!(coefficients_json("h", 7).is_err());
    assert!(coefficients_json("g", 1_000_000).is_err());
}

#[test]
fn table_passes() {
    let v: Value = serde_json::from_str(&supercongruence_table_json(31).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 30);
    assert!(rows
        .iter()
        .all(|r| r["status"] == "pass" || r["status"] == "skip"));
    assert!(supercongruence_table_json(10_000).is_err());
}
