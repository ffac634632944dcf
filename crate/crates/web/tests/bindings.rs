use lindisc_web::{gadget_json, gap_report, landscape_json};
use serde_json::Value;

#[test]
fn gadget_reports_exact_rounding() {
    let v: Value = serde_json::from_str(&gadget_json("0", "9/10", "1", 1).unwrap()).unwrap();
    assert_eq!(v["z"], serde_json::json!([0, 0, 1]));
    assert_eq!(v["case"], "III");
    assert_eq!(v["norm"], "9/10");
    assert_eq!(v["bounds_ok"], true);
    assert!(gadget_json("2", "0", "0", 1).unwrap_err().contains("outside"));
    assert!(gadget_json("1/2", "1/2", "1/2", 0).is_err());
    assert!(gadget_json("x", "0", "0", 1).is_err());
}

#[test]
fn landscape_peaks_at_the_centre_for_identity() {
    let v: Value = serde_json::from_str(&landscape_json("2 2\n1 0\n0 1\n", 4).unwrap()).unwrap();
    let values = v["values"].as_array().unwrap();
    assert_eq!(values.len(), 5);
    assert_eq!(values[2][2], 0.5);
    assert_eq!(values[0][0], 0.0);
    assert_eq!(v["max"], "1/2");
    assert!(landscape_json("1 3\n1 1 1\n", 4).is_err());
    assert!(landscape_json("2 2\n1 0\n0 1\n", 0).is_err());
}

#[test]
fn gap_report_runs_both_modes() {
    let yes = gap_report("p cnf 3 1\n1 -2 3 0\n", "np", 50, 42).unwrap();
    assert!(yes.trim_end().ends_with("pass=true"));
    assert_eq!(yes, gap_report("p cnf 3 1\n1 -2 3 0\n", "np", 50, 42).unwrap());
    let no = gap_report("p cnf 1 1\na 1 0\n1 1 1 0\n", "pi2", 0, 1).unwrap();
    assert!(no.contains("counterexample=(0)"));
    assert!(gap_report("p cnf 1 1\n1 1 1 0\n", "sat", 1, 1).is_err());
}
