use relaxcert::report::validate_json;
use relaxcert_web::{certify_report, eta_curve, mis_report, MAX_VARIABLES};
use serde_json::Value;

const EX1: &str = "3 3\n1 2 0\n0 1 1\n1 0 2\n1 1 1\n";

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn certify_returns_a_valid_report() {
    let doc = parse(&certify_report(EX1, "", 0.5625, 10).unwrap());
    validate_json(&doc).unwrap();
    assert_eq!(doc["certified"], true);
    assert_eq!(doc["recovered"], serde_json::json!([0, 1, 1]));

    // NaN selects the default radius.
    let doc = parse(&certify_report(EX1, "1, 1, 1", f64::NAN, 1).unwrap());
    assert!((doc["beta_used"].as_f64().unwrap() - 0.375).abs() < 1e-12);
}

#[test]
fn certify_rejects_bad_input() {
    assert!(certify_report("2 2\n1\n", "", f64::NAN, 1).is_err());
    assert!(certify_report(EX1, "1,x,1", f64::NAN, 1).is_err());
    assert!(certify_report(EX1, "1,1", f64::NAN, 1).is_err());
    assert!(certify_report(EX1, "0,1,1", f64::NAN, 1).is_err());
    let n = MAX_VARIABLES + 1;
    let big = format!("1 {n}\n{}\n1\n", vec!["1"; n].join(" "));
    assert!(certify_report(&big, "", f64::NAN, 1).unwrap_err().contains("at most"));
}

#[test]
fn eta_curve_is_monotone_and_hits_endpoints() {
    let curve = parse(&eta_curve(EX1, "", 0.1, 1.0, 12).unwrap());
    let samples = curve["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 12);
    assert!((samples[0]["beta"].as_f64().unwrap() - 0.1).abs() < 1e-12);
    assert!((samples[11]["beta"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let etas: Vec<f64> = samples.iter().map(|s| s["eta1"].as_f64().unwrap()).collect();
    assert!(etas.windows(2).all(|w| w[1] <= w[0] + 1e-9), "{etas:?}");
    assert_eq!(curve["threshold"].as_f64(), Some(0.5));
    assert!(eta_curve(EX1, "", 0.0, 1.0, 5).is_err());
    assert!(eta_curve(EX1, "", 2.0, 1.0, 5).is_err());
}

#[test]
fn mis_reports_set_and_source() {
    let tri = parse(&mis_report("p 3\ne 1 2\ne 1 3\ne 2 3\n").unwrap());
    assert_eq!(tri["size"], 1);
    assert_eq!(tri["source"], "exhaustive search");
    assert_eq!(tri["verified"], false);

    let path = parse(&mis_report("p 3\ne 1 2\ne 2 3\n").unwrap());
    assert_eq!(path["independent_set"], serde_json::json!([1, 3]));

    let empty = parse(&mis_report("p 2\n").unwrap());
    assert_eq!(empty["size"], 2);
    assert!(empty["certified"].is_null());
    assert!(mis_report("p 2\ne 1 3\n").is_err());
}
