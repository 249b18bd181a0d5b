//! Machine-readable run report. Every float is rounded to 12 significant
//! digits before serialization, so a written document parses back to an
//! identical value.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::certify::{CaseKind, Certificate};
use crate::goodness::GoodnessReport;
use crate::instance::ZeroOneInstance;

pub const SCHEMA_VERSION: &str = "1";

/// Top-level keys, in serialization order.
pub const TOP_LEVEL_KEYS: [&str; 21] = [
    "schema_version",
    "instance",
    "beta_bar",
    "beta_used",
    "eta_per_column",
    "eta1",
    "s_star",
    "eta_s_bound",
    "gamma_hat",
    "threshold",
    "certified",
    "case",
    "weights",
    "lp",
    "recovered",
    "brute_force",
    "iterations",
    "discrepancies",
    "timings_ms",
    "gamma_hat_closed_form",
    "mis",
];

pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn sig12_vec(v: &[f64]) -> Vec<f64> {
    v.iter().copied().map(sig12).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub m: usize,
    pub n: usize,
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSummary {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BruteForceSummary {
    pub value: Option<usize>,
    pub optima_count: usize,
    pub verified: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationSummary {
    pub weights: Vec<f64>,
    pub beta_used: f64,
    pub eta1: f64,
    pub s_star: usize,
    pub case: CaseKind,
    pub s_observed: usize,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MisSummary {
    pub vertex_count: usize,
    pub edges: usize,
    /// 1-indexed vertices of the independent set.
    pub independent_set: Vec<usize>,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub instance: InstanceSummary,
    pub beta_bar: Option<f64>,
    pub beta_used: Option<f64>,
    pub eta_per_column: Option<Vec<f64>>,
    pub eta1: Option<f64>,
    pub s_star: Option<usize>,
    pub eta_s_bound: Option<f64>,
    pub gamma_hat: Option<f64>,
    pub threshold: Option<f64>,
    pub certified: Option<bool>,
    pub case: Option<CaseKind>,
    pub weights: Option<Vec<f64>>,
    pub lp: Option<LpSummary>,
    pub recovered: Option<Vec<u8>>,
    pub brute_force: Option<BruteForceSummary>,
    pub iterations: Vec<IterationSummary>,
    pub discrepancies: Vec<String>,
    pub timings_ms: BTreeMap<String, f64>,
    pub gamma_hat_closed_form: Option<f64>,
    pub mis: Option<MisSummary>,
}

impl ReportDocument {
    pub fn new(inst: &ZeroOneInstance) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            instance: InstanceSummary {
                m: inst.rows(),
                n: inst.cols(),
                digest: inst.digest(),
            },
            beta_bar: None,
            beta_used: None,
            eta_per_column: None,
            eta1: None,
            s_star: None,
            eta_s_bound: None,
            gamma_hat: None,
            threshold: None,
            certified: None,
            case: None,
            weights: None,
            lp: None,
            recovered: None,
            brute_force: None,
            iterations: Vec::new(),
            discrepancies: Vec::new(),
            timings_ms: BTreeMap::new(),
            gamma_hat_closed_form: None,
            mis: None,
        }
    }

    pub fn set_goodness(&mut self, r: &GoodnessReport) {
        self.beta_bar = Some(sig12(r.beta_bar));
        self.beta_used = Some(sig12(r.beta_used));
        self.eta_per_column = Some(sig12_vec(&r.eta_per_column));
        self.eta1 = Some(sig12(r.eta1));
        self.s_star = Some(r.s_star);
        self.eta_s_bound = Some(sig12(r.eta_s_bound));
        self.gamma_hat = Some(sig12(r.gamma_hat));
        self.threshold = Some(sig12(r.threshold));
    }

    pub fn set_certificate(&mut self, cert: &Certificate) {
        self.set_goodness(cert.final_report());
        self.certified = Some(cert.certified);
        self.case = Some(cert.final_case());
        self.weights = Some(sig12_vec(cert.final_weights.as_slice()));
        self.lp = Some(LpSummary {
            x: sig12_vec(cert.x()),
            y: sig12_vec(cert.y()),
            value: sig12(cert.lp_solution.value),
        });
        self.recovered = Some(cert.recovered.clone());
        self.brute_force = cert.brute_force.as_ref().map(|bf| BruteForceSummary {
            value: bf.value,
            optima_count: bf.optima.len(),
            verified: cert.brute_force_verified,
        });
        self.iterations = cert
            .iterations
            .iter()
            .map(|it| IterationSummary {
                weights: sig12_vec(it.weights.as_slice()),
                beta_used: sig12(it.report.beta_used),
                eta1: sig12(it.report.eta1),
                s_star: it.report.s_star,
                case: it.case,
                s_observed: it.s_observed,
                certified: it.certified,
            })
            .collect();
        self.discrepancies = cert.discrepancies.clone();
    }

    pub fn record_timing(&mut self, stage: &str, millis: f64) {
        self.timings_ms.insert(stage.to_string(), sig12(millis));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Checks that `value` has exactly the report's top-level keys and the
/// nested shapes of `instance`, `lp` and `brute_force`.
pub fn validate_json(value: &serde_json::Value) -> Result<(), String> {
    let obj = value.as_object().ok_or("report is not an object")?;
    for key in TOP_LEVEL_KEYS {
        if !obj.contains_key(key) {
            return Err(format!("missing key `{key}`"));
        }
    }
    if let Some(extra) = obj.keys().find(|k| !TOP_LEVEL_KEYS.contains(&k.as_str())) {
        return Err(format!("unexpected key `{extra}`"));
    }
    let nested: [(&str, &[&str]); 3] = [
        ("instance", &["m", "n", "digest"]),
        ("lp", &["x", "y", "value"]),
        ("brute_force", &["value", "optima_count", "verified"]),
    ];
    for (key, fields) in nested {
        match &obj[key] {
            serde_json::Value::Null if key != "instance" => {}
            serde_json::Value::Object(inner) => {
                for f in fields {
                    if !inner.contains_key(*f) {
                        return Err(format!("`{key}` lacks `{f}`"));
                    }
                }
            }
            _ => return Err(format!("`{key}` has the wrong type")),
        }
    }
    for key in ["iterations", "discrepancies"] {
        if !obj[key].is_array() {
            return Err(format!("`{key}` is not an array"));
        }
    }
    if obj["schema_version"] != SCHEMA_VERSION {
        return Err("unknown schema_version".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{certify, CertifyConfig};
    use crate::instance::examples;
    use proptest::prelude::*;

    #[test]
    fn certificate_report_round_trips_and_validates() {
        let inst = examples::example1();
        let cert = certify(
            &inst,
            &CertifyConfig {
                beta_override: Some(0.5625),
                ..CertifyConfig::default()
            },
        )
        .unwrap();
        let mut doc = ReportDocument::new(&inst);
        doc.set_certificate(&cert);
        doc.record_timing("certify", 1.0 / 3.0);
        let text = doc.to_json();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        validate_json(&value).unwrap();
        assert_eq!(ReportDocument::from_json(&text).unwrap(), doc);
        assert_eq!(value["recovered"], serde_json::json!([0, 1, 1]));
        assert_eq!(value["case"], "UniqueOptimum");
        assert_eq!(value["eta1"], 0.21875);
    }

    #[test]
    fn validation_rejects_extra_and_missing_keys() {
        let doc = ReportDocument::new(&examples::example2());
        let mut value = serde_json::to_value(&doc).unwrap();
        validate_json(&value).unwrap();
        value["bogus"] = serde_json::json!(1);
        assert!(validate_json(&value).is_err());
        value.as_object_mut().unwrap().remove("bogus");
        value.as_object_mut().unwrap().remove("eta1");
        assert!(validate_json(&value).is_err());
    }

    #[test]
    fn sig12_keeps_twelve_digits() {
        assert_eq!(sig12(7.0 / 24.0), 0.291666666667);
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(sig12(0.21875), 0.21875);
    }

    proptest! {
        #[test]
        fn rounded_floats_survive_json(x in -1e6f64..1e6) {
            let r = sig12(x);
            let back: f64 = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
            prop_assert_eq!(back, r);
            prop_assert_eq!(sig12(r), r);
            prop_assert!((r - x).abs() <= 1e-11 * x.abs().max(1e-300));
        }
    }
}
