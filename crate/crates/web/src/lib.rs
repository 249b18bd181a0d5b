//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function wraps a plain `Result<String, String>` core so the
//! logic is testable without a JavaScript host. Outputs are JSON strings.

use relaxcert::certify::{self, CertifyConfig, MisSource};
use relaxcert::goodness;
use relaxcert::instance::{parse_graph, parse_instance, to_standard_form, Weights, ZeroOneInstance};
use relaxcert::report::{sig12, ReportDocument};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest instance the page accepts; keeps the exhaustive check instant.
pub const MAX_VARIABLES: usize = 12;
/// Upper limit on curve samples.
pub const MAX_CURVE_POINTS: usize = 200;

fn load(text: &str, weights: &str) -> Result<(ZeroOneInstance, Weights), String> {
    let parsed = parse_instance(text).map_err(|e| e.to_string())?;
    let n = parsed.instance.cols();
    if n > MAX_VARIABLES {
        return Err(format!("the demo accepts at most {MAX_VARIABLES} variables, got {n}"));
    }
    let c = match parse_weights(weights)? {
        Some(c) => c,
        None => parsed.weights.unwrap_or_else(|| Weights::ones(n)),
    };
    if c.len() != n {
        return Err(format!("expected {n} weights, found {}", c.len()));
    }
    Ok((parsed.instance, c))
}

/// Comma- or space-separated weights; empty means "use the file's".
fn parse_weights(text: &str) -> Result<Option<Weights>, String> {
    let tokens: Vec<&str> = text
        .split(|ch: char| ch == ',' || ch.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.is_empty() {
        return Ok(None);
    }
    let values = tokens
        .iter()
        .map(|t| t.parse::<f64>().map_err(|_| format!("bad weight `{t}`")))
        .collect::<Result<Vec<_>, _>>()?;
    Weights::new(values).map(Some).map_err(|e| e.to_string())
}

fn beta_arg(beta: f64) -> Option<f64> {
    // The page passes NaN (or a nonpositive value) for "use beta_bar".
    (beta.is_finite() && beta > 0.0).then_some(beta)
}

/// Runs the certification loop and returns the full JSON report.
pub fn certify_report(text: &str, weights: &str, beta: f64, max_iters: u32) -> Result<String, String> {
    let (inst, c) = load(text, weights)?;
    let config = CertifyConfig {
        beta_override: beta_arg(beta),
        initial_weights: Some(c),
        max_weight_iterations: max_iters.clamp(1, 50) as usize,
        ..CertifyConfig::default()
    };
    let cert = certify::certify(&inst, &config).map_err(|e| e.to_string())?;
    let mut doc = ReportDocument::new(&inst);
    doc.set_certificate(&cert);
    Ok(doc.to_json())
}

/// Samples `eta1`, `s*` and the closed-form gamma-hat at `points` radii
/// spaced geometrically over `[beta_min, beta_max]`.
pub fn eta_curve(
    text: &str,
    weights: &str,
    beta_min: f64,
    beta_max: f64,
    points: u32,
) -> Result<String, String> {
    let (inst, c) = load(text, weights)?;
    if !(beta_min > 0.0 && beta_max >= beta_min && beta_max.is_finite()) {
        return Err("need 0 < beta_min <= beta_max < infinity".into());
    }
    let points = (points as usize).clamp(2, MAX_CURVE_POINTS);
    let sf = to_standard_form(&inst);
    let threshold = goodness::threshold(&c);
    let ratio = (beta_max / beta_min).powf(1.0 / (points - 1) as f64);
    let samples = (0..points)
        .map(|k| {
            let beta = beta_min * ratio.powi(k as i32);
            let eta1 = goodness::eta_1k(&sf, &c, beta).map_err(|e| e.to_string())?;
            Ok(json!({
                "beta": sig12(beta),
                "eta1": sig12(eta1),
                "s_star": goodness::s_star_from(eta1, threshold, sf.n),
                "gamma_hat": sig12(goodness::gamma_hat_closed_form(&sf, &c, beta)),
            }))
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(json!({
        "threshold": sig12(threshold),
        "beta_bar": sig12(goodness::beta_bar(&sf, &c)),
        "samples": samples,
    })
    .to_string())
}

/// Maximum independent set of a graph in `p N` / `e u v` format.
pub fn mis_report(text: &str) -> Result<String, String> {
    let (count, edges) = parse_graph(text).map_err(|e| e.to_string())?;
    if count > MAX_VARIABLES {
        return Err(format!("the demo accepts at most {MAX_VARIABLES} vertices, got {count}"));
    }
    let out = certify::solve_mis(count, &edges, &CertifyConfig::default())
        .map_err(|e| e.to_string())?;
    let source = match out.source {
        MisSource::Certificate => "certificate",
        MisSource::IntegralRelaxation => "integral relaxation",
        MisSource::Exhaustive => "exhaustive search",
        MisSource::Edgeless => "edgeless graph",
    };
    let cert = out.certificate.as_ref();
    Ok(json!({
        "vertices": count,
        "edges": out.context.edges.len(),
        "independent_set": out.members(),
        "size": out.size(),
        "source": source,
        "certified": cert.map(|c| c.certified),
        "verified": cert.and_then(|c| c.brute_force_verified),
        "eta1": cert.map(|c| sig12(c.final_report().eta1)),
        "lp_x": cert.map(|c| c.x().iter().map(|v| sig12(*v)).collect::<Vec<_>>()),
    })
    .to_string())
}

#[wasm_bindgen(js_name = certify)]
pub fn certify_js(text: &str, weights: &str, beta: f64, max_iters: u32) -> Result<String, JsError> {
    certify_report(text, weights, beta, max_iters).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = etaCurve)]
pub fn eta_curve_js(
    text: &str,
    weights: &str,
    beta_min: f64,
    beta_max: f64,
    points: u32,
) -> Result<String, JsError> {
    eta_curve(text, weights, beta_min, beta_max, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = maxIndependentSet)]
pub fn mis_js(text: &str) -> Result<String, JsError> {
    mis_report(text).map_err(|e| JsError::new(&e))
}
