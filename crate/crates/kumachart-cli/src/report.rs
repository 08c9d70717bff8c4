//! Report rendering: JSON documents for `--out` and human-readable text
//! for stdout.
//!
//! Every JSON document carries `schema_version` (currently 1) and
//! `command` so consumers can dispatch without guessing. Keys are emitted
//! in sorted order, and floats use shortest round-trip formatting, so a
//! seeded run produces byte-identical reports.

use crate::error::CliError;
use kumachart::calib::AdjustmentResult;
use kumachart::mc::CarlSummary;
use kumachart::{ControlLimitsF64, FitResult};
use serde_json::{json, Map, Value};
use std::fs;
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

/// Starts a JSON document with the version/command preamble.
pub fn envelope(command: &str) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    map
}

pub fn limits_value(limits: &ControlLimitsF64) -> Value {
    json!({
        "lcl": limits.lcl(),
        "cl": limits.cl(),
        "ucl": limits.ucl(),
        "far": limits.far(),
        "source": limits.source(),
    })
}

pub fn fit_value(fit: &FitResult) -> Value {
    json!({
        "theta1_hat": fit.params_hat.theta1(),
        "theta2_hat": fit.params_hat.theta2(),
        "se_theta1": fit.std_errors.0,
        "se_theta2": fit.std_errors.1,
        "loglik": fit.loglik,
        "converged": fit.converged,
    })
}

pub fn summary_value(summary: &CarlSummary) -> Value {
    let mut percentiles = Map::new();
    for (level, value) in &summary.percentiles {
        percentiles.insert(percentile_label(*level), json!(value));
    }
    json!({
        "aarl": summary.aarl,
        "sdarl": summary.sdarl,
        "frac_below_reference": summary.frac_below_reference,
        "reference_arl": summary.reference_arl,
        "n_effective": summary.n_effective,
        "percentiles": Value::Object(percentiles),
    })
}

pub fn adjustment_value(result: &AdjustmentResult) -> Value {
    json!({
        "method": result.method,
        "alpha_adjusted": result.alpha_adjusted,
        "criterion_value": result.criterion_value,
        "evaluations": result.evaluations,
        "summary": summary_value(&result.summary),
    })
}

/// `0.05 -> "p05"`, `0.50 -> "p50"`, ...
pub fn percentile_label(level: f64) -> String {
    format!("p{:02}", (level * 100.0).round() as u32)
}

/// Writes a pretty-printed JSON document to `path`.
pub fn write_json(path: &Path, doc: &Map<String, Value>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(&Value::Object(doc.clone()))
        .expect("report serialization cannot fail");
    text.push('\n');
    fs::write(path, text).map_err(CliError::io(path))
}

/// Human-readable block describing a set of control limits.
pub fn format_limits(limits: &ControlLimitsF64) -> String {
    let source = serde_json::to_value(limits.source()).expect("source serialization cannot fail");
    format!(
        "source: {}\nfar:    {:.6}\nlcl:    {:.6}\ncl:     {:.6}\nucl:    {:.6}",
        source.as_str().unwrap_or("?"),
        limits.far(),
        limits.lcl(),
        limits.cl(),
        limits.ucl(),
    )
}

/// Human-readable block describing a fit.
pub fn format_fit(fit: &FitResult) -> String {
    format!(
        "theta1_hat: {:.6} (se {:.6})\ntheta2_hat: {:.6} (se {:.6})\nloglik:     {:.6}\nconverged:  {}",
        fit.params_hat.theta1(),
        fit.std_errors.0,
        fit.params_hat.theta2(),
        fit.std_errors.1,
        fit.loglik,
        fit.converged,
    )
}

/// Human-readable block describing a conditional-ARL summary.
pub fn format_summary(summary: &CarlSummary) -> String {
    let mut text = format!(
        "aarl:                 {:.2}\nsdarl:                {:.2}\nfrac_below_reference: {:.4}\nreference_arl:        {:.2}\nn_effective:          {}",
        summary.aarl,
        summary.sdarl,
        summary.frac_below_reference,
        summary.reference_arl,
        summary.n_effective,
    );
    for (level, value) in &summary.percentiles {
        text.push_str(&format!(
            "\n{}:                  {:.2}",
            percentile_label(*level),
            value
        ));
    }
    text
}
