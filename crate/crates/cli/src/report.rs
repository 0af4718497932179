//! Fit report JSON emitted by `analyze` and reused by `sweep` rows.

use evocut_core::stats::{
    compare_fits, fit_power_law, fit_power_law_auto, fit_stretched_exponential, DegreeHistogram,
    PowerLawFit, StretchedExpFit,
};
use serde::Serialize;
use serde_json::json;

#[derive(Debug, Clone, Serialize)]
pub struct FitSection {
    pub method: &'static str,
    pub params: serde_json::Value,
    pub goodness: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_min: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_tail: Option<usize>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub nodes: usize,
    pub edges: usize,
    pub distinct_degrees: usize,
    pub power_law: Option<FitSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power_law_error: Option<String>,
    pub stretched_exponential: Option<FitSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stretched_exponential_error: Option<String>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_likelihood_gap: Option<f64>,
}

fn power_law_section(fit: &PowerLawFit, method: &'static str) -> FitSection {
    let mut warnings = Vec::new();
    if !(2.0 < fit.gamma && fit.gamma <= 3.0) {
        warnings.push(format!(
            "exponent {:.3} outside the typical scale-free range (2, 3]",
            fit.gamma
        ));
    }
    FitSection {
        method,
        params: json!({ "gamma": fit.gamma }),
        goodness: json!({ "ks_stat": fit.ks_stat }),
        k_min: Some(fit.k_min),
        n_tail: Some(fit.n_tail),
        warnings,
    }
}

fn stretched_section(fit: &StretchedExpFit) -> FitSection {
    let mut warnings = Vec::new();
    if fit.beta > 1.0 {
        warnings.push(format!(
            "beta {:.3} > 1: decay at or beyond the pure exponential",
            fit.beta
        ));
    }
    if fit.beta > 1.5 {
        warnings.push(format!(
            "beta {:.3} > 1.5: outside the trusted range",
            fit.beta
        ));
    }
    FitSection {
        method: "ccdf-loglog-least-squares",
        params: json!({ "beta": fit.beta, "kappa": fit.kappa }),
        goodness: json!({ "r2": fit.r2 }),
        k_min: None,
        n_tail: None,
        warnings,
    }
}

/// Runs both fits plus the comparison. `k_min` pins the power-law
/// cutoff for the reported fit; the verdict methodology (KS-scan cutoff)
/// is fixed regardless.
pub fn build_report(h: &DegreeHistogram, k_min: Option<usize>) -> AnalysisReport {
    let power_law = match k_min {
        Some(km) => fit_power_law(h, km),
        None => fit_power_law_auto(h),
    };
    let (pl_section, pl_error) = match &power_law {
        Ok(fit) => (
            Some(power_law_section(
                fit,
                if k_min.is_some() {
                    "discrete-mle"
                } else {
                    "discrete-mle+ks-scan"
                },
            )),
            None,
        ),
        Err(e) => (None, Some(e.to_string())),
    };
    let stretched = fit_stretched_exponential(h);
    let (se_section, se_error) = match &stretched {
        Ok(fit) => (Some(stretched_section(fit)), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let cmp = compare_fits(h);
    AnalysisReport {
        nodes: h.node_count(),
        edges: h.total_degree() / 2,
        distinct_degrees: h.distinct_degrees(),
        power_law: pl_section,
        power_law_error: pl_error,
        stretched_exponential: se_section,
        stretched_exponential_error: se_error,
        verdict: cmp.verdict.to_string(),
        verdict_reason: cmp.reason,
        log_likelihood_gap: cmp.log_likelihood_gap,
    }
}
