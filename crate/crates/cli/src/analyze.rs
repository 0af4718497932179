//! `evocut analyze`: degree histogram, both p(k) normalizations, fits
//! and verdict for an edge-list file.

use std::fs;
use std::path::Path;

use evocut_core::graph::load_edge_list;
use evocut_core::plot::{render_svg, FitOverlay, PlotScale, PlotSpec, Series};
use evocut_core::stats::{DegreeHistogram, Normalization};

use crate::generate::{RunManifest, MANIFEST_FILE};
use crate::report::{build_report, AnalysisReport};
use crate::{io_error, CliError};

pub fn cmd_analyze(
    edgelist: &Path,
    k_min: Option<usize>,
    norm: Normalization,
    plot: Option<&Path>,
) -> Result<(), CliError> {
    let text = fs::read_to_string(edgelist).map_err(|e| io_error(edgelist, e))?;
    let loaded = load_edge_list(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", edgelist.display())))?;
    if loaded.graph.node_count() == 0 {
        return Err(CliError::Validation(format!(
            "{}: empty edge list",
            edgelist.display()
        )));
    }
    check_manifest(edgelist);

    let h = DegreeHistogram::from_graph(&loaded.graph);
    let report = build_report(&h, k_min);

    let sidecar = |ext: &str| edgelist.with_extension(ext);
    let hist_path = sidecar("hist.csv");
    fs::write(&hist_path, h.to_csv()).map_err(|e| io_error(&hist_path, e))?;
    let pk_path = sidecar("pk.csv");
    fs::write(&pk_path, pk_csv(&h)).map_err(|e| io_error(&pk_path, e))?;
    let fit_path = sidecar("fit.json");
    let report_json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    fs::write(&fit_path, &report_json).map_err(|e| io_error(&fit_path, e))?;

    if let Some(plot_path) = plot {
        let spec = plot_spec(&h, norm, &report);
        let svg = render_svg(&spec).map_err(|e| CliError::Validation(e.to_string()))?;
        fs::write(plot_path, svg).map_err(|e| io_error(plot_path, e))?;
    }

    print!("{report_json}");
    Ok(())
}

/// Both normalizations side by side: `k,pk_by_n,pk_by_2m`.
fn pk_csv(h: &DegreeHistogram) -> String {
    let by_n = h.pk(Normalization::ByN);
    let by_2m = h.pk(Normalization::ByTwoM);
    let mut out = String::from("k,pk_by_n,pk_by_2m\n");
    for (a, b) in by_n.iter().zip(&by_2m) {
        out.push_str(&format!("{},{},{}\n", a.0, a.1, b.1));
    }
    out
}

/// Warn (stderr) when a run manifest sits next to the edge list but its
/// recorded hash does not match its own config.
fn check_manifest(edgelist: &Path) {
    let manifest_path = match edgelist.parent() {
        Some(dir) => dir.join(MANIFEST_FILE),
        None => return,
    };
    let Ok(text) = fs::read_to_string(&manifest_path) else {
        return;
    };
    match serde_json::from_str::<RunManifest>(&text) {
        Ok(manifest) => {
            if manifest.config.config_hash() != manifest.config_hash {
                eprintln!(
                    "warning: {} hash mismatch: config hashes to {} but manifest records {}",
                    manifest_path.display(),
                    manifest.config.config_hash(),
                    manifest.config_hash
                );
            }
        }
        Err(e) => eprintln!(
            "warning: unreadable manifest {}: {e}",
            manifest_path.display()
        ),
    }
}

/// Log-log scatter of p(k) with the fitted forms overlaid.
fn plot_spec(h: &DegreeHistogram, norm: Normalization, report: &AnalysisReport) -> PlotSpec {
    let points: Vec<(f64, f64)> = h
        .pk(norm)
        .into_iter()
        .filter(|&(k, p)| k >= 1 && p > 0.0)
        .map(|(k, p)| (k as f64, p))
        .collect();
    let mut overlays = Vec::new();
    if let Some(pl) = &report.power_law {
        let gamma = pl.params["gamma"].as_f64().unwrap_or(f64::NAN);
        let k_min = pl.k_min.unwrap_or(1).max(1);
        if let Some(&(k0, p0)) = points.iter().find(|&&(k, _)| k >= k_min as f64) {
            let scale = p0 * k0.powf(gamma);
            overlays.push(FitOverlay {
                label: format!("power law: gamma={gamma:.2}, kmin={k_min}"),
                points: log_grid(k_min as f64, points.last().unwrap().0)
                    .map(|k| (k, scale * k.powf(-gamma)))
                    .collect(),
            });
        }
    }
    if let Some(se) = &report.stretched_exponential {
        let beta = se.params["beta"].as_f64().unwrap_or(f64::NAN);
        let kappa = se.params["kappa"].as_f64().unwrap_or(f64::NAN);
        if beta.is_finite() && kappa > 0.0 {
            let surv = move |k: f64| (-(k / kappa).powf(beta)).exp();
            if let Some(&(k0, p0)) = points.first() {
                let base = surv(k0) - surv(k0 + 1.0);
                if base > 0.0 {
                    let scale = p0 / base;
                    overlays.push(FitOverlay {
                        label: format!("stretched: beta={beta:.2}, kappa={kappa:.2}"),
                        points: log_grid(k0, points.last().unwrap().0)
                            .map(|k| {
                                (
                                    k,
                                    (scale * (surv(k) - surv(k + 1.0))).max(f64::MIN_POSITIVE),
                                )
                            })
                            .collect(),
                    });
                }
            }
        }
    }
    PlotSpec {
        title: format!(
            "degree distribution (n={}, verdict: {})",
            report.nodes, report.verdict
        ),
        x_label: "k".into(),
        y_label: "p(k)".into(),
        scale: PlotScale::LogLog,
        series: vec![Series {
            label: "p(k)".into(),
            points,
        }],
        overlays,
    }
}

fn log_grid(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    const POINTS: usize = 60;
    let (llo, lhi) = (lo.ln(), hi.max(lo * 1.0001).ln());
    (0..=POINTS).map(move |i| (llo + (lhi - llo) * i as f64 / POINTS as f64).exp())
}
