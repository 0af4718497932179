//! `evocut sweep`: run a (k, seed) grid in parallel and summarize the
//! fitted parameters and verdicts in one CSV.
//!
//! Per-run failures (bad combination, degenerate fit) land in the `error`
//! column of their row; they never abort the sweep. `EVOCUT_THREADS`
//! bounds the worker pool.

use std::fs;
use std::path::Path;

use evocut_core::stats::DegreeHistogram;
use rayon::prelude::*;

use crate::generate::{load_config, write_run};
use crate::report::build_report;
use crate::{io_error, CliError};

struct SweepRow {
    k: usize,
    seed: u64,
    gamma: Option<f64>,
    beta: Option<f64>,
    verdict: String,
    error: String,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn thread_budget() -> Result<Option<usize>, CliError> {
    match std::env::var("EVOCUT_THREADS") {
        Ok(v) => {
            let n: usize = v.parse().map_err(|_| {
                CliError::Validation(format!(
                    "EVOCUT_THREADS must be a positive integer, got {v:?}"
                ))
            })?;
            if n == 0 {
                return Err(CliError::Validation(
                    "EVOCUT_THREADS must be a positive integer".into(),
                ));
            }
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

pub fn cmd_sweep(
    config_path: &Path,
    k_values: &[usize],
    seeds: &[u64],
    out_dir: &Path,
) -> Result<(), CliError> {
    if k_values.is_empty() {
        return Err(CliError::Validation(
            "sweep needs at least one k value".into(),
        ));
    }
    if seeds.is_empty() {
        return Err(CliError::Validation("sweep needs at least one seed".into()));
    }
    let base = load_config(config_path)?;
    fs::create_dir_all(out_dir).map_err(|e| io_error(out_dir, e))?;

    let mut pool_builder = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = thread_budget()? {
        pool_builder = pool_builder.num_threads(threads);
    }
    let pool = pool_builder
        .build()
        .map_err(|e| CliError::Validation(format!("thread pool: {e}")))?;

    let jobs: Vec<(usize, u64)> = k_values
        .iter()
        .flat_map(|&k| seeds.iter().map(move |&s| (k, s)))
        .collect();
    let mut rows: Vec<SweepRow> = pool.install(|| {
        jobs.par_iter()
            .map(|&(k, seed)| run_one(&base, k, seed, out_dir))
            .collect()
    });
    rows.sort_by_key(|r| (r.k, r.seed));

    let mut csv = String::from("k,seed,gamma,beta,verdict,error\n");
    for row in &rows {
        let fmt = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_default();
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.k,
            row.seed,
            fmt(row.gamma),
            fmt(row.beta),
            csv_field(&row.verdict),
            csv_field(&row.error),
        ));
    }
    let summary_path = out_dir.join("summary.csv");
    fs::write(&summary_path, csv).map_err(|e| io_error(&summary_path, e))?;
    println!("wrote {} rows to {}", rows.len(), summary_path.display());
    Ok(())
}

fn run_one(base: &evocut_core::EvolutionConfig, k: usize, seed: u64, out_dir: &Path) -> SweepRow {
    let mut row = SweepRow {
        k,
        seed,
        gamma: None,
        beta: None,
        verdict: String::new(),
        error: String::new(),
    };
    let mut config = base.clone();
    config.k = k;
    config.seed = seed;
    if let Err(e) = config.validate() {
        row.error = e.to_string();
        return row;
    }
    let run_dir = out_dir.join(format!("run_k{k}_s{seed}"));
    let manifest = match write_run(&config, &run_dir) {
        Ok(m) => m,
        Err(e) => {
            row.error = e.to_string();
            return row;
        }
    };
    let _ = manifest;
    let edge_text = match fs::read_to_string(run_dir.join(crate::generate::EDGE_LIST_FILE)) {
        Ok(t) => t,
        Err(e) => {
            row.error = e.to_string();
            return row;
        }
    };
    let loaded = match evocut_core::load_edge_list(&edge_text) {
        Ok(l) => l,
        Err(e) => {
            row.error = e.to_string();
            return row;
        }
    };
    let h = DegreeHistogram::from_graph(&loaded.graph);
    let report = build_report(&h, None);
    row.gamma = report
        .power_law
        .as_ref()
        .and_then(|f| f.params["gamma"].as_f64());
    row.beta = report
        .stretched_exponential
        .as_ref()
        .and_then(|f| f.params["beta"].as_f64());
    row.verdict = report.verdict;
    let mut failures: Vec<String> = Vec::new();
    if let Some(e) = report.power_law_error {
        failures.push(format!("power-law fit: {e}"));
    }
    if let Some(e) = report.stretched_exponential_error {
        failures.push(format!("stretched fit: {e}"));
    }
    row.error = failures.join("; ");
    row
}
