use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{estimate_event_in, ExperimentConfig, ExperimentRecord, McError};

/// Overrides every manifest seed when set.
pub const SEED_ENV: &str = "ZOL_SEED";

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub experiments: Vec<ExperimentConfig>,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    /// Directory receiving `results.csv` and `results.jsonl`; nothing is written when `None`.
    pub out_dir: Option<PathBuf>,
    pub seed_override: Option<u64>,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub records: Vec<ExperimentRecord>,
    /// Indices of records whose declared threshold was not met.
    pub breaches: Vec<usize>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.breaches.is_empty()
    }
}

pub fn seed_from_env() -> Result<Option<u64>, McError> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| McError::Config(format!("{SEED_ENV}={s:?} is not a 64-bit unsigned integer"))),
        Err(_) => Ok(None),
    }
}

/// Runs every experiment of the manifest at `path`, appending to the results store.
pub fn run_suite(path: &Path, options: &SuiteOptions) -> Result<SuiteOutcome, McError> {
    let text = fs::read_to_string(path).map_err(|source| McError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let manifest: Manifest = if text.trim().is_empty() {
        Manifest::default()
    } else {
        serde_json::from_str(&text)?
    };
    let base = path.parent();
    let run = || -> Result<Vec<ExperimentRecord>, McError> {
        manifest
            .experiments
            .iter()
            .map(|c| {
                let mut c = c.clone();
                if let Some(seed) = options.seed_override {
                    c.seed = seed;
                }
                estimate_event_in(&c, base)
            })
            .collect()
    };
    let records = match options.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| McError::Config(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    if let Some(dir) = &options.out_dir {
        append_results(dir, &records)?;
    }
    let breaches = records
        .iter()
        .enumerate()
        .filter(|(_, r)| r.threshold_ok == Some(false))
        .map(|(i, _)| i)
        .collect();
    Ok(SuiteOutcome { records, breaches })
}

#[derive(Serialize)]
struct CsvRow<'a> {
    name: &'a str,
    n: usize,
    alpha: String,
    p: f64,
    pattern: String,
    event: &'a str,
    samples: usize,
    seed: u64,
    hits: usize,
    frequency: f64,
    ci_low: f64,
    ci_high: f64,
    mean_edges: f64,
    threshold_ok: String,
    wall_ms: f64,
    version: &'a str,
}

fn append_results(dir: &Path, records: &[ExperimentRecord]) -> Result<(), McError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| McError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    let csv_path = dir.join("results.csv");
    let fresh = !csv_path.exists() || fs::metadata(&csv_path).map(|m| m.len() == 0).unwrap_or(true);
    let file = OpenOptions::new().create(true).append(true).open(&csv_path).map_err(io(&csv_path))?;
    let mut writer = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    for r in records {
        let event = serde_json::to_value(r.config.event)?;
        writer.serialize(CsvRow {
            name: r.config.name.as_deref().unwrap_or(""),
            n: r.config.n,
            alpha: r.config.alpha.as_ref().map(|a| a.to_string()).unwrap_or_default(),
            p: r.p,
            pattern: serde_json::to_string(&r.config.pattern)?,
            event: event.as_str().unwrap_or(""),
            samples: r.config.samples,
            seed: r.config.seed,
            hits: r.hits,
            frequency: r.frequency,
            ci_low: r.ci_low,
            ci_high: r.ci_high,
            mean_edges: r.mean_edges,
            threshold_ok: r.threshold_ok.map(|b| b.to_string()).unwrap_or_default(),
            wall_ms: r.wall_ms,
            version: &r.version,
        })?;
    }
    writer.flush().map_err(io(&csv_path))?;

    let json_path = dir.join("results.jsonl");
    let mut json = OpenOptions::new().create(true).append(true).open(&json_path).map_err(io(&json_path))?;
    for r in records {
        let line = serde_json::to_string(r)?;
        writeln!(json, "{line}").map_err(io(&json_path))?;
    }
    Ok(())
}
