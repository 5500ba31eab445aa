//! Monte Carlo experiments on `G(n, p)`.

mod rng;
mod suite;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use rng::{bernoulli_threshold, mix, Stream, GAMMA};
pub use suite::{run_suite, seed_from_env, Manifest, SuiteOptions, SuiteOutcome, SEED_ENV};

use crate::graph::{count_subgraph_copies, has_copy, Graph, GraphError};
use crate::rational::Rational;

pub const VERSION: &str = match option_env!("ZOL_BUILD_HASH") {
    Some(h) => h,
    None => concat!("zolaw-", env!("CARGO_PKG_VERSION")),
};

#[derive(Debug, thiserror::Error)]
pub enum McError {
    #[error("invalid experiment: {0}")]
    Config(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("manifest: {0}")]
    Manifest(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// One `G(n, p)` sample: each pair `a < b`, in lexicographic order, takes the
/// next draw of stream `(seed, index)` and is an edge when the draw is below
/// `floor(p · 2^64)`.
pub fn sample_gnp(n: usize, p: f64, seed: u64, index: u64) -> Graph {
    let mut g = Graph::empty(n);
    let threshold = bernoulli_threshold(p);
    if threshold == Some(0) {
        return g;
    }
    let mut stream = Stream::new(seed, index);
    for a in 0..n {
        for b in a + 1..n {
            let draw = stream.next_u64();
            if threshold.map_or(true, |t| draw < t) {
                g.add_edge(a, b).expect("fresh pair");
            }
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Event {
    ZeroCopies,
    HasCopy,
    /// Frequency reported is that of zero copies; the record carries the histogram.
    CopyCountHistogram,
}

/// `K4`, `C5`, `P3` (path on 3 vertices), a path to an edge-list file, or an inline edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatternRef {
    Inline { edges: String },
    File { path: PathBuf },
    Name(String),
}

impl PatternRef {
    pub fn resolve(&self, base: Option<&Path>) -> Result<Graph, McError> {
        match self {
            PatternRef::Inline { edges } => Ok(edges.parse()?),
            PatternRef::File { path } => {
                let full = match base {
                    Some(b) if path.is_relative() => b.join(path),
                    _ => path.clone(),
                };
                let text = std::fs::read_to_string(&full).map_err(|source| McError::Io {
                    path: full.clone(),
                    source,
                })?;
                Ok(text.parse()?)
            }
            PatternRef::Name(name) => named_pattern(name),
        }
    }
}

fn named_pattern(name: &str) -> Result<Graph, McError> {
    let bad = || McError::Config(format!("unknown pattern {name:?}; use K<n>, C<n> or P<n>"));
    let (kind, size) = name.split_at(1.min(name.len()));
    let n: usize = size.parse().map_err(|_| bad())?;
    match kind {
        "K" if n >= 1 => Ok(Graph::complete(n)),
        "C" if n >= 3 => Ok(Graph::cycle(n)),
        "P" if n >= 1 => Ok(Graph::path(n)),
        _ => Err(bad()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
}

impl Threshold {
    pub fn accepts(&self, freq: f64) -> bool {
        self.min.map_or(true, |m| freq >= m) && self.max.map_or(true, |m| freq <= m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    /// `p = n^(-alpha)`; give exactly one of `alpha` and `p`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub pattern: PatternRef,
    pub samples: usize,
    pub seed: u64,
    pub event: Event,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Threshold>,
}

impl ExperimentConfig {
    pub fn edge_probability(&self) -> Result<f64, McError> {
        let p = match (&self.alpha, self.p) {
            (Some(a), None) => (self.n as f64).powf(-a.to_f64()),
            (None, Some(p)) => p,
            _ => return Err(McError::Config("give exactly one of alpha and p".into())),
        };
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(McError::Config(format!("p = {p} is outside [0, 1]")));
        }
        Ok(p)
    }

    fn validate(&self) -> Result<(), McError> {
        if self.samples == 0 {
            return Err(McError::Config("samples must be at least 1".into()));
        }
        if self.n == 0 {
            return Err(McError::Config("n must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub config: ExperimentConfig,
    pub p: f64,
    pub hits: usize,
    pub frequency: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub mean_edges: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub histogram: Option<BTreeMap<u64, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold_ok: Option<bool>,
    pub wall_ms: f64,
    pub version: String,
}

/// Wilson score interval at 95%.
pub fn wilson_interval(hits: usize, trials: usize) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let phat = hits as f64 / n;
    let denom = 1.0 + z * z / n;
    let center = (phat + z * z / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    // Rounding can push an endpoint past phat when phat is 0 or 1.
    ((center - half).clamp(0.0, phat), (center + half).clamp(phat, 1.0))
}

pub fn estimate_event(config: &ExperimentConfig) -> Result<ExperimentRecord, McError> {
    estimate_event_in(config, None)
}

/// As [`estimate_event`], resolving pattern files relative to `base`.
pub fn estimate_event_in(config: &ExperimentConfig, base: Option<&Path>) -> Result<ExperimentRecord, McError> {
    config.validate()?;
    let p = config.edge_probability()?;
    let pattern = config.pattern.resolve(base)?;
    // Surface cap errors before spending any samples.
    has_copy(&pattern, &pattern)?;
    let started = Instant::now();
    let outcomes: Result<Vec<(u64, u64)>, GraphError> = (0..config.samples as u64)
        .into_par_iter()
        .map(|i| {
            let g = sample_gnp(config.n, p, config.seed, i);
            let edges = g.edge_count() as u64;
            let value = match config.event {
                Event::HasCopy | Event::ZeroCopies => u64::from(has_copy(&g, &pattern).or_else(|e| small_host(e, &g, &pattern))?),
                Event::CopyCountHistogram => {
                    if g.vertex_count() < pattern.vertex_count() {
                        0
                    } else {
                        count_subgraph_copies(&g, &pattern)?.min(u64::MAX as u128) as u64
                    }
                }
            };
            Ok((value, edges))
        })
        .collect();
    let outcomes = outcomes?;
    let hits = outcomes
        .iter()
        .filter(|&&(v, _)| match config.event {
            Event::HasCopy => v == 1,
            Event::ZeroCopies | Event::CopyCountHistogram => v == 0,
        })
        .count();
    let histogram = (config.event == Event::CopyCountHistogram).then(|| {
        let mut h = BTreeMap::new();
        for &(v, _) in &outcomes {
            *h.entry(v).or_insert(0) += 1;
        }
        h
    });
    let total_edges: u64 = outcomes.iter().map(|&(_, e)| e).sum();
    let frequency = hits as f64 / config.samples as f64;
    let (ci_low, ci_high) = wilson_interval(hits, config.samples);
    Ok(ExperimentRecord {
        config: config.clone(),
        p,
        hits,
        frequency,
        ci_low,
        ci_high,
        mean_edges: total_edges as f64 / config.samples as f64,
        histogram,
        threshold_ok: config.threshold.map(|t| t.accepts(frequency)),
        wall_ms: started.elapsed().as_secs_f64() * 1000.0,
        version: VERSION.to_string(),
    })
}

/// A host smaller than the pattern simply has no copy.
fn small_host(e: GraphError, g: &Graph, pattern: &Graph) -> Result<bool, GraphError> {
    if g.vertex_count() < pattern.vertex_count() {
        Ok(false)
    } else {
        Err(e)
    }
}
