//! The Monte Carlo harness: seeded trial grids, per-kind measurements,
//! aggregation, and CSV/JSON emission.

mod config;
mod report;
mod tails;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

pub use config::{Cell, ExperimentConfig, ExperimentKind, ExperimentSection, ExtractParams, OutputSection, ResilienceParams};
pub use report::{
    content_hash, csv_bytes, emit_report, summarize, timing, timing_path, write_atomic, CellSummary, CellTiming, Prediction,
    Summary, Timing, CSV_SCHEMA_VERSION,
};
pub use tails::{binomial_tail_bounds, binomial_upper, chernoff_lower, chernoff_upper, TailBound, TailBounds, TailKind, TailQuery};

use crate::certify::{CheckMode, Verdict};
use crate::error::{Error, Result};
use crate::extract::{build_gamma0, SparsifyConfig};
use crate::graph::{gnp_sample, low_degree_set, wbd_sequence, Graph};
use crate::packing::pack_hamilton_cycles;
use crate::posa::find_hamilton_cycle;
use crate::resilience::{make_adversary, test_resilience, AdversarySpec};
use crate::rng::{trial_seed, RngSpec};

/// Per-kind measurements of one trial (one adversary, for resilience).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Measured {
    EdgeCount {
        edges: usize,
        lower: f64,
        upper: f64,
        within: bool,
    },
    MinDegree {
        min_degree: usize,
        delta_ge2: bool,
        low_count: usize,
        low_bound: f64,
    },
    Hamiltonicity {
        min_degree: usize,
        found: bool,
        status: String,
        decided_by: String,
        restarts: usize,
        rotations: u64,
        best_path: usize,
    },
    Resilience {
        adversary: usize,
        strategy: String,
        low_count: usize,
        h_edges: usize,
        utilization: f64,
        saturated: usize,
        verdict: String,
    },
    Packing {
        min_degree: usize,
        target: usize,
        achieved: usize,
        reached: bool,
        shortfall: String,
    },
    ExtractCertify {
        low_count: usize,
        h_edges: usize,
        gamma_edges: usize,
        extraction: String,
        l1: String,
        l2: String,
        l3: String,
        l4: String,
    },
}

impl Measured {
    /// CSV columns after the shared cell/trial columns.
    pub fn columns(kind: ExperimentKind) -> &'static [&'static str] {
        match kind {
            ExperimentKind::EdgeCount => &["edges", "lower", "upper", "within"],
            ExperimentKind::MinDegreeThreshold => &["min_degree", "delta_ge2", "low_count", "low_bound"],
            ExperimentKind::HamiltonicityThreshold => {
                &["min_degree", "found", "status", "decided_by", "restarts", "rotations", "best_path"]
            }
            ExperimentKind::Resilience => {
                &["adversary", "strategy", "low_count", "h_edges", "utilization", "saturated", "verdict"]
            }
            ExperimentKind::Packing => &["min_degree", "target", "achieved", "reached", "shortfall"],
            ExperimentKind::ExtractCertify => &["low_count", "h_edges", "gamma_edges", "extraction", "l1", "l2", "l3", "l4"],
        }
    }

    pub fn fields(&self) -> Vec<String> {
        fn s(x: impl ToString) -> String {
            x.to_string()
        }
        match self {
            Measured::EdgeCount { edges, lower, upper, within } => vec![s(edges), s(lower), s(upper), s(within)],
            Measured::MinDegree { min_degree, delta_ge2, low_count, low_bound } => {
                vec![s(min_degree), s(delta_ge2), s(low_count), s(low_bound)]
            }
            Measured::Hamiltonicity { min_degree, found, status, decided_by, restarts, rotations, best_path } => vec![
                s(min_degree),
                s(found),
                s(status),
                s(decided_by),
                s(restarts),
                s(rotations),
                s(best_path),
            ],
            Measured::Resilience { adversary, strategy, low_count, h_edges, utilization, saturated, verdict } => vec![
                s(adversary),
                s(strategy),
                s(low_count),
                s(h_edges),
                s(utilization),
                s(saturated),
                s(verdict),
            ],
            Measured::Packing { min_degree, target, achieved, reached, shortfall } => {
                vec![s(min_degree), s(target), s(achieved), s(reached), s(shortfall)]
            }
            Measured::ExtractCertify { low_count, h_edges, gamma_edges, extraction, l1, l2, l3, l4 } => vec![
                s(low_count),
                s(h_edges),
                s(gamma_edges),
                s(extraction),
                s(l1),
                s(l2),
                s(l3),
                s(l4),
            ],
        }
    }

    /// The per-row success flag aggregated into a cell's rate.
    pub fn success(&self) -> bool {
        match self {
            Measured::EdgeCount { within, .. } => *within,
            Measured::MinDegree { delta_ge2, .. } => *delta_ge2,
            Measured::Hamiltonicity { found, .. } => *found,
            Measured::Resilience { verdict, .. } => verdict == "found",
            Measured::Packing { reached, .. } => *reached,
            Measured::ExtractCertify { extraction, l1, l2, l3, l4, .. } => {
                extraction != "fail" && [l1, l2, l3, l4].iter().all(|v| v.as_str() != "fail")
            }
        }
    }

    /// The per-row quantity summarized by mean and quantiles.
    pub fn value(&self) -> f64 {
        match self {
            Measured::EdgeCount { edges, .. } => *edges as f64,
            Measured::MinDegree { min_degree, .. } | Measured::Hamiltonicity { min_degree, .. } => *min_degree as f64,
            Measured::Resilience { h_edges, .. } => *h_edges as f64,
            Measured::Packing { achieved, .. } => *achieved as f64,
            Measured::ExtractCertify { gamma_edges, .. } => *gamma_edges as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub cell: Cell,
    pub trial: u32,
    pub seed: u64,
    pub measured: Measured,
}

pub struct ExperimentRun {
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
    /// Wall-clock seconds per (cell, trial), in grid order.
    pub seconds: Vec<f64>,
}

fn verdict_name(v: Option<Verdict>) -> String {
    match v {
        Some(Verdict::Pass) => "pass",
        Some(Verdict::SampledPass) => "sampled-pass",
        Some(Verdict::Fail) => "fail",
        None => "-",
    }
    .into()
}

fn kebab<T: Serialize>(x: &T) -> String {
    match serde_json::to_value(x) {
        Ok(serde_json::Value::String(s)) => s,
        _ => "?".into(),
    }
}

/// Runs one trial. The graph and every engine stream derive from `seed`.
pub fn run_trial(cfg: &ExperimentConfig, cell: &Cell, trial: u32) -> Result<Vec<TrialRecord>> {
    let seed = trial_seed(cfg.experiment.seed, cell.index, trial);
    let rng = RngSpec::new(seed);
    let g = gnp_sample(cell.n, cell.p, &rng.derive(0))?;
    let engine = rng.derive(1);
    let t = cfg.threshold(cell);
    let record = |measured| TrialRecord { cell: *cell, trial, seed, measured };
    let n = cell.n as f64;
    let measured = match cfg.experiment.kind {
        ExperimentKind::EdgeCount => {
            let (lower, upper) = (n * n * cell.p / 4.0, n * n * cell.p);
            let m = g.edge_count() as f64;
            vec![Measured::EdgeCount { edges: g.edge_count(), lower, upper, within: lower <= m && m <= upper }]
        }
        ExperimentKind::MinDegreeThreshold => vec![Measured::MinDegree {
            min_degree: g.min_degree(),
            delta_ge2: g.min_degree() >= 2,
            low_count: low_degree_set(&g, t).len(),
            low_bound: n.powf(0.09),
        }],
        ExperimentKind::HamiltonicityThreshold => {
            let s = find_hamilton_cycle(&g, &cfg.search, &engine)?;
            if let Some(c) = &s.cycle {
                c.validate(&g).map_err(|e| Error::Precondition(format!("invalid cycle: {e}")))?;
            }
            vec![Measured::Hamiltonicity {
                min_degree: g.min_degree(),
                found: s.found(),
                status: kebab(&s.status),
                decided_by: kebab(&s.decided_by),
                restarts: s.restarts,
                rotations: s.rotations,
                best_path: s.best_path,
            }]
        }
        ExperimentKind::Resilience => {
            let caps = wbd_sequence(&g, t, cfg.resilience.eps)?;
            let low_count = low_degree_set(&g, t).len();
            let suite: Vec<AdversarySpec> = cfg
                .resilience
                .strategies
                .iter()
                .enumerate()
                .map(|(i, &strategy)| AdversarySpec { strategy, rng: engine.derive(i as u64) })
                .collect();
            let v = test_resilience(&g, &caps, &suite, &cfg.search)?;
            v.records
                .iter()
                .enumerate()
                .map(|(i, r)| Measured::Resilience {
                    adversary: i,
                    strategy: r.spec.strategy.name().into(),
                    low_count,
                    h_edges: r.h_edges,
                    utilization: r.utilization,
                    saturated: r.saturated,
                    verdict: kebab(&r.verdict),
                })
                .collect()
        }
        ExperimentKind::Packing => {
            let p = pack_hamilton_cycles(&g, &cfg.packing, &engine)?;
            p.validate(&g).map_err(Error::Precondition)?;
            vec![Measured::Packing {
                min_degree: g.min_degree(),
                target: p.target,
                achieved: p.achieved(),
                reached: p.reached_target(),
                shortfall: p.shortfall.map_or_else(|| "-".into(), |s| kebab(&s)),
            }]
        }
        ExperimentKind::ExtractCertify => {
            let x = &cfg.extract;
            let h = match x.adversary {
                Some(strategy) => {
                    let caps = wbd_sequence(&g, t, x.eps)?;
                    make_adversary(&g, &caps, &AdversarySpec { strategy, rng: engine.derive(2) })?
                }
                None => Graph::empty(g.n()),
            };
            let sparsify = SparsifyConfig {
                gamma: x.gamma,
                beta: x.beta,
                max_retries: x.max_retries,
                rng: engine.derive(3),
                mode: CheckMode::Sampled { trials: x.sample_trials, rng: engine.derive(4) },
                ..SparsifyConfig::default()
            };
            let low_count = low_degree_set(&g, t).len();
            match build_gamma0(&g, &h, t, x.beta, &sparsify) {
                Ok(g0) => {
                    let m = &g0.membership;
                    vec![Measured::ExtractCertify {
                        low_count,
                        h_edges: h.edge_count(),
                        gamma_edges: g0.graph.edge_count(),
                        extraction: if g0.extraction.passed() { "pass" } else { "fail" }.into(),
                        l1: verdict_name(m.verdict("L1")),
                        l2: verdict_name(m.verdict("L2")),
                        l3: verdict_name(m.verdict("L3")),
                        l4: verdict_name(m.verdict("L4")),
                    }]
                }
                Err(Error::Extraction { .. }) => vec![Measured::ExtractCertify {
                    low_count,
                    h_edges: h.edge_count(),
                    gamma_edges: 0,
                    extraction: "fail".into(),
                    l1: "-".into(),
                    l2: "-".into(),
                    l3: "-".into(),
                    l4: "-".into(),
                }],
                Err(e) => return Err(e),
            }
        }
    };
    Ok(measured.into_iter().map(record).collect())
}

/// Runs every (cell, trial) on `jobs` threads (0 = all cores). Records come
/// back in grid order whatever the schedule.
pub fn run_experiment(cfg: &ExperimentConfig, jobs: usize) -> Result<ExperimentRun> {
    cfg.validate()?;
    let work: Vec<(Cell, u32)> = cfg
        .cells()
        .into_iter()
        .flat_map(|c| (0..cfg.experiment.trials as u32).map(move |t| (c, t)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::param(format!("cannot start {jobs} worker threads: {e}")))?;
    let results: Vec<Result<(Vec<TrialRecord>, f64)>> = pool.install(|| {
        work.par_iter()
            .map(|(cell, trial)| {
                let start = Instant::now();
                let rows = run_trial(cfg, cell, *trial)?;
                Ok((rows, start.elapsed().as_secs_f64()))
            })
            .collect()
    });
    let mut records = Vec::new();
    let mut seconds = Vec::with_capacity(results.len());
    for r in results {
        let (rows, secs) = r?;
        records.extend(rows);
        seconds.push(secs);
    }
    Ok(ExperimentRun { config: cfg.clone(), records, seconds })
}
