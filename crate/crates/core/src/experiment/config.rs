//! Experiment configuration, read from TOML.
//!
//! ```toml
//! [experiment]
//! kind = "min-degree-threshold"
//! n = [10000]
//! c = [-6.0, 6.0]       # or p = [0.01, 0.02]
//! trials = 100
//! seed = 1
//!
//! [output]
//! csv = "runs/min-degree.csv"
//! json = "runs/min-degree.json"
//! ```
//!
//! Engine sections (`[search]`, `[resilience]`, `[packing]`, `[extract]`) are
//! optional. Unknown keys are rejected with their line and column.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::threshold_p;
use crate::packing::PackingBudget;
use crate::posa::SearchBudget;
use crate::resilience::Strategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    EdgeCount,
    MinDegreeThreshold,
    HamiltonicityThreshold,
    Resilience,
    Packing,
    ExtractCertify,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::EdgeCount => "edge-count",
            ExperimentKind::MinDegreeThreshold => "min-degree-threshold",
            ExperimentKind::HamiltonicityThreshold => "hamiltonicity-threshold",
            ExperimentKind::Resilience => "resilience",
            ExperimentKind::Packing => "packing",
            ExperimentKind::ExtractCertify => "extract-certify",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    pub kind: ExperimentKind,
    #[serde(default)]
    pub name: Option<String>,
    pub n: Vec<usize>,
    /// Edge probabilities.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<f64>>,
    /// Offsets `c` in `p = (ln n + ln ln n + c) / n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<f64>>,
    pub trials: usize,
    pub seed: u64,
    /// Low-degree threshold `t`; defaults to `max(np/100, 3)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ResilienceParams {
    pub eps: f64,
    pub strategies: Vec<Strategy>,
}

impl Default for ResilienceParams {
    fn default() -> Self {
        ResilienceParams { eps: 0.05, strategies: Strategy::ALL.to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExtractParams {
    pub gamma: f64,
    pub beta: f64,
    pub max_retries: usize,
    /// Random sets per size in sampled certification.
    pub sample_trials: usize,
    /// Adversary applied before extraction; none by default.
    pub adversary: Option<Strategy>,
    pub eps: f64,
}

impl Default for ExtractParams {
    fn default() -> Self {
        ExtractParams { gamma: 0.3, beta: 0.001, max_retries: 5, sample_trials: 50, adversary: None, eps: 0.05 }
    }
}

/// Where reports go. Not part of the hashed or echoed configuration.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentSection,
    #[serde(default)]
    pub search: SearchBudget,
    #[serde(default)]
    pub resilience: ResilienceParams,
    #[serde(default)]
    pub packing: PackingBudget,
    #[serde(default)]
    pub extract: ExtractParams,
    #[serde(default, skip_serializing)]
    pub output: OutputSection,
}

/// One point of the parameter grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cell {
    pub index: u32,
    pub n: usize,
    pub p: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
}

fn config_error(location: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Config { location: location.into(), msg: msg.into() }
}

fn line_col(text: &str, offset: usize) -> String {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    format!("line {line}, column {col}")
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| {
            let location = e.span().map_or_else(|| "config".to_string(), |s| line_col(text, s.start));
            config_error(location, e.message().trim())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_error(path.display().to_string(), format!("cannot read: {e}")))?;
        ExperimentConfig::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let ex = &self.experiment;
        if ex.trials == 0 {
            return Err(config_error("experiment.trials", "must be at least 1"));
        }
        if ex.trials > u32::MAX as usize {
            return Err(config_error("experiment.trials", "too large"));
        }
        match (&ex.p, &ex.c) {
            (Some(_), Some(_)) => return Err(config_error("experiment", "give either `p` or `c`, not both")),
            (None, None) => return Err(config_error("experiment", "missing `p` or `c` grid")),
            (Some(ps), None) => {
                if let Some(p) = ps.iter().find(|p| !(0.0..=1.0).contains(*p)) {
                    return Err(config_error("experiment.p", format!("{p} is not a probability")));
                }
            }
            (None, Some(cs)) => {
                if let Some(c) = cs.iter().find(|c| !c.is_finite()) {
                    return Err(config_error("experiment.c", format!("{c} is not finite")));
                }
            }
        }
        let min_n = if ex.kind == ExperimentKind::EdgeCount { 2 } else { 3 };
        if let Some(n) = ex.n.iter().find(|&&n| n < min_n) {
            return Err(config_error("experiment.n", format!("{n} is below the minimum of {min_n} for {}", ex.kind.name())));
        }
        if ex.c.is_some() && ex.n.iter().any(|&n| n < 3) {
            return Err(config_error("experiment.c", "offset grids need n ≥ 3"));
        }
        if let Some(t) = ex.t.filter(|t| !(*t >= 0.0)) {
            return Err(config_error("experiment.t", format!("{t} must be non-negative")));
        }
        let r = &self.resilience;
        if !(r.eps > 0.0 && r.eps < 1.0 / 3.0) {
            return Err(config_error("resilience.eps", "must lie in (0, 1/3)"));
        }
        if r.strategies.is_empty() {
            return Err(config_error("resilience.strategies", "at least one strategy is needed"));
        }
        let x = &self.extract;
        if !(0.0..=1.0).contains(&x.gamma) {
            return Err(config_error("extract.gamma", "must lie in [0, 1]"));
        }
        if !(x.beta > 0.0 && x.beta < 1.0) {
            return Err(config_error("extract.beta", "must lie in (0, 1)"));
        }
        if x.max_retries == 0 || x.sample_trials == 0 {
            return Err(config_error("extract", "max_retries and sample_trials must be at least 1"));
        }
        if !(x.eps > 0.0 && x.eps < 1.0 / 3.0) {
            return Err(config_error("extract.eps", "must lie in (0, 1/3)"));
        }
        if self.search.restarts == 0 || self.packing.search.restarts == 0 {
            return Err(config_error("search.restarts", "must be at least 1"));
        }
        Ok(())
    }

    /// The grid in row-major order: `n` outer, `p` or `c` inner.
    pub fn cells(&self) -> Vec<Cell> {
        let ex = &self.experiment;
        let mut cells = Vec::new();
        for &n in &ex.n {
            match (&ex.p, &ex.c) {
                (Some(ps), _) => cells.extend(ps.iter().map(|&p| (n, p, None))),
                (None, Some(cs)) => cells.extend(cs.iter().map(|&c| (n, threshold_p(n, c), Some(c)))),
                (None, None) => {}
            }
        }
        cells
            .into_iter()
            .enumerate()
            .map(|(i, (n, p, c))| Cell { index: i as u32, n, p, c })
            .collect()
    }

    /// Low-degree threshold for a cell.
    pub fn threshold(&self, cell: &Cell) -> f64 {
        self.experiment.t.unwrap_or_else(|| (cell.n as f64 * cell.p / 100.0).max(3.0))
    }

    /// Canonical TOML of everything except `[output]`; the hashed input.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}
