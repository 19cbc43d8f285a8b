//! CSV and JSON emission.
//!
//! CSV layout: a `# hamres-experiment-csv v1 kind=<kind>` comment line, then a
//! header `cell,n,p,c,trial,seed,<kind columns>`. Wall-clock timings go to a
//! `<json>.timing.json` sidecar so the CSV and summary stay byte-identical
//! across runs.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::config::{Cell, ExperimentKind};
use super::tails::{chernoff_lower, chernoff_upper, TailBound};
use super::{ExperimentRun, Measured, TrialRecord};
use crate::error::Result;
use crate::rng::RNG_ALGORITHM;

pub const CSV_SCHEMA_VERSION: u32 = 1;

const SHARED_COLUMNS: [&str; 6] = ["cell", "n", "p", "c", "trial", "seed"];

#[derive(Debug, Clone, Serialize)]
pub struct CellSummary {
    pub cell: Cell,
    pub trials: usize,
    pub rows: usize,
    pub successes: usize,
    pub rate: f64,
    pub mean: f64,
    pub min: f64,
    pub p10: f64,
    pub median: f64,
    pub p90: f64,
    pub max: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub predictions: Vec<Prediction>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Prediction {
    pub quantity: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail: Option<TailBound>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub schema: u32,
    pub kind: ExperimentKind,
    pub name: Option<String>,
    pub rng: &'static str,
    /// SHA-256 over `blob <len>\0<canonical config>`, as git hashes blobs.
    pub input_hash: String,
    pub config: toml::Value,
    pub cells: Vec<CellSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub total_seconds: f64,
    pub cells: Vec<CellTiming>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellTiming {
    pub cell: u32,
    pub mean_seconds: f64,
    pub median_seconds: f64,
    pub max_seconds: f64,
}

pub fn content_hash(text: &str) -> String {
    let mut h = Sha256::new();
    h.update(format!("blob {}\0", text.len()));
    h.update(text);
    hex::encode(h.finalize())
}

/// Linear-interpolated quantile of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let pos = q * (sorted.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn predictions(kind: ExperimentKind, cell: &Cell) -> Vec<Prediction> {
    let n = cell.n as f64;
    let p = cell.p;
    match kind {
        ExperimentKind::EdgeCount if p > 0.0 && cell.n >= 2 => {
            let pairs = (cell.n * (cell.n - 1) / 2) as u64;
            let mean = pairs as f64 * p;
            let above = n * n * p / mean - 1.0;
            let below = 1.0 - n * n * p / 4.0 / mean;
            vec![
                Prediction { quantity: "mean_edges".into(), value: mean, tail: None },
                Prediction {
                    quantity: "p_above_upper".into(),
                    value: f64::NAN,
                    tail: chernoff_upper(pairs, p, above).ok(),
                },
                Prediction {
                    quantity: "p_below_lower".into(),
                    value: f64::NAN,
                    tail: chernoff_lower(pairs, p, below).ok(),
                },
            ]
            .into_iter()
            .map(|mut x| {
                if let Some(t) = x.tail {
                    x.value = t.bound.min(1.0);
                }
                x
            })
            .collect()
        }
        ExperimentKind::MinDegreeThreshold => {
            // expected count of vertices with degree 0 or 1, and the Poisson estimate of δ ≥ 2
            let q = 1.0 - p;
            let low = n * (q.powf(n - 1.0) + (n - 1.0) * p * q.powf(n - 2.0));
            vec![
                Prediction { quantity: "mean_degree_below_2".into(), value: low, tail: None },
                Prediction { quantity: "poisson_p_delta_ge2".into(), value: (-low).exp(), tail: None },
            ]
        }
        _ => Vec::new(),
    }
}

pub fn summarize(run: &ExperimentRun) -> Summary {
    let cfg = &run.config;
    let kind = cfg.experiment.kind;
    let cells = cfg
        .cells()
        .into_iter()
        .map(|cell| {
            let rows: Vec<&TrialRecord> = run.records.iter().filter(|r| r.cell.index == cell.index).collect();
            let mut values: Vec<f64> = rows.iter().map(|r| r.measured.value()).collect();
            values.sort_by(f64::total_cmp);
            let successes = rows.iter().filter(|r| r.measured.success()).count();
            CellSummary {
                cell,
                trials: cfg.experiment.trials,
                rows: rows.len(),
                successes,
                rate: if rows.is_empty() { f64::NAN } else { successes as f64 / rows.len() as f64 },
                mean: values.iter().sum::<f64>() / values.len() as f64,
                min: quantile(&values, 0.0),
                p10: quantile(&values, 0.1),
                median: quantile(&values, 0.5),
                p90: quantile(&values, 0.9),
                max: quantile(&values, 1.0),
                predictions: predictions(kind, &cell),
            }
        })
        .collect();
    let canonical = cfg.canonical();
    Summary {
        schema: CSV_SCHEMA_VERSION,
        kind,
        name: cfg.experiment.name.clone(),
        rng: RNG_ALGORITHM,
        input_hash: content_hash(&canonical),
        config: toml::from_str(&canonical).expect("canonical config parses"),
        cells,
    }
}

pub fn timing(run: &ExperimentRun) -> Timing {
    let trials = run.config.experiment.trials;
    let cells = run
        .seconds
        .chunks(trials.max(1))
        .zip(run.config.cells())
        .map(|(secs, cell)| {
            let mut s = secs.to_vec();
            s.sort_by(f64::total_cmp);
            CellTiming {
                cell: cell.index,
                mean_seconds: s.iter().sum::<f64>() / s.len() as f64,
                median_seconds: quantile(&s, 0.5),
                max_seconds: quantile(&s, 1.0),
            }
        })
        .collect();
    Timing { total_seconds: run.seconds.iter().sum(), cells }
}

pub fn csv_bytes(kind: ExperimentKind, records: &[TrialRecord]) -> Result<Vec<u8>> {
    let mut out = format!("# hamres-experiment-csv v{CSV_SCHEMA_VERSION} kind={}\n", kind.name()).into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        let header: Vec<&str> = SHARED_COLUMNS.iter().chain(Measured::columns(kind)).copied().collect();
        w.write_record(&header).map_err(csv_error)?;
        for r in records {
            let mut row = vec![
                r.cell.index.to_string(),
                r.cell.n.to_string(),
                r.cell.p.to_string(),
                r.cell.c.map_or_else(String::new, |c| c.to_string()),
                r.trial.to_string(),
                r.seed.to_string(),
            ];
            row.extend(r.measured.fields());
            w.write_record(&row).map_err(csv_error)?;
        }
        w.flush()?;
    }
    Ok(out)
}

fn csv_error(e: csv::Error) -> crate::Error {
    crate::Error::Io(std::io::Error::other(e))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn timing_path(json: &Path) -> PathBuf {
    let mut s = json.as_os_str().to_owned();
    s.push(".timing.json");
    PathBuf::from(s)
}

/// Writes the CSV and JSON summary (and timing sidecar) to the given paths;
/// returns the summary either way.
pub fn emit_report(run: &ExperimentRun, csv: Option<&Path>, json: Option<&Path>) -> Result<Summary> {
    let summary = summarize(run);
    if let Some(path) = csv {
        write_atomic(path, &csv_bytes(run.config.experiment.kind, &run.records)?)?;
    }
    if let Some(path) = json {
        let mut text = serde_json::to_vec_pretty(&summary).map_err(std::io::Error::other)?;
        text.push(b'\n');
        write_atomic(path, &text)?;
        let t = serde_json::to_vec_pretty(&timing(run)).map_err(std::io::Error::other)?;
        write_atomic(&timing_path(path), &t)?;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::{run_experiment, ExperimentConfig};

    #[test]
    fn git_style_hash() {
        // `git hash-object --object-format=sha256` of an empty blob
        assert_eq!(content_hash(""), "473a0f4c3be8a93681a267e3b1e9a7dcda1185436fe141f7749120a303721813");
    }

    #[test]
    fn quantiles_interpolate() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&v, 0.5), 2.5);
        assert_eq!(quantile(&v, 0.0), 1.0);
        assert_eq!(quantile(&v, 1.0), 4.0);
    }

    #[test]
    fn header_only_for_no_records() {
        let bytes = csv_bytes(ExperimentKind::EdgeCount, &[]).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        assert_eq!(text, "# hamres-experiment-csv v1 kind=edge-count\ncell,n,p,c,trial,seed,edges,lower,upper,within\n");
    }

    #[test]
    fn files_are_deterministic() {
        let cfg = ExperimentConfig::parse("[experiment]\nkind = \"min-degree-threshold\"\nn = [200]\nc = [0.0, 3.0]\ntrials = 4\nseed = 3\n").unwrap();
        let dir = tempfile::tempdir().unwrap();
        let mut outs = Vec::new();
        for (i, jobs) in [1, 3].into_iter().enumerate() {
            let run = run_experiment(&cfg, jobs).unwrap();
            let csv = dir.path().join(format!("{i}.csv"));
            let json = dir.path().join(format!("{i}.json"));
            emit_report(&run, Some(&csv), Some(&json)).unwrap();
            assert!(timing_path(&json).exists());
            outs.push((std::fs::read(csv).unwrap(), std::fs::read(json).unwrap()));
        }
        assert_eq!(outs[0], outs[1]);
    }
}
