//! `hamres`: command-line access to the hamres toolkit.
//!
//! Results are printed as JSON on stdout. Exit codes: 0 success, 2 bad
//! configuration or input, 3 refutation found, 4 inconclusive.

mod source;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use hamres::certify::{check_expander, check_l_membership, check_quasirandom, CertReport, CheckMode, ExpanderProfile, LPartition};
use hamres::experiment::{emit_report, run_experiment, summarize, write_atomic, ExperimentConfig};
use hamres::extract::{build_gamma0, SparsifyConfig};
use hamres::graph::gnp_sample;
use hamres::graph::io::{to_edge_list_string, write_edge_list_file};
use hamres::oracle::Oracle;
use hamres::packing::{check_h_delta, HDelta, PackingBudget};
use hamres::posa::{find_hamilton_cycle, SearchBudget, SearchStatus};
use hamres::resilience::{
    delta_minus_one_check, make_adversary, test_resilience, AdversarySpec, DeltaRecord, ResilienceOutcome, ResilienceVerdict, Strategy,
};
use hamres::rng::trial_seed;
use hamres::{wbd_sequence, Graph, RngSpec};

use source::{GnpArgs, GraphSource};

const OK: u8 = 0;
const CONFIG: u8 = 2;
const REFUTED: u8 = 3;
const INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(name = "hamres", version, about = "Random graphs, Hamilton cycles, expanders and resilience")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n,p) and write it as an edge list.
    Gen {
        #[command(flatten)]
        gnp: GnpArgs,
        /// Output file; stdout when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Hamilton cycle search.
    #[command(subcommand)]
    Ham(HamCommand),
    /// Exact solvers for small graphs.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Expansion, quasi-randomness and L-family certificates.
    #[command(subcommand)]
    Certify(CertifyCommand),
    /// Remove an adversary, sparsify the remainder and certify the result.
    Extract(ExtractArgs),
    /// Run degree-capped adversaries and test what survives.
    Resilience(ResilienceArgs),
    /// Pack floor(δ/2) edge-disjoint Hamilton cycles.
    Pack(PackArgs),
    /// Monte Carlo experiments from a TOML config.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Subcommand)]
enum HamCommand {
    /// Rotation-extension search with exact fallback on small graphs.
    Find {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        search: SearchArgs,
        /// Search seed.
        #[arg(long, default_value_t = 0)]
        search_seed: u64,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Seed paths to try.
    #[arg(long, default_value_t = SearchBudget::default().restarts)]
    restarts: usize,
    /// Cap on endpoints explored per rotation closure.
    #[arg(long)]
    max_closure: Option<usize>,
    /// Never call the exact oracle.
    #[arg(long)]
    no_oracle: bool,
}

impl SearchArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            restarts: self.restarts,
            max_closure: self.max_closure,
            oracle_fallback: !self.no_oracle,
            ..SearchBudget::default()
        }
    }
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Decide Hamiltonicity exactly.
    Ham {
        #[command(flatten)]
        graph: GraphSource,
    },
    /// Exact booster sets: all of them, or those at one vertex.
    Boosters {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        vertex: Option<usize>,
    },
}

#[derive(Args)]
struct ModeArgs {
    /// Enumerate every set instead of sampling.
    #[arg(long)]
    exact: bool,
    /// Random sets per probed size in sampled mode.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    check_seed: u64,
}

impl ModeArgs {
    fn mode(&self) -> CheckMode {
        if self.exact {
            CheckMode::Exact
        } else {
            CheckMode::sampled(self.samples, self.check_seed)
        }
    }
}

#[derive(Subcommand)]
enum CertifyCommand {
    /// Every set U with |U| ≤ r has |N(U)| ≥ f·|U|.
    Expander {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        f: f64,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// The quasi-random property system with degree scale d.
    Quasirandom {
        #[command(flatten)]
        graph: GraphSource,
        /// Degree scale; the average degree when omitted.
        #[arg(long)]
        d: Option<f64>,
        #[arg(long, default_value_t = 0.001)]
        beta: f64,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Membership in the L family with D the vertices of degree below t.
    Lfamily {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 0.001)]
        beta: f64,
        #[command(flatten)]
        mode: ModeArgs,
    },
}

#[derive(Args)]
struct ExtractArgs {
    #[command(flatten)]
    graph: GraphSource,
    /// Edge retention probability.
    #[arg(long, default_value_t = 0.3)]
    gamma: f64,
    #[arg(long, default_value_t = 0.001)]
    beta: f64,
    /// Low-degree threshold; max(np/100, 3) with np the average degree when omitted.
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, default_value_t = 5)]
    max_retries: usize,
    /// Remove this adversary first.
    #[arg(long)]
    adversary: Option<Strategy>,
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    #[arg(long, default_value_t = 0)]
    extract_seed: u64,
    #[command(flatten)]
    mode: ModeArgs,
    /// Write the extracted graph here as an edge list.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ResilienceArgs {
    #[command(flatten)]
    graph: GraphSource,
    #[arg(long, default_value_t = 0.05)]
    eps: f64,
    /// Low-degree threshold; max(np/100, 3) when omitted.
    #[arg(long)]
    t: Option<f64>,
    /// Adversaries to run; all of them when omitted.
    #[arg(long, alias = "strategies", value_delimiter = ',')]
    suite: Vec<Strategy>,
    /// Independent trials. G(n,p) sources resample the graph per trial; fixed
    /// graphs rerun the suite with fresh adversary seeds.
    #[arg(long, default_value_t = 1)]
    trials: u32,
    /// Also probe the δ−1 local resilience with this many random adversaries.
    #[arg(long)]
    delta_trials: Option<usize>,
    /// One row per (trial, adversary).
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct PackArgs {
    #[command(flatten)]
    graph: GraphSource,
    /// Restarts of the first round; later rounds grow geometrically.
    #[arg(long, default_value_t = PackingBudget::default().search.restarts)]
    restarts: usize,
    #[arg(long, default_value_t = PackingBudget::default().max_restarts)]
    max_restarts: usize,
    /// Skip the exhaustive fallback on small graphs.
    #[arg(long)]
    no_exhaustive: bool,
    #[arg(long, default_value_t = 0)]
    pack_seed: u64,
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Run a config and write its CSV and JSON reports.
    Run {
        config: PathBuf,
        /// Worker threads; 0 uses every core.
        #[arg(long, short, default_value_t = 0)]
        jobs: usize,
        /// Overrides `output.csv`.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Overrides `output.json`.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    let written = serde_json::to_writer_pretty(&mut out, value).map_err(std::io::Error::from).and_then(|()| writeln!(out));
    match written {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn default_threshold(g: &Graph) -> f64 {
    let avg = if g.n() == 0 { 0.0 } else { 2.0 * g.edge_count() as f64 / g.n() as f64 };
    (avg / 100.0).max(3.0)
}

fn cert_code(report: &CertReport) -> u8 {
    if report.passed() {
        OK
    } else {
        REFUTED
    }
}

#[derive(Serialize)]
struct GraphInfo {
    n: usize,
    m: usize,
    min_degree: usize,
    max_degree: usize,
}

impl GraphInfo {
    fn of(g: &Graph) -> Self {
        GraphInfo { n: g.n(), m: g.edge_count(), min_degree: g.min_degree(), max_degree: g.max_degree() }
    }
}

fn ham(cmd: HamCommand) -> Result<u8> {
    let HamCommand::Find { graph, search, search_seed } = cmd;
    let g = graph.load()?;
    let r = find_hamilton_cycle(&g, &search.budget(), &RngSpec::new(search_seed))?;
    print_json(&r)?;
    Ok(if r.status == SearchStatus::Inconclusive { INCONCLUSIVE } else { OK })
}

fn oracle(cmd: OracleCommand) -> Result<u8> {
    let oracle = Oracle::default();
    match cmd {
        OracleCommand::Ham { graph } => print_json(&oracle.is_hamiltonian(&graph.load()?)?)?,
        OracleCommand::Boosters { graph, vertex } => {
            let g = graph.load()?;
            match vertex {
                Some(v) if v >= g.n() => bail!("vertex {v} out of range for n = {}", g.n()),
                Some(v) => print_json(&oracle.booster_set(&g, v)?)?,
                None => print_json(&serde_json::json!({ "boosters": oracle.all_boosters(&g)? }))?,
            }
        }
    }
    Ok(OK)
}

fn certify(cmd: CertifyCommand) -> Result<u8> {
    let report = match cmd {
        CertifyCommand::Expander { graph, r, f, mode } => {
            check_expander(&graph.load()?, &ExpanderProfile::constant(r, f), &mode.mode())?
        }
        CertifyCommand::Quasirandom { graph, d, beta, mode } => {
            let g = graph.load()?;
            let d = d.unwrap_or(if g.n() == 0 { 0.0 } else { 2.0 * g.edge_count() as f64 / g.n() as f64 });
            check_quasirandom(&g, d, beta, &mode.mode())?
        }
        CertifyCommand::Lfamily { graph, t, beta, mode } => {
            let g = graph.load()?;
            check_l_membership(&g, &LPartition::from_low_degree(&g, t, beta), beta, &mode.mode())?
        }
    };
    print_json(&report)?;
    Ok(cert_code(&report))
}

fn extract(args: ExtractArgs) -> Result<u8> {
    let g = args.graph.load()?;
    let t = args.t.unwrap_or_else(|| default_threshold(&g));
    let rng = RngSpec::new(args.extract_seed);
    let h = match args.adversary {
        Some(s) => make_adversary(&g, &wbd_sequence(&g, t, args.eps)?, &AdversarySpec { strategy: s, rng: rng.derive(0) })?,
        None => Graph::empty(g.n()),
    };
    let cfg = SparsifyConfig { gamma: args.gamma, max_retries: args.max_retries, rng: rng.derive(1), mode: args.mode.mode(), ..SparsifyConfig::default() };
    match build_gamma0(&g, &h, t, args.beta, &cfg) {
        Ok(gamma0) => {
            if let Some(out) = &args.out {
                write_edge_list_file(&gamma0.graph, out)?;
            }
            print_json(&serde_json::json!({
                "input": GraphInfo::of(&g),
                "removed": h.edge_count(),
                "threshold": t,
                "gamma0": GraphInfo::of(&gamma0.graph),
                "result": gamma0,
            }))?;
            Ok(cert_code(&gamma0.membership))
        }
        Err(hamres::Error::Extraction { retries, last }) => {
            print_json(&serde_json::json!({ "extracted": false, "retries": retries, "last": last }))?;
            Ok(INCONCLUSIVE)
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct ResilienceTrial {
    trial: u32,
    seed: u64,
    graph: GraphInfo,
    threshold: f64,
    caps_total: usize,
    verdict: ResilienceVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_minus_one: Option<DeltaRecord>,
}

const RESILIENCE_COLUMNS: [&str; 11] =
    ["trial", "seed", "n", "m", "strategy", "h_edges", "utilization", "saturated", "verdict", "rotations", "outcome"];

fn resilience_csv(path: &Path, trials: &[ResilienceTrial]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(RESILIENCE_COLUMNS)?;
    for t in trials {
        let outcome = serde_json::to_value(t.verdict.outcome)?;
        for r in &t.verdict.records {
            let verdict = serde_json::to_value(r.verdict)?;
            w.write_record([
                t.trial.to_string(),
                t.seed.to_string(),
                t.graph.n.to_string(),
                t.graph.m.to_string(),
                r.spec.strategy.name().to_string(),
                r.h_edges.to_string(),
                format!("{:.6}", r.utilization),
                r.saturated.to_string(),
                verdict.as_str().unwrap_or_default().to_string(),
                r.rotations.to_string(),
                outcome.as_str().unwrap_or_default().to_string(),
            ])?;
        }
    }
    write_atomic(path, &w.into_inner()?)?;
    Ok(())
}

fn resilience(args: ResilienceArgs) -> Result<u8> {
    let fixed = if args.graph.gnp.n.is_some() { None } else { Some(args.graph.load()?) };
    let suite_strategies = if args.suite.is_empty() { Strategy::ALL.to_vec() } else { args.suite.clone() };
    let budget = args.search.budget();
    let master = args.graph.gnp.seed;
    let mut trials = Vec::new();
    for trial in 0..args.trials.max(1) {
        let seed = trial_seed(master, 0, trial);
        let rng = RngSpec::new(seed);
        let g = match &fixed {
            Some(g) => g.clone(),
            None => {
                let n = args.graph.gnp.n.expect("G(n,p) source");
                gnp_sample(n, args.graph.gnp.probability(n)?, &rng.derive(0))?
            }
        };
        let t = args.t.unwrap_or_else(|| default_threshold(&g));
        let caps = wbd_sequence(&g, t, args.eps)?;
        let suite: Vec<_> = suite_strategies
            .iter()
            .enumerate()
            .map(|(i, &strategy)| AdversarySpec { strategy, rng: rng.derive(1).derive(i as u64) })
            .collect();
        let verdict = test_resilience(&g, &caps, &suite, &budget)?;
        let delta_minus_one = match args.delta_trials {
            Some(k) => Some(delta_minus_one_check(&g, k, &rng.derive(2), &budget)?),
            None => None,
        };
        trials.push(ResilienceTrial {
            trial,
            seed,
            graph: GraphInfo::of(&g),
            threshold: t,
            caps_total: caps.as_slice().iter().sum(),
            verdict,
            delta_minus_one,
        });
    }
    if let Some(path) = &args.csv {
        resilience_csv(path, &trials)?;
    }
    let outcomes: Vec<_> = trials.iter().map(|t| t.verdict.outcome).collect();
    print_json(&serde_json::json!({ "eps": args.eps, "trials": trials }))?;
    Ok(if outcomes.contains(&ResilienceOutcome::Refuted) {
        REFUTED
    } else if outcomes.contains(&ResilienceOutcome::Inconclusive) {
        INCONCLUSIVE
    } else {
        OK
    })
}

fn pack(args: PackArgs) -> Result<u8> {
    let g = args.graph.load()?;
    let defaults = PackingBudget::default();
    let budget = PackingBudget {
        search: SearchBudget { restarts: args.restarts, ..defaults.search },
        max_restarts: args.max_restarts,
        exhaustive: !args.no_exhaustive,
        ..defaults
    };
    let check = check_h_delta(&g, &budget, &RngSpec::new(args.pack_seed))?;
    print_json(&serde_json::json!({ "graph": GraphInfo::of(&g), "achieved": check.packing.achieved(), "check": check }))?;
    Ok(match check.verdict {
        HDelta::Holds => OK,
        HDelta::Refuted => REFUTED,
        HDelta::NotFound => INCONCLUSIVE,
    })
}

fn experiment(cmd: ExperimentCommand) -> Result<u8> {
    let ExperimentCommand::Run { config, jobs, csv, json } = cmd;
    let cfg = ExperimentConfig::load(&config)?;
    let csv = csv.or_else(|| cfg.output.csv.clone());
    let json = json.or_else(|| cfg.output.json.clone());
    let run = run_experiment(&cfg, jobs)?;
    let summary = if csv.is_some() || json.is_some() {
        emit_report(&run, csv.as_deref(), json.as_deref())?
    } else {
        summarize(&run)
    };
    if json.is_none() {
        print_json(&summary)?;
    }
    eprintln!("{} records in {:.1}s", run.records.len(), run.seconds.iter().sum::<f64>());
    Ok(OK)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen { gnp, out } => {
            let g = gnp.sample()?.context("gen needs --n")?;
            match out {
                Some(path) => write_edge_list_file(&g, path)?,
                None => match std::io::stdout().lock().write_all(to_edge_list_string(&g).as_bytes()) {
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                    _ => {}
                },
            }
            Ok(OK)
        }
        Command::Ham(cmd) => ham(cmd),
        Command::Oracle(cmd) => oracle(cmd),
        Command::Certify(cmd) => certify(cmd),
        Command::Extract(args) => extract(args),
        Command::Resilience(args) => resilience(args),
        Command::Pack(args) => pack(args),
        Command::Experiment(cmd) => experiment(cmd),
    }
}

/// Bad input maps to the config exit code; anything else is an internal failure.
fn error_code(err: &anyhow::Error) -> u8 {
    use hamres::Error as E;
    match err.chain().find_map(|e| e.downcast_ref::<E>()) {
        Some(E::Config { .. } | E::Parameter(_) | E::Parse { .. } | E::SizeLimit { .. } | E::Precondition(_) | E::NotSubgraph(..)) => CONFIG,
        Some(_) => 1,
        None if err.chain().any(|e| e.is::<std::io::Error>()) => 1,
        None => CONFIG,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(error_code(&err))
        }
    }
}
