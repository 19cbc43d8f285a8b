use std::io::BufReader;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use hamres::graph::families;
use hamres::graph::io::read_edge_list;
use hamres::graph::{gnp_sample, threshold_p};
use hamres::{Graph, RngSpec};

/// Where the input graph comes from: an edge-list file, a named family, or a
/// seeded G(n,p) sample.
#[derive(Debug, Clone, Args)]
pub struct GraphSource {
    /// Edge-list file (`-` for stdin).
    #[arg(value_name = "GRAPH", conflicts_with_all = ["family", "n"])]
    pub file: Option<PathBuf>,

    /// complete:N, cycle:N, path:N, star:LEAVES, bipartite:A,B or petersen.
    #[arg(long, conflicts_with = "n")]
    pub family: Option<String>,

    #[command(flatten)]
    pub gnp: GnpArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GnpArgs {
    /// Vertex count of a G(n,p) sample.
    #[arg(long, short)]
    pub n: Option<usize>,

    /// Edge probability.
    #[arg(long, short, requires = "n", conflicts_with = "c", allow_negative_numbers = true)]
    pub p: Option<f64>,

    /// Offset c in p = (ln n + ln ln n + c)/n.
    #[arg(long, short, requires = "n", allow_negative_numbers = true)]
    pub c: Option<f64>,

    /// Sampling seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl GnpArgs {
    pub fn probability(&self, n: usize) -> Result<f64> {
        match (self.p, self.c) {
            (Some(p), _) => Ok(p),
            (None, Some(c)) => Ok(threshold_p(n, c)),
            (None, None) => bail!("G(n,p) needs --p or --c"),
        }
    }

    pub fn sample(&self) -> Result<Option<Graph>> {
        let Some(n) = self.n else { return Ok(None) };
        Ok(Some(gnp_sample(n, self.probability(n)?, &RngSpec::new(self.seed))?))
    }
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph> {
        if let Some(path) = &self.file {
            return if path.as_os_str() == "-" {
                Ok(read_edge_list(std::io::stdin().lock())?)
            } else {
                let f = std::fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
                read_edge_list(BufReader::new(f)).with_context(|| format!("reading {}", path.display()))
            };
        }
        if let Some(spec) = &self.family {
            return parse_family(spec);
        }
        match self.gnp.sample()? {
            Some(g) => Ok(g),
            None => bail!("no graph given: pass a file, --family, or --n with --p/--c"),
        }
    }
}

fn parse_family(spec: &str) -> Result<Graph> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let nums: Vec<usize> = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',').map(|a| a.trim().parse()).collect::<Result<_, _>>().with_context(|| format!("bad family arguments in {spec:?}"))?
    };
    Ok(match (name, nums.as_slice()) {
        ("complete", &[n]) => families::complete(n),
        ("cycle", &[n]) => families::cycle(n),
        ("path", &[n]) => families::path(n),
        ("star", &[k]) => families::star(k),
        ("bipartite", &[a, b]) => families::complete_bipartite(a, b),
        ("petersen", &[]) => families::petersen(),
        _ => bail!("unknown family {spec:?}"),
    })
}
