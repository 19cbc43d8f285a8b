//! Random sparsification into an expander, and assembly of Γ₀ from a host
//! graph, an adversary's deletions and the low-degree vertices.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::certify::{
    check_l_membership_with, CertReport, CheckMode, EnumerationCap, ExpanderProfile, LPartition, Method, PropertyCheck,
    Witness,
};
use crate::error::{Error, Result};
use crate::graph::{low_degree_set, Edge, Graph};
use crate::rng::RngSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SparsifyConfig {
    /// Retention probability of each edge.
    pub gamma: f64,
    pub beta: f64,
    pub max_retries: usize,
    pub rng: RngSpec,
    /// Accept only if `e(Γ) ≤ sparsity_cap · e(G1)`.
    pub sparsity_cap: f64,
    /// Accept only if `δ(Γ) ≥ min_degree_factor · γ · d`; `None` disables.
    pub min_degree_factor: Option<f64>,
    /// Degree scale `d`; defaults to the average degree of `G1`.
    pub degree_scale: Option<f64>,
    pub mode: CheckMode,
    pub cap: EnumerationCap,
}

impl Default for SparsifyConfig {
    fn default() -> Self {
        SparsifyConfig {
            gamma: 0.3,
            beta: 0.001,
            max_retries: 5,
            rng: RngSpec::new(0),
            sparsity_cap: 0.35,
            min_degree_factor: Some(1.0 / 200.0),
            degree_scale: None,
            mode: CheckMode::sampled(50, 0),
            cap: EnumerationCap::default(),
        }
    }
}

impl SparsifyConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.gamma) {
            return Err(Error::param(format!("gamma must lie in [0, 1], got {}", self.gamma)));
        }
        if self.max_retries == 0 {
            return Err(Error::param("max_retries must be at least 1"));
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::param(format!("beta must lie in (0, 1), got {}", self.beta)));
        }
        Ok(())
    }
}

/// Keeps each edge of `g` independently with probability `gamma`.
pub fn retain_edges(g: &Graph, gamma: f64, rng: &RngSpec) -> Graph {
    let mut rng = rng.rng();
    let mut out = Graph::empty(g.n());
    for (u, v) in g.edges() {
        if rng.random_bool(gamma) {
            out.push_lex_edge(u, v);
        }
    }
    out
}

/// Retries random sparsification until the result certifies as a
/// `(βn1, f_β)`-expander and meets the edge and minimum-degree predicates.
/// On success returns `Γ` and its report; the report notes the attempt used.
pub fn sparsify_expander(g1: &Graph, cfg: &SparsifyConfig) -> Result<(Graph, CertReport)> {
    cfg.validate()?;
    if g1.n() == 0 {
        return Err(Error::param("cannot sparsify an empty graph"));
    }
    let n1 = g1.n();
    let d = cfg.degree_scale.unwrap_or(2.0 * g1.edge_count() as f64 / n1 as f64);
    let profile = ExpanderProfile::f_beta(n1, cfg.beta)?;
    let edge_bound = cfg.sparsity_cap * g1.edge_count() as f64;
    let mut last = None;
    for attempt in 0..cfg.max_retries {
        let gamma_graph = retain_edges(g1, cfg.gamma, &cfg.rng.derive(attempt as u64));
        let mut report = crate::certify::check_expander_with(&gamma_graph, &profile, &cfg.mode, &cfg.cap)?;

        let mut sparsity = PropertyCheck::new("sparsity", Method::Direct);
        if gamma_graph.edge_count() as f64 > edge_bound {
            sparsity = sparsity.failed(Witness::EdgeCount { edges: gamma_graph.edge_count(), bound: edge_bound });
        }
        report.properties.push(sparsity);

        if let Some(factor) = cfg.min_degree_factor {
            let need = factor * cfg.gamma * d;
            let mut min_deg = PropertyCheck::new("min-degree", Method::Direct);
            if let Some(v) = gamma_graph.min_degree_vertex().filter(|&v| (gamma_graph.degree(v) as f64) < need) {
                min_deg = min_deg.failed(Witness::MinDegree { vertex: v, degree: gamma_graph.degree(v), required: need });
            }
            report.properties.push(min_deg);
        }
        report.notes.push(format!("attempt {} of {}", attempt + 1, cfg.max_retries));
        if profile.is_vacuous() {
            report.notes.push(format!("R = floor(beta * n1) = 0 for n1 = {n1}: expansion holds vacuously"));
        }
        if report.passed() {
            return Ok((gamma_graph, report));
        }
        last = Some(report);
    }
    Err(Error::Extraction { retries: cfg.max_retries, last: Box::new(last.expect("at least one attempt")) })
}

#[derive(Debug, Clone, Serialize)]
pub struct Gamma0 {
    #[serde(skip)]
    pub graph: Graph,
    pub partition: LPartition,
    /// L1–L4 for `graph` under `partition`.
    pub membership: CertReport,
    /// The sparsification report for `Γ ⊆ G1`.
    pub extraction: CertReport,
}

/// `D = D_t(G)`, `G1 = (G − H)[V ∖ D]`, `Γ` a sparsified expander of `G1`, and
/// `Γ₀ = Γ` plus every `(G − H)`-edge touching `D`.
pub fn build_gamma0(g: &Graph, h: &Graph, t: f64, beta: f64, cfg: &SparsifyConfig) -> Result<Gamma0> {
    h.check_subgraph_of(g)?;
    let remaining = g.subtract(h)?;
    let low = low_degree_set(g, t);
    let partition = LPartition::new(low, t, beta);
    let (g1, labels) = remaining.induced(&partition.core);
    let (gamma_graph, extraction) = if g1.n() == 0 {
        (g1.clone(), CertReport { properties: Vec::new(), notes: vec!["V1 is empty".into()] })
    } else {
        sparsify_expander(&g1, &SparsifyConfig { beta, ..cfg.clone() })?
    };
    let mut graph = Graph::empty(g.n());
    for (u, v) in gamma_graph.edges() {
        graph.add_edge(labels[u], labels[v]);
    }
    for v in partition.low.iter() {
        for &w in remaining.neighbors(v) {
            graph.add_edge(v, w as usize);
        }
    }
    debug_assert!(graph.is_subgraph_of(&remaining));
    let membership = check_l_membership_with(&graph, &partition, beta, &cfg.mode, &cfg.cap)?;
    Ok(Gamma0 { graph, partition, membership, extraction })
}

/// Re-certifies `Γ₀ + E0` against L1–L4 under the same partition.
pub fn closure_under_addition(gamma0: &Graph, part: &LPartition, e0: &[Edge], beta: f64, mode: &CheckMode) -> Result<CertReport> {
    if let Some(&(u, v)) = e0.iter().find(|&&(u, v)| u == v || u >= gamma0.n() || v >= gamma0.n()) {
        return Err(Error::param(format!("{{{u}, {v}}} is not a valid edge")));
    }
    crate::certify::check_l_membership(&gamma0.with_edges(e0.iter().copied()), part, beta, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::Verdict;
    use crate::graph::families::*;
    use crate::graph::VertexSet;

    #[test]
    fn gamma_one_is_identity() {
        // n1 = 100, β = 0.012: R = 1 and a single vertex needs about 81.6 neighbors
        let g = complete(100);
        let cfg = SparsifyConfig { gamma: 1.0, sparsity_cap: 1.0, beta: 0.012, mode: CheckMode::Exact, ..Default::default() };
        let (gamma, report) = sparsify_expander(&g, &cfg).unwrap();
        assert_eq!(gamma, g);
        assert!(report.passed_exactly());

        // K10 with β = 0.2 needs |N(U)| ≥ 58.7 at |U| = 2, so it cannot certify
        let cfg = SparsifyConfig { beta: 0.2, max_retries: 2, ..cfg };
        assert!(matches!(sparsify_expander(&complete(10), &cfg), Err(Error::Extraction { retries: 2, .. })));
    }

    #[test]
    fn gamma_zero_exhausts() {
        let g = complete(8);
        let cfg = SparsifyConfig { gamma: 0.0, beta: 0.3, max_retries: 3, mode: CheckMode::Exact, ..Default::default() };
        match sparsify_expander(&g, &cfg) {
            Err(Error::Extraction { retries, last }) => {
                assert_eq!(retries, 3);
                assert!(!last.passed());
                last.recheck(&Graph::empty(8)).unwrap();
            }
            other => panic!("expected extraction failure, got {other:?}"),
        }
    }

    #[test]
    fn gamma0_without_adversary() {
        let g = complete(12);
        let cfg = SparsifyConfig { gamma: 1.0, sparsity_cap: 1.0, mode: CheckMode::Exact, ..Default::default() };
        let out = build_gamma0(&g, &Graph::empty(12), 3.0, 0.05, &cfg).unwrap();
        assert_eq!(out.graph, g);
        assert!(out.partition.low.is_empty());
        assert!(out.membership.get("L1").unwrap().vacuous);
    }

    #[test]
    fn adversary_starves_low_vertex() {
        // vertex 0 has degree 2; H removes one of its edges
        let g = complete(10).subtract(&Graph::from_edges(10, (3..10).map(|w| (0, w))).unwrap()).unwrap();
        let h = Graph::from_edges(10, [(0, 1)]).unwrap();
        let cfg = SparsifyConfig { gamma: 1.0, sparsity_cap: 1.0, mode: CheckMode::Exact, ..Default::default() };
        let out = build_gamma0(&g, &h, 3.0, 0.05, &cfg).unwrap();
        assert_eq!(out.partition.low, VertexSet::from_vertices(10, [0]));
        let l2 = out.membership.get("L2").unwrap();
        assert_eq!(l2.verdict, Verdict::Fail);
        assert!(matches!(l2.witness, Some(Witness::FewNeighbors { vertex: 0, into_core: 1, .. })));
        out.membership.recheck(&out.graph).unwrap();
    }

    #[test]
    fn empty_addition_keeps_verdict() {
        let g = cycle(12);
        let part = LPartition::new(VertexSet::empty(12), 3.0, 0.1);
        let base = crate::certify::check_l_membership(&g, &part, 0.1, &CheckMode::Exact).unwrap();
        let again = closure_under_addition(&g, &part, &[], 0.1, &CheckMode::Exact).unwrap();
        assert_eq!(base, again);
    }
}
