//! Degree-capped adversaries and the resilience harness.
//!
//! Resilience quantifies over every capped subgraph `H`; at scale that cannot
//! be decided, so the harness runs strong adversaries looking for a `G − H`
//! without a Hamilton cycle. Only refutations are definitive.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{degree_respects, ordered, CapRule, CapSequence, Edge, Graph};
use crate::oracle::{CycleWitness, NonHamReason, Oracle};
use crate::posa::{find_hamilton_cycle, SearchBudget, SearchStatus};
use crate::rng::RngSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Random,
    #[serde(alias = "greedy")]
    GreedyMinDegree,
    #[serde(alias = "strip")]
    LowDegreeStrip,
    #[serde(alias = "cut")]
    CutSeeking,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::Random, Strategy::GreedyMinDegree, Strategy::LowDegreeStrip, Strategy::CutSeeking];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Random => "random",
            Strategy::GreedyMinDegree => "greedy-min-degree",
            Strategy::LowDegreeStrip => "low-degree-strip",
            Strategy::CutSeeking => "cut-seeking",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Strategy::Random),
            "greedy" | "greedy-min-degree" => Ok(Strategy::GreedyMinDegree),
            "strip" | "low-degree-strip" => Ok(Strategy::LowDegreeStrip),
            "cut" | "cut-seeking" => Ok(Strategy::CutSeeking),
            other => Err(Error::param(format!("unknown adversary strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversarySpec {
    pub strategy: Strategy,
    pub rng: RngSpec,
}

impl AdversarySpec {
    pub fn new(strategy: Strategy, seed: u64) -> Self {
        AdversarySpec { strategy, rng: RngSpec::new(seed) }
    }
}

/// Deletion bookkeeping: `H` together with the remaining budgets and `G − H` degrees.
struct Removal<'g> {
    g: &'g Graph,
    h: Graph,
    left: Vec<usize>,
    deg: Vec<usize>,
}

impl<'g> Removal<'g> {
    fn new(g: &'g Graph, caps: &CapSequence) -> Self {
        Removal { g, h: Graph::empty(g.n()), left: caps.as_slice().to_vec(), deg: g.degrees().as_slice().to_vec() }
    }

    fn allowed(&self, u: usize, v: usize) -> bool {
        self.left[u] > 0 && self.left[v] > 0 && !self.h.has_edge(u, v)
    }

    fn take(&mut self, u: usize, v: usize) -> bool {
        if !self.allowed(u, v) {
            return false;
        }
        self.h.add_edge(u, v);
        self.left[u] -= 1;
        self.left[v] -= 1;
        self.deg[u] -= 1;
        self.deg[v] -= 1;
        true
    }

    /// Repeatedly deletes an edge at a vertex of least remaining degree,
    /// pairing it with its least-degree eligible neighbor (ties by id).
    fn greedy(&mut self) {
        let g = self.g;
        let mut queue: BTreeSet<(usize, usize)> = (0..g.n()).filter(|&v| self.left[v] > 0).map(|v| (self.deg[v], v)).collect();
        while let Some((d, v)) = queue.pop_first() {
            if d != self.deg[v] || self.left[v] == 0 {
                continue;
            }
            let partner = g
                .neighbors(v)
                .iter()
                .map(|&w| w as usize)
                .filter(|&w| self.allowed(v, w))
                .min_by_key(|&w| (self.deg[w], w));
            let Some(w) = partner else { continue };
            let old_w = self.deg[w];
            self.take(v, w);
            queue.remove(&(old_w, w));
            if self.left[w] > 0 {
                queue.insert((self.deg[w], w));
            }
            if self.left[v] > 0 {
                queue.insert((self.deg[v], v));
            }
        }
    }
}

/// Builds `H ⊆ G` with `d_H ≤ caps` using the given strategy. Every output is
/// checked against both constraints before it is returned.
pub fn make_adversary(g: &Graph, caps: &CapSequence, spec: &AdversarySpec) -> Result<Graph> {
    caps.validate_for(g)?;
    let mut rng = spec.rng.rng();
    let mut r = Removal::new(g, caps);
    match spec.strategy {
        Strategy::Random => {
            let mut edges = g.edge_vec();
            edges.shuffle(&mut rng);
            for (u, v) in edges {
                r.take(u, v);
            }
        }
        Strategy::GreedyMinDegree => r.greedy(),
        Strategy::LowDegreeStrip => {
            for v in 0..g.n() {
                if caps.rule(v) != CapRule::LowDegree {
                    continue;
                }
                // survivors: the two smallest-id neighbors still present
                let present: Vec<usize> = g.neighbors(v).iter().map(|&w| w as usize).filter(|&w| !r.h.has_edge(v, w)).collect();
                for &w in present.iter().skip(2) {
                    r.take(v, w);
                }
            }
            r.greedy();
        }
        Strategy::CutSeeking => {
            let mut order: Vec<usize> = (0..g.n()).collect();
            order.shuffle(&mut rng);
            let mut side = vec![false; g.n()];
            for &v in &order[..g.n() / 2] {
                side[v] = true;
            }
            let mut crossing: Vec<Edge> = g.edges().filter(|&(u, v)| side[u] != side[v]).collect();
            crossing.shuffle(&mut rng);
            for (u, v) in crossing {
                r.take(u, v);
            }
        }
    }
    let h = r.h;
    assert!(h.is_subgraph_of(g), "adversary produced edges outside G");
    assert!(degree_respects(&h, caps), "adversary exceeded its caps");
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HamVerdict {
    Found,
    /// Certified non-Hamiltonian.
    ExactFalse,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdversaryRecord {
    pub spec: AdversarySpec,
    pub h_edges: usize,
    /// `Σ d_H / Σ caps` (1 when every cap is 0).
    pub utilization: f64,
    /// Vertices whose whole budget was spent.
    pub saturated: usize,
    pub verdict: HamVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<CycleWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<NonHamReason>,
    /// The deleted edges, kept for refutations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub removed: Option<Vec<Edge>>,
    pub rotations: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResilienceOutcome {
    /// Some adversary left a certified non-Hamiltonian graph.
    Refuted,
    /// Every adversary was survived; evidence, not proof.
    Evidence,
    /// No refutation, but some remainder could not be decided.
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResilienceVerdict {
    pub outcome: ResilienceOutcome,
    pub records: Vec<AdversaryRecord>,
}

impl ResilienceVerdict {
    pub fn refuted(&self) -> bool {
        self.outcome == ResilienceOutcome::Refuted
    }
}

pub(crate) fn budget_use(h: &Graph, caps: &CapSequence) -> (f64, usize) {
    let total: usize = caps.as_slice().iter().sum();
    let used = 2 * h.edge_count();
    let saturated = (0..h.n()).filter(|&v| caps.get(v) > 0 && h.degree(v) == caps.get(v)).count();
    (if total == 0 { 1.0 } else { used as f64 / total as f64 }, saturated)
}

/// Runs every adversary of `suite` against `g` and decides Hamiltonicity of
/// each remainder.
pub fn test_resilience(g: &Graph, caps: &CapSequence, suite: &[AdversarySpec], budget: &SearchBudget) -> Result<ResilienceVerdict> {
    if g.n() < 3 {
        return Err(Error::param("resilience testing needs at least 3 vertices"));
    }
    let mut records = Vec::with_capacity(suite.len());
    for spec in suite {
        let h = make_adversary(g, caps, spec)?;
        let rest = g.subtract(&h)?;
        let search = find_hamilton_cycle(&rest, budget, &spec.rng.derive(1))?;
        let (utilization, saturated) = budget_use(&h, caps);
        let verdict = match search.status {
            SearchStatus::Found => HamVerdict::Found,
            SearchStatus::NotHamiltonian => HamVerdict::ExactFalse,
            SearchStatus::Inconclusive => HamVerdict::Inconclusive,
        };
        records.push(AdversaryRecord {
            spec: *spec,
            h_edges: h.edge_count(),
            utilization,
            saturated,
            verdict,
            cycle: search.cycle,
            certificate: search.reason,
            removed: (verdict == HamVerdict::ExactFalse).then(|| h.edge_vec()),
            rotations: search.rotations,
        });
    }
    let outcome = if records.iter().any(|r| r.verdict == HamVerdict::ExactFalse) {
        ResilienceOutcome::Refuted
    } else if records.iter().any(|r| r.verdict == HamVerdict::Inconclusive) {
        ResilienceOutcome::Inconclusive
    } else {
        ResilienceOutcome::Evidence
    };
    Ok(ResilienceVerdict { outcome, records })
}

/// Replays a refutation: `H` must be feasible and `G − H` must be certified
/// non-Hamiltonian by a degree/connectivity certificate or the oracle.
pub fn verify_refutation(g: &Graph, caps: &CapSequence, removed: &[Edge]) -> Result<bool> {
    let h = Graph::from_edges(g.n(), removed.iter().map(|&(u, v)| ordered(u, v)))?;
    if !h.is_subgraph_of(g) || !degree_respects(&h, caps) {
        return Ok(false);
    }
    let rest = g.subtract(&h)?;
    if crate::oracle::quick_refutation(&rest).is_some() {
        return Ok(true);
    }
    let oracle = Oracle::default();
    if !oracle.accepts(&rest) {
        return Ok(false);
    }
    Ok(!oracle.is_hamiltonian(&rest)?.is_hamiltonian())
}

#[derive(Debug, Clone, Serialize)]
pub struct UpperBound {
    pub vertex: usize,
    pub removed: Vec<Edge>,
    /// `Δ(H)`, equal to `δ(G) − 1`.
    pub max_degree: usize,
    /// `G − H` has a vertex of degree 1.
    pub certified: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct LowerEvidence {
    pub trials: usize,
    pub survived: usize,
    pub refuted: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Exhaustive {
    pub subgraphs: u64,
    pub all_hamiltonian: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<Edge>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaRecord {
    pub min_degree: usize,
    /// `δ(G) − 2`, the largest `Δ(H)` the lower bound allows.
    pub lower_cap: usize,
    pub upper: UpperBound,
    pub lower: LowerEvidence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<Exhaustive>,
}

/// Largest graph and cap for which every capped `H` is enumerated.
pub const EXHAUSTIVE_N: usize = 9;
pub const EXHAUSTIVE_CAP: usize = 2;
const EXHAUSTIVE_MAX_SUBGRAPHS: u64 = 2_000_000;

/// Evidence for local resilience `δ(G) − 1`: an explicit `H` with
/// `Δ(H) = δ − 1` that kills every Hamilton cycle, and `trials` adversaries
/// with `Δ(H) ≤ δ − 2` whose remainders are tested (every such `H` when the
/// graph is tiny).
pub fn delta_minus_one_check(g: &Graph, trials: usize, rng: &RngSpec, budget: &SearchBudget) -> Result<DeltaRecord> {
    let delta = g.min_degree();
    if g.n() < 3 || delta < 2 {
        return Err(Error::Precondition(format!("needs n ≥ 3 and minimum degree at least 2, got {delta}")));
    }
    let v = g.min_degree_vertex().expect("non-empty graph");
    let keep = g.neighbors(v)[0] as usize;
    let removed: Vec<Edge> = g.neighbors(v).iter().map(|&w| w as usize).filter(|&w| w != keep).map(|w| ordered(v, w)).collect();
    let h = Graph::from_edges(g.n(), removed.iter().copied())?;
    let rest = g.subtract(&h)?;
    let upper = UpperBound { vertex: v, max_degree: h.max_degree(), certified: rest.degree(v) == 1, removed };

    let caps = CapSequence::uniform(g.n(), delta - 2);
    let mut lower = LowerEvidence::default();
    let strategies = [Strategy::Random, Strategy::GreedyMinDegree, Strategy::CutSeeking];
    for trial in 0..trials {
        let strategy = strategies[trial % strategies.len()];
        let spec = AdversarySpec { strategy, rng: rng.derive(trial as u64) };
        let h = make_adversary(g, &caps, &spec)?;
        let search = find_hamilton_cycle(&g.subtract(&h)?, budget, &spec.rng.derive(1))?;
        lower.trials += 1;
        match search.status {
            SearchStatus::Found => lower.survived += 1,
            SearchStatus::NotHamiltonian => lower.refuted += 1,
            SearchStatus::Inconclusive => lower.inconclusive += 1,
        }
    }
    let exhaustive = (g.n() <= EXHAUSTIVE_N && delta - 2 <= EXHAUSTIVE_CAP).then(|| exhaust(g, delta - 2)).flatten();
    Ok(DeltaRecord { min_degree: delta, lower_cap: delta - 2, upper, lower, exhaustive })
}

/// Every `H ⊆ G` with `Δ(H) ≤ cap`, each remainder decided by the oracle.
/// `None` if there are too many.
fn exhaust(g: &Graph, cap: usize) -> Option<Exhaustive> {
    let edges = g.edge_vec();
    let oracle = Oracle::default();
    let mut used = vec![0usize; g.n()];
    let mut chosen: Vec<Edge> = Vec::new();
    let mut out = Exhaustive { subgraphs: 0, all_hamiltonian: true, counterexample: None };
    fn go(
        i: usize,
        g: &Graph,
        edges: &[Edge],
        cap: usize,
        used: &mut [usize],
        chosen: &mut Vec<Edge>,
        oracle: &Oracle,
        out: &mut Exhaustive,
    ) -> bool {
        if i == edges.len() {
            out.subgraphs += 1;
            if out.subgraphs > EXHAUSTIVE_MAX_SUBGRAPHS {
                return false;
            }
            let rest = g.subtract(&Graph::from_edges(g.n(), chosen.iter().copied()).expect("valid edges")).expect("subgraph");
            if !oracle.is_hamiltonian(&rest).expect("small graph").is_hamiltonian() && out.all_hamiltonian {
                out.all_hamiltonian = false;
                out.counterexample = Some(chosen.clone());
            }
            return true;
        }
        if !go(i + 1, g, edges, cap, used, chosen, oracle, out) {
            return false;
        }
        let (u, v) = edges[i];
        if used[u] < cap && used[v] < cap {
            used[u] += 1;
            used[v] += 1;
            chosen.push((u, v));
            let ok = go(i + 1, g, edges, cap, used, chosen, oracle, out);
            chosen.pop();
            used[u] -= 1;
            used[v] -= 1;
            return ok;
        }
        true
    }
    go(0, g, &edges, cap, &mut used, &mut chosen, &oracle, &mut out).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn zero_caps_give_empty_h() {
        let g = complete(6);
        let caps = CapSequence::uniform(6, 0);
        for s in Strategy::ALL {
            assert_eq!(make_adversary(&g, &caps, &AdversarySpec::new(s, 1)).unwrap().edge_count(), 0);
        }
    }

    #[test]
    fn unit_caps_give_matchings() {
        let g = complete(5);
        let caps = CapSequence::uniform(5, 1);
        let h = make_adversary(&g, &caps, &AdversarySpec::new(Strategy::GreedyMinDegree, 0)).unwrap();
        assert!(h.max_degree() <= 1);
        // maximal: only one vertex can be left unmatched
        assert_eq!(h.edge_count(), 2);
    }

    #[test]
    fn c5_is_resilient_to_nothing() {
        let g = cycle(5);
        let suite: Vec<_> = Strategy::ALL.iter().map(|&s| AdversarySpec::new(s, 3)).collect();
        let v = test_resilience(&g, &CapSequence::uniform(5, 0), &suite, &SearchBudget::default()).unwrap();
        assert_eq!(v.outcome, ResilienceOutcome::Evidence);
        let v = test_resilience(&g, &CapSequence::uniform(5, 1), &[AdversarySpec::new(Strategy::GreedyMinDegree, 0)], &SearchBudget::default()).unwrap();
        assert!(v.refuted());
        let removed = v.records[0].removed.clone().unwrap();
        assert!(verify_refutation(&g, &CapSequence::uniform(5, 1), &removed).unwrap());
    }

    #[test]
    fn k4_matchings() {
        let r = delta_minus_one_check(&complete(4), 6, &RngSpec::new(0), &SearchBudget::default()).unwrap();
        assert!(r.upper.certified);
        assert_eq!(r.upper.max_degree, 2);
        let ex = r.exhaustive.unwrap();
        assert_eq!(ex.subgraphs, 10);
        assert!(ex.all_hamiltonian);
        assert_eq!(r.lower.survived, 6);
    }

    #[test]
    fn strip_keeps_two_edges() {
        // every vertex is below the threshold; the first one processed keeps exactly two edges
        let g = complete(8);
        let caps = crate::graph::wbd_sequence(&g, 8.0, 0.05).unwrap();
        let h = make_adversary(&g, &caps, &AdversarySpec::new(Strategy::LowDegreeStrip, 0)).unwrap();
        assert!(degree_respects(&h, &caps));
        let rest = g.subtract(&h).unwrap();
        assert_eq!(rest.degree(0), 2);
        assert!(rest.min_degree() >= 2);
    }

    #[test]
    fn delta_check_rejects_low_degree() {
        assert!(delta_minus_one_check(&path(5), 1, &RngSpec::new(0), &SearchBudget::default()).is_err());
    }
}
