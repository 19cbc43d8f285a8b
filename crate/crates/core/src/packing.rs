//! Edge-disjoint Hamilton cycle packing by sequential extraction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ordered, Edge, Graph};
use crate::oracle::CycleWitness;
use crate::posa::{find_hamilton_cycle, DecidedBy, SearchBudget, SearchStatus};
use crate::rng::RngSpec;

/// Largest graph handed to the exhaustive packing search.
pub const EXHAUSTIVE_PACK_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PackingBudget {
    /// Search budget of the first round.
    pub search: SearchBudget,
    /// Restarts are multiplied by this factor each round, up to `max_restarts`.
    pub growth: usize,
    pub max_restarts: usize,
    /// Extra attempts with fresh seeds after a failed round.
    pub retries: usize,
    /// Fall back to the exhaustive search when greedy falls short at small n.
    pub exhaustive: bool,
    /// Cap on DFS nodes in the exhaustive search.
    pub exhaustive_nodes: u64,
}

impl Default for PackingBudget {
    fn default() -> Self {
        PackingBudget {
            search: SearchBudget { restarts: 8, ..SearchBudget::default() },
            growth: 2,
            max_restarts: 512,
            retries: 2,
            exhaustive: true,
            exhaustive_nodes: 5_000_000,
        }
    }
}

impl PackingBudget {
    fn round_budget(&self, round: usize) -> SearchBudget {
        let mut restarts = self.search.restarts.max(1);
        for _ in 0..round {
            restarts = restarts.saturating_mul(self.growth.max(1)).min(self.max_restarts.max(1));
        }
        SearchBudget { restarts, ..self.search }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundStats {
    pub round: usize,
    pub restarts_budget: usize,
    pub attempts: usize,
    pub restarts: usize,
    pub rotations: u64,
    pub found: bool,
    pub decided_by: DecidedBy,
    /// Edges left after this round.
    pub residual_edges: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shortfall {
    /// Some residual was certified non-Hamiltonian; the greedy order is stuck
    /// though a different packing may exist.
    ResidualNotHamiltonian,
    /// The search budget ran out on some residual.
    BudgetExhausted,
}

#[derive(Debug, Clone, Serialize)]
pub struct Packing {
    pub target: usize,
    pub cycles: Vec<CycleWitness>,
    #[serde(skip)]
    pub residual: Graph,
    pub rounds: Vec<RoundStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shortfall: Option<Shortfall>,
    /// Produced by the exhaustive search rather than greedy rounds.
    pub exhaustive: bool,
}

impl Packing {
    fn empty(g: &Graph, target: usize) -> Self {
        Packing { target, cycles: Vec::new(), residual: g.clone(), rounds: Vec::new(), shortfall: None, exhaustive: false }
    }

    pub fn achieved(&self) -> usize {
        self.cycles.len()
    }

    pub fn reached_target(&self) -> bool {
        self.cycles.len() == self.target
    }

    /// Replays the removals from `g`: each cycle must be valid in the residual
    /// it was taken from, and the final residual must match.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        if self.cycles.len() > self.target || self.target != g.min_degree() / 2 {
            return Err(format!("{} cycles for target {}", self.cycles.len(), self.target));
        }
        let mut rest = g.clone();
        for (i, c) in self.cycles.iter().enumerate() {
            c.validate(&rest).map_err(|e| format!("cycle {i}: {e}"))?;
            for (u, v) in c.edges() {
                rest.remove_edge(u, v);
            }
            if let Some(v) = (0..g.n()).find(|&v| rest.degree(v) + 2 * (i + 1) != g.degree(v)) {
                return Err(format!("degree of {v} off after round {i}"));
            }
        }
        if rest != self.residual {
            return Err("residual does not match the removals".into());
        }
        Ok(())
    }
}

fn remove_cycle(rest: &mut Graph, c: &CycleWitness) {
    for (u, v) in c.edges() {
        assert!(rest.remove_edge(u, v), "packed cycles share the edge ({u}, {v})");
    }
}

/// Greedily extracts up to `floor(δ(G)/2)` edge-disjoint Hamilton cycles. A
/// round that fails is retried with fresh seeds; no earlier round is undone.
pub fn pack_hamilton_cycles(g: &Graph, budget: &PackingBudget, rng: &RngSpec) -> Result<Packing> {
    if g.n() < 3 {
        return Err(Error::param("packing needs at least 3 vertices"));
    }
    let target = g.min_degree() / 2;
    let mut out = Packing::empty(g, target);
    for round in 0..target {
        let search_budget = budget.round_budget(round);
        let mut stats = RoundStats {
            round,
            restarts_budget: search_budget.restarts,
            attempts: 0,
            restarts: 0,
            rotations: 0,
            found: false,
            decided_by: DecidedBy::Undecided,
            residual_edges: out.residual.edge_count(),
        };
        let mut status = SearchStatus::Inconclusive;
        for attempt in 0..=budget.retries {
            let seed = rng.derive(((round as u64) << 16) | attempt as u64);
            let search = find_hamilton_cycle(&out.residual, &search_budget, &seed)?;
            stats.attempts += 1;
            stats.restarts += search.restarts;
            stats.rotations += search.rotations;
            stats.decided_by = search.decided_by;
            status = search.status;
            if let Some(c) = search.cycle {
                remove_cycle(&mut out.residual, &c);
                out.cycles.push(c);
                stats.found = true;
                break;
            }
            if status == SearchStatus::NotHamiltonian {
                break;
            }
        }
        stats.residual_edges = out.residual.edge_count();
        let found = stats.found;
        out.rounds.push(stats);
        if !found {
            out.shortfall = Some(match status {
                SearchStatus::NotHamiltonian => Shortfall::ResidualNotHamiltonian,
                _ => Shortfall::BudgetExhausted,
            });
            break;
        }
        let i = out.cycles.len();
        assert!(
            (0..g.n()).all(|v| out.residual.degree(v) + 2 * i == g.degree(v)),
            "degree accounting broke after round {round}"
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HDelta {
    /// `floor(δ/2)` edge-disjoint Hamilton cycles were found.
    Holds,
    /// The exhaustive search proved no such packing exists.
    Refuted,
    /// Greedy fell short and the instance is too large to decide.
    NotFound,
}

#[derive(Debug, Clone, Serialize)]
pub struct HDeltaCheck {
    pub verdict: HDelta,
    pub packing: Packing,
    pub notes: Vec<String>,
}

impl HDeltaCheck {
    pub fn holds(&self) -> bool {
        self.verdict == HDelta::Holds
    }
}

/// Whether `g` contains `floor(δ(G)/2)` edge-disjoint Hamilton cycles. Greedy
/// packing first; when it falls short on at most [`EXHAUSTIVE_PACK_N`]
/// vertices, a backtracking search over all Hamilton cycles decides.
pub fn check_h_delta(g: &Graph, budget: &PackingBudget, rng: &RngSpec) -> Result<HDeltaCheck> {
    let target = g.min_degree() / 2;
    if target == 0 {
        return Ok(HDeltaCheck {
            verdict: HDelta::Holds,
            packing: Packing::empty(g, 0),
            notes: vec!["minimum degree at most 1: nothing to pack".into()],
        });
    }
    let packing = pack_hamilton_cycles(g, budget, rng)?;
    if packing.reached_target() {
        return Ok(HDeltaCheck { verdict: HDelta::Holds, packing, notes: Vec::new() });
    }
    let mut notes = vec![format!("greedy rounds stopped at {} of {}", packing.achieved(), target)];
    if !(budget.exhaustive && g.n() <= EXHAUSTIVE_PACK_N) {
        return Ok(HDeltaCheck { verdict: HDelta::NotFound, packing, notes });
    }
    match exhaustive_packing(g, target, budget.exhaustive_nodes) {
        Some(Some(cycles)) => {
            notes.push("exhaustive search found a packing the greedy order missed".into());
            let mut residual = g.clone();
            for c in &cycles {
                remove_cycle(&mut residual, c);
            }
            let packing = Packing { target, cycles, residual, rounds: packing.rounds, shortfall: None, exhaustive: true };
            Ok(HDeltaCheck { verdict: HDelta::Holds, packing, notes })
        }
        Some(None) => {
            notes.push("exhaustive search: no packing exists".into());
            Ok(HDeltaCheck { verdict: HDelta::Refuted, packing, notes })
        }
        None => {
            notes.push("exhaustive search hit its node cap".into());
            Ok(HDeltaCheck { verdict: HDelta::NotFound, packing, notes })
        }
    }
}

/// Every Hamilton cycle of `g` (n ≤ 11) as a bitmask over `edges`, each
/// undirected cycle once.
pub fn all_hamilton_cycles(g: &Graph) -> (Vec<Edge>, Vec<(u64, Vec<usize>)>) {
    let n = g.n();
    let edges = g.edge_vec();
    assert!(edges.len() <= 64, "too many edges for the exhaustive search");
    let mut index = vec![usize::MAX; n * n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        index[u * n + v] = i;
        index[v * n + u] = i;
    }
    let mut cycles = Vec::new();
    if n < 3 {
        return (edges, cycles);
    }
    let mut order = vec![0usize];
    let mut used = vec![false; n];
    used[0] = true;
    fn dfs(g: &Graph, index: &[usize], order: &mut Vec<usize>, used: &mut [bool], mask: u64, out: &mut Vec<(u64, Vec<usize>)>) {
        let n = g.n();
        let last = *order.last().unwrap();
        if order.len() == n {
            // each cycle is seen in both directions; keep the one with order[1] < order[n-1]
            if order[1] < last && g.has_edge(last, 0) {
                out.push((mask | 1 << index[last * n], order.clone()));
            }
            return;
        }
        for &w in g.neighbors(last) {
            let w = w as usize;
            if used[w] {
                continue;
            }
            used[w] = true;
            order.push(w);
            dfs(g, index, order, used, mask | 1 << index[last * n + w], out);
            order.pop();
            used[w] = false;
        }
    }
    dfs(g, &index, &mut order, &mut used, 0, &mut cycles);
    (edges, cycles)
}

/// `Some(Some(cycles))` if `target` pairwise edge-disjoint Hamilton cycles
/// exist, `Some(None)` if not, `None` if the node cap was hit.
pub fn exhaustive_packing(g: &Graph, target: usize, max_nodes: u64) -> Option<Option<Vec<CycleWitness>>> {
    let (_, cycles) = all_hamilton_cycles(g);
    let mut chosen = Vec::with_capacity(target);
    let mut nodes = 0u64;
    fn go(cycles: &[(u64, Vec<usize>)], from: usize, used: u64, target: usize, chosen: &mut Vec<usize>, nodes: &mut u64, cap: u64) -> Option<bool> {
        if chosen.len() == target {
            return Some(true);
        }
        for i in from..cycles.len() {
            *nodes += 1;
            if *nodes > cap {
                return None;
            }
            if cycles[i].0 & used != 0 {
                continue;
            }
            chosen.push(i);
            if go(cycles, i + 1, used | cycles[i].0, target, chosen, nodes, cap)? {
                return Some(true);
            }
            chosen.pop();
        }
        Some(false)
    }
    let found = go(&cycles, 0, 0, target, &mut chosen, &mut nodes, max_nodes)?;
    Some(found.then(|| chosen.iter().map(|&i| CycleWitness::new(cycles[i].1.clone())).collect()))
}

/// Edges shared between any two cycles of `cycles`.
pub fn shared_edges(cycles: &[CycleWitness]) -> Vec<Edge> {
    let mut seen = std::collections::HashSet::new();
    let mut shared = Vec::new();
    for c in cycles {
        for (u, v) in c.edges() {
            if !seen.insert(ordered(u, v)) {
                shared.push(ordered(u, v));
            }
        }
    }
    shared
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn check(g: &Graph) -> HDeltaCheck {
        let r = check_h_delta(g, &PackingBudget::default(), &RngSpec::new(7)).unwrap();
        r.packing.validate(g).unwrap();
        assert!(shared_edges(&r.packing.cycles).is_empty());
        r
    }

    #[test]
    fn c6_packs_itself() {
        let p = pack_hamilton_cycles(&cycle(6), &PackingBudget::default(), &RngSpec::new(0)).unwrap();
        assert_eq!((p.target, p.achieved()), (1, 1));
        assert_eq!(p.residual.edge_count(), 0);
    }

    #[test]
    fn complete_graphs_decompose() {
        let r = check(&complete(5));
        assert!(r.holds());
        assert_eq!(r.packing.achieved(), 2);
        let r = check(&complete(7));
        assert!(r.holds());
        assert_eq!(r.packing.achieved(), 3);
        assert_eq!(r.packing.residual.edge_count(), 0);
    }

    #[test]
    fn petersen_refuted() {
        let r = check(&petersen());
        assert_eq!(r.verdict, HDelta::Refuted);
        assert_eq!(r.packing.target, 1);
        assert_eq!(r.packing.achieved(), 0);
    }

    #[test]
    fn low_min_degree_is_vacuous() {
        let r = check(&star(4));
        assert!(r.holds());
        assert!(r.packing.cycles.is_empty());
        assert!(check_h_delta(&Graph::empty(2), &PackingBudget::default(), &RngSpec::new(0)).unwrap().holds());
    }

    #[test]
    fn hamilton_cycle_counts() {
        // (n-1)!/2 cycles in K_n
        assert_eq!(all_hamilton_cycles(&complete(5)).1.len(), 12);
        assert_eq!(all_hamilton_cycles(&complete(6)).1.len(), 60);
        assert_eq!(all_hamilton_cycles(&petersen()).1.len(), 0);
        assert_eq!(all_hamilton_cycles(&complete_bipartite(3, 3)).1.len(), 6);
    }

    #[test]
    fn round_budgets_double() {
        let b = PackingBudget::default();
        let r: Vec<_> = (0..8).map(|i| b.round_budget(i).restarts).collect();
        assert_eq!(r, [8, 16, 32, 64, 128, 256, 512, 512]);
    }
}
