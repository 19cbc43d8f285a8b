use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::closure::closure_unchecked;
use super::path::PathState;
use super::search::{find_hamilton_cycle, run_attempts, SearchBudget};
use crate::error::{Error, Result};
use crate::graph::{ordered, Edge, Graph};
use crate::oracle::{CycleWitness, Oracle};
use crate::rng::RngSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AugmentConfig {
    /// Maximum additions; `None` means `n`.
    pub limit: Option<usize>,
    pub budget: SearchBudget,
    pub rng: RngSpec,
    /// Closure endpoints re-pinned for second-level pairs in heuristic mode.
    pub second_level: usize,
}

impl Default for AugmentConfig {
    fn default() -> Self {
        AugmentConfig { limit: None, budget: SearchBudget::default(), rng: RngSpec::new(0), second_level: 32 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    /// ℓ went up.
    Extension,
    /// The graph became Hamiltonian.
    CycleClosure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentStep {
    pub edge: Edge,
    pub kind: StepKind,
    pub length_before: usize,
    pub length_after: usize,
    /// Lengths are exact oracle values rather than constructed paths.
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AugmentOutcome {
    Hamiltonian,
    /// No pool edge was found to be a booster.
    PoolExhausted,
    LimitReached,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentTrace {
    pub steps: Vec<AugmentStep>,
    pub outcome: AugmentOutcome,
    pub cycle: Option<CycleWitness>,
    pub exact: bool,
}

impl AugmentTrace {
    pub fn succeeded(&self) -> bool {
        self.outcome == AugmentOutcome::Hamiltonian
    }

    pub fn added_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.steps.iter().map(|s| s.edge)
    }

    /// Replays the trace from `gamma`: every edge comes from `pool` and is new
    /// at its step, at most `limit` steps, lengths increase except on the
    /// closing step, and a reported cycle validates in the final graph. When
    /// `oracle` is given, every recorded length is recomputed exactly.
    pub fn validate(&self, gamma: &Graph, pool: &[Edge], limit: usize, oracle: Option<&Oracle>) -> std::result::Result<Graph, String> {
        if self.steps.len() > limit {
            return Err(format!("{} steps exceed the limit {limit}", self.steps.len()));
        }
        let pool: HashSet<Edge> = pool.iter().map(|&(u, v)| ordered(u, v)).collect();
        let mut g = gamma.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let (u, v) = step.edge;
            if !pool.contains(&ordered(u, v)) {
                return Err(format!("step {i}: edge {{{u}, {v}}} not in the pool"));
            }
            if !g.add_edge(u, v) {
                return Err(format!("step {i}: edge {{{u}, {v}}} already present"));
            }
            match step.kind {
                StepKind::Extension if step.length_after <= step.length_before => {
                    return Err(format!("step {i}: extension without a longer path"));
                }
                StepKind::CycleClosure if i + 1 != self.steps.len() => {
                    return Err(format!("step {i}: cycle closure before the last step"));
                }
                _ => {}
            }
            if let Some(o) = oracle {
                let before = o.longest_path_length(&g.with_removed(u, v)).map_err(|e| e.to_string())?;
                let after = o.longest_path_length(&g).map_err(|e| e.to_string())?;
                if step.exact && (before, after) != (step.length_before, step.length_after) {
                    return Err(format!("step {i}: recorded lengths disagree with the oracle"));
                }
                let ham = g.n() >= 3 && o.is_hamiltonian(&g).map_err(|e| e.to_string())?.is_hamiltonian();
                let ok = match step.kind {
                    StepKind::Extension => after > before,
                    StepKind::CycleClosure => ham,
                };
                if !ok {
                    return Err(format!("step {i}: {{{u}, {v}}} is not a booster"));
                }
            }
        }
        if let Some(c) = &self.cycle {
            c.validate(&g).map_err(|e| format!("final cycle: {e}"))?;
        }
        if self.succeeded() != self.cycle.is_some() {
            return Err("outcome and cycle disagree".into());
        }
        Ok(g)
    }
}

/// Adds boosters from `pool` to `gamma` one at a time until it is Hamiltonian.
///
/// Within the oracle limit each added edge is an exact booster: candidates
/// from rotation closures of a longest path are tried first, then the pool in
/// order. Above it, candidates come from closures of the best stuck path and
/// each addition is backed by an explicit longer path or a Hamilton cycle.
pub fn booster_augment(gamma: &Graph, pool: &[Edge], cfg: &AugmentConfig) -> Result<(Graph, AugmentTrace)> {
    let n = gamma.n();
    if n < 3 {
        return Err(Error::param("augmentation needs at least 3 vertices"));
    }
    let mut remaining: Vec<Edge> = Vec::with_capacity(pool.len());
    let mut in_pool = HashSet::new();
    for &(u, v) in pool {
        if u == v || u >= n || v >= n {
            return Err(Error::param(format!("pool edge {{{u}, {v}}} is not a valid pair")));
        }
        if gamma.has_edge(u, v) {
            return Err(Error::param(format!("pool edge {{{u}, {v}}} is already in the graph")));
        }
        if in_pool.insert(ordered(u, v)) {
            remaining.push(ordered(u, v));
        }
    }
    let limit = cfg.limit.unwrap_or(n);
    let exact = n <= cfg.budget.oracle_limit;
    let mut g = gamma.clone();
    let mut steps = Vec::new();
    let mut seed: Option<PathState> = None;
    let mut round = 0u64;
    let (outcome, cycle) = loop {
        let rng = cfg.rng.derive(round);
        round += 1;
        if exact {
            let search = find_hamilton_cycle(&g, &cfg.budget, &rng)?;
            if let Some(c) = search.cycle {
                break (AugmentOutcome::Hamiltonian, Some(c));
            }
            if steps.len() >= limit {
                break (AugmentOutcome::LimitReached, None);
            }
            let oracle = Oracle::with_limit(cfg.budget.oracle_limit)?;
            match exact_step(&g, &remaining, &in_pool, &oracle)? {
                Some(step) => {
                    g.add_edge(step.edge.0, step.edge.1);
                    in_pool.remove(&step.edge);
                    steps.push(step);
                }
                None => break (AugmentOutcome::PoolExhausted, None),
            }
        } else {
            let attempts = run_attempts(&g, &cfg.budget, &rng, seed.as_ref());
            if let Some(order) = attempts.cycle {
                let c = CycleWitness::new(order);
                c.validate(&g).expect("rotation search cycle validates");
                break (AugmentOutcome::Hamiltonian, Some(c));
            }
            if steps.len() >= limit {
                break (AugmentOutcome::LimitReached, None);
            }
            let best = attempts.best.expect("at least one attempt ran");
            match heuristic_step(&g, &best, &in_pool, cfg.second_level) {
                Some((step, next)) => {
                    g.add_edge(step.edge.0, step.edge.1);
                    in_pool.remove(&step.edge);
                    let closed = step.kind == StepKind::CycleClosure;
                    steps.push(step);
                    if closed {
                        let c = CycleWitness::new(next);
                        c.validate(&g).expect("closing cycle validates");
                        break (AugmentOutcome::Hamiltonian, Some(c));
                    }
                    seed = Some(PathState::new(&g, next).expect("constructed path validates"));
                }
                None => break (AugmentOutcome::PoolExhausted, None),
            }
        }
        remaining.retain(|e| in_pool.contains(e));
    };
    Ok((g, AugmentTrace { steps, outcome, cycle, exact }))
}

fn closure_pairs(g: &Graph, p: &PathState) -> Vec<Edge> {
    let c = closure_unchecked(g, p, None);
    c.endpoints()
        .iter()
        .filter(|&&u| u != c.pinned() && !g.has_edge(c.pinned(), u))
        .map(|&u| ordered(c.pinned(), u))
        .collect()
}

fn exact_step(g: &Graph, remaining: &[Edge], in_pool: &HashSet<Edge>, oracle: &Oracle) -> Result<Option<AugmentStep>> {
    let before = oracle.longest_path_length(g)?;
    let mut p = PathState::new(g, oracle.longest_path(g)?)?;
    let mut candidates = closure_pairs(g, &p);
    p.reverse();
    candidates.extend(closure_pairs(g, &p));
    let from_pool = remaining.iter().copied();
    let mut tried = HashSet::new();
    for e in candidates.into_iter().filter(|e| in_pool.contains(e)).chain(from_pool) {
        if !tried.insert(e) || !oracle.is_booster(g, e)? {
            continue;
        }
        let plus = g.with_edges([e]);
        let after = oracle.longest_path_length(&plus)?;
        let kind = if oracle.is_hamiltonian(&plus)?.is_hamiltonian() { StepKind::CycleClosure } else { StepKind::Extension };
        return Ok(Some(AugmentStep { edge: e, kind, length_before: before, length_after: after, exact: true }));
    }
    Ok(None)
}

/// Picks a pool pair `{x, y}` whose endpoints are joined by a path `q` on the
/// vertex set of `best`, and turns `q` plus the new edge into a longer path
/// (or a Hamilton cycle, returned as the second component).
fn heuristic_step(g: &Graph, best: &PathState, in_pool: &HashSet<Edge>, second_level: usize) -> Option<(AugmentStep, Vec<usize>)> {
    let before = best.length();
    let mut seeds = vec![best.clone()];
    let mut rev = best.clone();
    rev.reverse();
    seeds.push(rev);
    let mut k = 0;
    while k < seeds.len() {
        let c = closure_unchecked(g, &seeds[k], None);
        for &u in c.endpoints() {
            let e = ordered(c.pinned(), u);
            if u == c.pinned() || g.has_edge(e.0, e.1) || !in_pool.contains(&e) {
                continue;
            }
            let q = c.path_to(g, u).expect("closure paths replay");
            if let Some((kind, next)) = gain(g, &q) {
                let after = if kind == StepKind::CycleClosure { before } else { before + 1 };
                return Some((AugmentStep { edge: e, kind, length_before: before, length_after: after, exact: false }, next));
            }
        }
        if k < 2 {
            for &u in c.endpoints().iter().skip(1).take(second_level) {
                let mut q = c.path_to(g, u).expect("closure paths replay");
                q.reverse();
                seeds.push(q);
            }
        }
        k += 1;
    }
    None
}

/// Closes `q` with the edge between its ends and reopens the cycle through an
/// edge leaving it. `None` if the cycle is a whole non-spanning component.
fn gain(g: &Graph, q: &PathState) -> Option<(StepKind, Vec<usize>)> {
    let verts = q.vertices();
    if verts.len() == g.n() {
        return Some((StepKind::CycleClosure, verts.to_vec()));
    }
    for (j, &c) in verts.iter().enumerate() {
        if let Some(&w) = g.neighbors(c).iter().find(|&&w| !q.contains(w as usize)) {
            let mut order = Vec::with_capacity(verts.len() + 1);
            order.extend_from_slice(&verts[j + 1..]);
            order.extend_from_slice(&verts[..=j]);
            order.push(w as usize);
            return Some((StepKind::Extension, order));
        }
    }
    None
}
