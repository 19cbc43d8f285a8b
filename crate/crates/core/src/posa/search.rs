use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::closure::Explorer;
use super::path::PathState;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{quick_refutation, CycleWitness, ExactHam, NonHamReason, Oracle, DEFAULT_EXACT_LIMIT};
use crate::rng::RngSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchBudget {
    /// Seed paths tried, including the first.
    pub restarts: usize,
    /// Cap on endpoints explored per rotation closure; `None` explores fully.
    pub max_closure: Option<usize>,
    /// Largest `n` handed to the exact oracle.
    pub oracle_limit: usize,
    pub oracle_fallback: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { restarts: 50, max_closure: None, oracle_limit: DEFAULT_EXACT_LIMIT, oracle_fallback: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Found,
    NotHamiltonian,
    /// Nothing found; the graph may still be Hamiltonian.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecidedBy {
    Rotation,
    Certificate,
    Oracle,
    Undecided,
}

#[derive(Debug, Clone, Serialize)]
pub struct HamSearch {
    pub status: SearchStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<CycleWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<NonHamReason>,
    pub decided_by: DecidedBy,
    pub rotations: u64,
    /// Seed paths actually used.
    pub restarts: usize,
    /// Vertex count of the longest path the heuristic ended on.
    pub best_path: usize,
}

impl HamSearch {
    pub fn found(&self) -> bool {
        self.status == SearchStatus::Found
    }
}

pub(crate) struct Attempts {
    pub cycle: Option<Vec<usize>>,
    pub best: Option<PathState>,
    pub rotations: u64,
    pub restarts: usize,
}

/// Rotation–extension search for a Hamilton cycle.
///
/// Cheap structural certificates are tried first and are definitive at any
/// size. Otherwise a returned cycle is always validated; when the heuristic
/// fails, graphs within `budget.oracle_limit` go to the exact oracle and larger
/// ones are reported [`SearchStatus::Inconclusive`].
pub fn find_hamilton_cycle(g: &Graph, budget: &SearchBudget, rng: &RngSpec) -> Result<HamSearch> {
    if g.n() < 3 {
        return Err(Error::param("Hamiltonicity needs at least 3 vertices"));
    }
    let mut out = HamSearch {
        status: SearchStatus::Inconclusive,
        cycle: None,
        reason: None,
        decided_by: DecidedBy::Undecided,
        rotations: 0,
        restarts: 0,
        best_path: 0,
    };
    if let Some(reason) = quick_refutation(g) {
        out.status = SearchStatus::NotHamiltonian;
        out.reason = Some(reason);
        out.decided_by = DecidedBy::Certificate;
        return Ok(out);
    }
    let attempts = run_attempts(g, budget, rng, None);
    out.rotations = attempts.rotations;
    out.restarts = attempts.restarts;
    out.best_path = attempts.best.as_ref().map_or(0, |p| p.vertex_count());
    if let Some(order) = attempts.cycle {
        let cycle = CycleWitness::new(order);
        cycle
            .validate(g)
            .unwrap_or_else(|e| panic!("rotation search produced an invalid cycle: {e}"));
        out.best_path = g.n();
        out.status = SearchStatus::Found;
        out.cycle = Some(cycle);
        out.decided_by = DecidedBy::Rotation;
        return Ok(out);
    }
    if budget.oracle_fallback && g.n() <= budget.oracle_limit {
        out.decided_by = DecidedBy::Oracle;
        match Oracle::with_limit(budget.oracle_limit)?.is_hamiltonian(g)? {
            ExactHam::Hamiltonian { cycle } => {
                cycle.validate(g).expect("oracle cycle validates");
                out.status = SearchStatus::Found;
                out.cycle = Some(cycle);
            }
            ExactHam::NotHamiltonian { reason } => {
                out.status = SearchStatus::NotHamiltonian;
                out.reason = Some(reason);
            }
        }
    }
    Ok(out)
}

/// Runs up to `budget.restarts` seed paths without any certificate or oracle.
/// The first run continues `seed` if given, else starts at a minimum-degree
/// vertex; later runs start at random vertices.
pub(crate) fn run_attempts(g: &Graph, budget: &SearchBudget, rng: &RngSpec, seed: Option<&PathState>) -> Attempts {
    let mut walker = Walker::new(g, budget.max_closure);
    let mut rng = rng.rng();
    let mut best: Option<PathState> = None;
    let mut restarts = 0;
    for k in 0..budget.restarts.max(1) {
        let order = match (k, seed) {
            (0, Some(p)) => p.vertices().to_vec(),
            (0, None) => vec![g.min_degree_vertex().unwrap_or(0)],
            _ => vec![rng.random_range(0..g.n())],
        };
        restarts += 1;
        if let Some(cycle) = walker.attempt(order) {
            return Attempts { cycle: Some(cycle), best: None, rotations: walker.explorer.rotations, restarts };
        }
        if best.as_ref().is_none_or(|b| walker.path.vertex_count() > b.vertex_count()) {
            best = Some(walker.path.clone());
        }
    }
    Attempts { cycle: None, best, rotations: walker.explorer.rotations, restarts }
}

struct Walker<'g> {
    g: &'g Graph,
    /// Off-path neighbors of each vertex.
    free: Vec<u32>,
    path: PathState,
    explorer: Explorer,
    max_closure: Option<usize>,
}

impl<'g> Walker<'g> {
    fn new(g: &'g Graph, max_closure: Option<usize>) -> Self {
        Walker {
            g,
            free: Vec::new(),
            path: PathState::single(g.n(), 0),
            explorer: Explorer::new(g.n()),
            max_closure,
        }
    }

    fn add(&mut self, v: usize) {
        self.path.push(v);
        for &w in self.g.neighbors(v) {
            self.free[w as usize] -= 1;
        }
    }

    /// Off-path neighbor of `x` with the fewest off-path neighbors itself,
    /// ties to the lower id.
    fn pick(&self, x: usize) -> Option<usize> {
        self.g
            .neighbors(x)
            .iter()
            .map(|&w| w as usize)
            .filter(|&w| !self.path.contains(w))
            .min_by_key(|&w| (self.free[w], w))
    }

    fn closes(&self) -> bool {
        self.path.vertex_count() >= 3 && self.g.has_edge(self.path.start(), self.path.end())
    }

    /// One extend/rotate/close run from the path `order`. Returns a Hamilton
    /// cycle, or `None` with the stuck path left in `self.path`.
    fn attempt(&mut self, order: Vec<usize>) -> Option<Vec<usize>> {
        let g = self.g;
        let n = g.n();
        self.free.clear();
        self.free.extend((0..n).map(|v| g.degree(v) as u32));
        self.path.reset_to(Vec::new());
        for v in order {
            self.add(v);
        }
        loop {
            if let Some(w) = self.pick(self.path.end()) {
                self.add(w);
                continue;
            }
            if self.free[self.path.start()] > 0 {
                self.path.reverse();
                continue;
            }
            if self.closes() {
                if self.path.vertex_count() == n {
                    return Some(self.path.vertices().to_vec());
                }
                if !self.reopen() {
                    return None;
                }
                continue;
            }
            if self.rotate_to_progress() {
                continue;
            }
            self.path.reverse();
            if !self.rotate_to_progress() {
                return None;
            }
        }
    }

    /// Turns the closed cycle into a longer path through an edge leaving it.
    fn reopen(&mut self) -> bool {
        let Some(j) = self.path.vertices().iter().position(|&c| self.free[c] > 0) else {
            return false;
        };
        let c = self.path.vertices()[j];
        let w = self.pick(c).expect("vertex has an off-path neighbor");
        let verts = self.path.vertices();
        let mut order = Vec::with_capacity(verts.len() + 1);
        order.extend_from_slice(&verts[j + 1..]);
        order.extend_from_slice(&verts[..=j]);
        self.path.reset_to(order);
        self.add(w);
        true
    }

    /// Searches the closure with the current start pinned for an endpoint
    /// that extends or closes; on success the path is replaced.
    fn rotate_to_progress(&mut self) -> bool {
        let g = self.g;
        let v0 = self.path.start();
        let can_close = self.path.vertex_count() >= 3;
        let free = &self.free;
        let hit = self
            .explorer
            .explore(g, &self.path, self.max_closure, |u| free[u] > 0 || (can_close && g.has_edge(u, v0)));
        match hit {
            Some(0) | None => false,
            Some(k) => {
                self.explorer.take_path(k, &mut self.path);
                true
            }
        }
    }
}
