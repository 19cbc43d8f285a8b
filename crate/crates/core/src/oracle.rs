//! Exact solvers for small graphs: Hamiltonicity, longest paths, boosters.
//!
//! All three run a subset dynamic program: `ends[S]` is the bitmask of
//! vertices `v` such that some path covers exactly `S` and ends at `v`. This
//! costs O(2ⁿ·n) words, so the solvers refuse graphs above a size limit.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

pub const DEFAULT_EXACT_LIMIT: usize = 18;

/// Hard ceiling for the configurable limit: masks are 32-bit and the tables
/// hold 2ⁿ entries.
pub const MAX_EXACT_LIMIT: usize = 26;

/// A Hamilton cycle given as a cyclic vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleWitness(Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("cycle lists {got} vertices, graph has {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("vertex {0} repeated")]
    Repeated(usize),
    #[error("consecutive vertices {0} and {1} are not adjacent")]
    MissingEdge(usize, usize),
}

impl CycleWitness {
    pub fn new(order: Vec<usize>) -> Self {
        CycleWitness(order)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cycle edges in traversal order, each as `(min, max)`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| crate::graph::ordered(self.0[i], self.0[(i + 1) % k]))
    }

    /// Checks that the order is a permutation of `0..n` whose cyclically
    /// consecutive entries are adjacent in `g`.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), WitnessError> {
        let n = g.n();
        if self.0.len() != n || n < 3 {
            return Err(WitnessError::WrongLength { expected: n, got: self.0.len() });
        }
        let mut seen = vec![false; n];
        for &v in &self.0 {
            if v >= n {
                return Err(WitnessError::OutOfRange(v));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(WitnessError::Repeated(v));
            }
        }
        for i in 0..n {
            let (a, b) = (self.0[i], self.0[(i + 1) % n]);
            if !g.has_edge(a, b) {
                return Err(WitnessError::MissingEdge(a, b));
            }
        }
        Ok(())
    }
}

/// Why a graph has no Hamilton cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NonHamReason {
    /// A vertex of degree below two.
    MinDegree { vertex: usize, degree: usize },
    Disconnected,
    /// Removing this vertex disconnects the graph.
    CutVertex { vertex: usize },
    /// Bipartite with parts of different sizes.
    BipartiteImbalance { left: usize, right: usize },
    /// A vertex with three or more degree-2 neighbors would need three cycle edges.
    ForcedEdges { vertex: usize },
    /// The exhaustive search found no cycle.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum ExactHam {
    Hamiltonian { cycle: CycleWitness },
    NotHamiltonian { reason: NonHamReason },
}

impl ExactHam {
    pub fn is_hamiltonian(&self) -> bool {
        matches!(self, ExactHam::Hamiltonian { .. })
    }

    pub fn witness(&self) -> Option<&CycleWitness> {
        match self {
            ExactHam::Hamiltonian { cycle } => Some(cycle),
            _ => None,
        }
    }
}

/// The set B_G(v) of booster partners of `vertex`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoosterSet {
    pub vertex: usize,
    pub boosters: Vec<usize>,
    /// `G` itself is Hamiltonian, so every non-neighbor qualifies.
    pub graph_hamiltonian: bool,
}

/// Exact solvers with a configurable size limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { limit: DEFAULT_EXACT_LIMIT }
    }
}

impl Oracle {
    pub fn with_limit(limit: usize) -> Result<Self> {
        if limit > MAX_EXACT_LIMIT {
            return Err(Error::param(format!("exact limit {limit} exceeds {MAX_EXACT_LIMIT}")));
        }
        Ok(Oracle { limit })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        g.n() <= self.limit
    }

    fn guard(&self, g: &Graph) -> Result<()> {
        if g.n() > self.limit {
            return Err(Error::SizeLimit { n: g.n(), limit: self.limit });
        }
        Ok(())
    }

    /// ℓ(G): edges on a longest path, maximized over components.
    pub fn longest_path_length(&self, g: &Graph) -> Result<usize> {
        Ok(self.longest_path(g)?.len().saturating_sub(1))
    }

    /// A longest path as a vertex sequence (empty only when `n = 0`).
    pub fn longest_path(&self, g: &Graph) -> Result<Vec<usize>> {
        self.guard(g)?;
        if g.n() == 0 {
            return Ok(Vec::new());
        }
        let adj = masks(g);
        let ends = path_table(&adj);
        let best = (1..ends.len()).filter(|&s| ends[s] != 0).max_by_key(|&s| (s.count_ones(), usize::MAX - s));
        let mask = best.expect("singletons always have paths");
        let end = ends[mask].trailing_zeros() as usize;
        Ok(walk_back(&adj, |s| ends[s], mask, end, 0))
    }

    pub fn is_hamiltonian(&self, g: &Graph) -> Result<ExactHam> {
        if g.n() < 3 {
            return Err(Error::param("Hamiltonicity needs at least 3 vertices"));
        }
        self.guard(g)?;
        if let Some(reason) = quick_refutation(g) {
            return Ok(ExactHam::NotHamiltonian { reason });
        }
        Ok(match hamilton_dp(g) {
            Some(order) => ExactHam::Hamiltonian { cycle: CycleWitness(order) },
            None => ExactHam::NotHamiltonian { reason: NonHamReason::Exhaustive },
        })
    }

    fn hamiltonian_bool(&self, g: &Graph) -> Result<bool> {
        if g.n() < 3 {
            return Ok(false);
        }
        Ok(self.is_hamiltonian(g)?.is_hamiltonian())
    }

    /// B_G(v) straight from the definition: non-neighbors `w` such that
    /// `G + vw` is Hamiltonian or has a longer longest path.
    pub fn booster_set(&self, g: &Graph, v: usize) -> Result<BoosterSet> {
        self.guard(g)?;
        if v >= g.n() {
            return Err(Error::param(format!("vertex {v} out of range")));
        }
        let hamiltonian = self.hamiltonian_bool(g)?;
        let candidates = (0..g.n()).filter(|&w| w != v && !g.has_edge(v, w));
        let boosters = if hamiltonian {
            candidates.collect()
        } else {
            let base = self.longest_path_length(g)?;
            let mut out = Vec::new();
            for w in candidates {
                if self.is_booster_given(g, (v, w), base)? {
                    out.push(w);
                }
            }
            out
        };
        Ok(BoosterSet { vertex: v, boosters, graph_hamiltonian: hamiltonian })
    }

    /// Whether the non-edge `e` is a booster of `g`.
    pub fn is_booster(&self, g: &Graph, e: Edge) -> Result<bool> {
        self.guard(g)?;
        if e.0 == e.1 || g.has_edge(e.0, e.1) {
            return Ok(false);
        }
        if self.hamiltonian_bool(g)? {
            return Ok(true);
        }
        let base = self.longest_path_length(g)?;
        self.is_booster_given(g, e, base)
    }

    fn is_booster_given(&self, g: &Graph, (u, w): Edge, base: usize) -> Result<bool> {
        let plus = g.with_edges([(u, w)]);
        let longer = self.longest_path_length(&plus)?;
        if longer > base {
            return Ok(true);
        }
        // a Hamilton cycle contains a spanning path, so ℓ = n − 1 is necessary
        Ok(longer + 1 == g.n() && self.hamiltonian_bool(&plus)?)
    }

    /// Every booster `{u, w}`, `u < w`, in lexicographic order.
    pub fn all_boosters(&self, g: &Graph) -> Result<Vec<Edge>> {
        self.guard(g)?;
        let hamiltonian = self.hamiltonian_bool(g)?;
        let base = self.longest_path_length(g)?;
        let mut out = Vec::new();
        for u in 0..g.n() {
            for w in u + 1..g.n() {
                if g.has_edge(u, w) {
                    continue;
                }
                if hamiltonian || self.is_booster_given(g, (u, w), base)? {
                    out.push((u, w));
                }
            }
        }
        Ok(out)
    }
}

pub fn longest_path_length(g: &Graph) -> Result<usize> {
    Oracle::default().longest_path_length(g)
}

pub fn is_hamiltonian_exact(g: &Graph) -> Result<ExactHam> {
    Oracle::default().is_hamiltonian(g)
}

pub fn booster_set_exact(g: &Graph, v: usize) -> Result<BoosterSet> {
    Oracle::default().booster_set(g, v)
}

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect()
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(b)
    })
}

/// `ends[S]` for every subset `S`.
fn path_table(adj: &[u32]) -> Vec<u32> {
    let n = adj.len();
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    for mask in 1..ends.len() {
        let at = ends[mask];
        if at == 0 {
            continue;
        }
        let reach = bits(at).fold(0u32, |r, v| r | adj[v]) & !(mask as u32);
        for w in bits(reach) {
            ends[mask | (1 << w)] |= 1 << w;
        }
    }
    ends
}

/// Rebuilds a path covering `mask` and ending at `end`, stopping once the
/// remaining set equals `stop`. Returned in start-to-end order.
fn walk_back(adj: &[u32], ends: impl Fn(usize) -> u32, mut mask: usize, mut end: usize, stop: usize) -> Vec<usize> {
    let mut rev = vec![end];
    loop {
        let prev = mask & !(1 << end);
        if prev == stop || prev == 0 {
            break;
        }
        let u = (ends(prev) & adj[end]).trailing_zeros() as usize;
        debug_assert!(u < adj.len(), "broken path table");
        rev.push(u);
        mask = prev;
        end = u;
    }
    rev.reverse();
    rev
}

/// Hamilton cycle through vertex 0, searched over subsets containing 0.
fn hamilton_dp(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let adj = masks(g);
    // index = mask >> 1 for masks that contain vertex 0
    let mut ends = vec![0u32; 1 << (n - 1)];
    ends[0] = 1;
    for idx in 0..ends.len() {
        let at = ends[idx];
        if at == 0 {
            continue;
        }
        let mask = (idx << 1) | 1;
        let reach = bits(at).fold(0u32, |r, v| r | adj[v]) & !(mask as u32);
        for w in bits(reach) {
            ends[(mask | (1 << w)) >> 1] |= 1 << w;
        }
    }
    let full = (1usize << n) - 1;
    let closing = ends[full >> 1] & adj[0];
    if closing == 0 {
        return None;
    }
    let end = closing.trailing_zeros() as usize;
    let lookup = |s: usize| if s & 1 == 1 { ends[s >> 1] } else { 0 };
    let mut order = walk_back(&adj, lookup, full, end, 1);
    order.insert(0, 0);
    Some(order)
}

/// Cheap, always-sound obstructions to a Hamilton cycle. Valid for any `n ≥ 3`.
pub fn quick_refutation(g: &Graph) -> Option<NonHamReason> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) < 2) {
        return Some(NonHamReason::MinDegree { vertex: v, degree: g.degree(v) });
    }
    if !g.is_connected() {
        return Some(NonHamReason::Disconnected);
    }
    if let Some(v) = (0..g.n()).find(|&v| g.neighbors(v).iter().filter(|&&w| g.degree(w as usize) == 2).count() >= 3) {
        return Some(NonHamReason::ForcedEdges { vertex: v });
    }
    if let Some((left, right)) = bipartition_sizes(g) {
        if left != right {
            return Some(NonHamReason::BipartiteImbalance { left, right });
        }
    }
    cut_vertex(g).map(|vertex| NonHamReason::CutVertex { vertex })
}

/// Part sizes if the (connected) graph is bipartite.
fn bipartition_sizes(g: &Graph) -> Option<(usize, usize)> {
    let mut side = vec![u8::MAX; g.n()];
    let mut queue = std::collections::VecDeque::new();
    let mut counts = [0usize; 2];
    for s in 0..g.n() {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        counts[0] += 1;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                let w = w as usize;
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    counts[side[w] as usize] += 1;
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return None;
                }
            }
        }
    }
    Some((counts[0], counts[1]))
}

/// Lowest-id articulation point of a connected graph, if any.
pub fn cut_vertex(g: &Graph) -> Option<usize> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    // (vertex, next neighbor index)
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut root_children = 0;
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, 0));
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(v).get(*i) {
                *i += 1;
                let w = w as usize;
                if disc[w] == usize::MAX {
                    parent[w] = v;
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, 0));
                } else if w != parent[v] {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                let p = parent[v];
                if p != usize::MAX {
                    low[p] = low[p].min(low[v]);
                    if p != root && low[v] >= disc[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    is_cut.iter().position(|&c| c)
}
