//! Undirected simple graphs on `0..n` with a bit-matrix adjacency.
//!
//! Each row of the matrix is a bitset; sorted neighbor lists are kept
//! alongside so that both membership tests and neighbor walks are cheap.
//! The list lengths double as the degree cache.

mod caps;
pub mod families;
mod gnp;
pub mod io;
mod vertex_set;

use serde::{Deserialize, Serialize};

pub use caps::{degree_respects, low_degree_set, wbd_sequence, CapRule, CapSequence};
pub use gnp::{gnp_sample, gnp_sample_skip, threshold_p};
pub use vertex_set::VertexSet;

use crate::error::{Error, Result};
use vertex_set::word_count;

/// An unordered vertex pair, always stored with `0 < 1`.
pub type Edge = (usize, usize);

pub(crate) fn ordered(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    adj: Vec<Vec<u32>>,
    m: usize,
}

/// Vertex degrees in vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= u32::MAX as usize);
        let words = word_count(n);
        Graph { n, words, bits: vec![0; n * words], adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list, rejecting self-loops, out-of-range
    /// endpoints and repeated pairs.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::param(format!("edge {{{u}, {v}}} out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::param(format!("self-loop at {u}")));
            }
            if !g.add_edge(u, v) {
                return Err(Error::param(format!("duplicate edge {{{u}, {v}}}")));
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + (v >> 6)] & (1 << (v & 63)) != 0
    }

    /// Neighbors of `v` in ascending order.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> DegreeSequence {
        DegreeSequence(self.adj.iter().map(Vec::len).collect())
    }

    /// δ(G); zero for the graph on no vertices.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// A vertex of minimum degree, lowest id first.
    pub fn min_degree_vertex(&self) -> Option<usize> {
        (0..self.n).min_by_key(|&v| (self.degree(v), v))
    }

    /// Adjacency row of `v` as a bitset.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub(crate) fn words_per_row(&self) -> usize {
        self.words
    }

    /// Adds `{u, v}`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n && u != v, "invalid edge {{{u}, {v}}}");
        if self.has_edge(u, v) {
            return false;
        }
        self.set_bits(u, v, true);
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            let at = list.partition_point(|&x| (x as usize) < b);
            list.insert(at, b as u32);
        }
        self.m += 1;
        true
    }

    /// Appends an edge whose endpoints are known to arrive in lexicographic
    /// pair order, keeping neighbor lists sorted without a search.
    pub(crate) fn push_lex_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u < v && !self.has_edge(u, v));
        debug_assert!(self.adj[u].last().is_none_or(|&x| (x as usize) < v));
        debug_assert!(self.adj[v].last().is_none_or(|&x| (x as usize) < u));
        self.set_bits(u, v, true);
        self.adj[u].push(v as u32);
        self.adj[v].push(u as u32);
        self.m += 1;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        self.set_bits(u, v, false);
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            let at = list.binary_search(&(b as u32)).expect("adjacency list out of sync");
            list.remove(at);
        }
        self.m -= 1;
        true
    }

    fn set_bits(&mut self, u: usize, v: usize, on: bool) {
        for (a, b) in [(u, v), (v, u)] {
            let w = &mut self.bits[a * self.words + (b >> 6)];
            if on {
                *w |= 1 << (b & 63);
            } else {
                *w &= !(1 << (b & 63));
            }
        }
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let from = list.partition_point(|&x| (x as usize) <= u);
            list[from..].iter().map(move |&v| (u, v as usize))
        })
    }

    pub fn edge_vec(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    /// N(U): vertices outside `U` adjacent to some vertex of `U`.
    pub fn neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut acc = vec![0u64; self.words];
        for v in set.iter() {
            for (a, r) in acc.iter_mut().zip(self.row(v)) {
                *a |= r;
            }
        }
        for (a, s) in acc.iter_mut().zip(set.words()) {
            *a &= !s;
        }
        VertexSet::from_words(self.n, acc)
    }

    /// Number of neighbors of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        self.row(v).iter().zip(set.words()).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// e(U): edges with both endpoints in `U`.
    pub fn edges_within(&self, set: &VertexSet) -> usize {
        set.iter().map(|v| self.degree_into(v, set)).sum::<usize>() / 2
    }

    /// e(U, Z) for disjoint `U`, `Z`.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> Result<usize> {
        if !a.is_disjoint(b) {
            return Err(Error::param("edges_between needs disjoint vertex sets"));
        }
        Ok(a.iter().map(|v| self.degree_into(v, b)).sum())
    }

    /// Errors with the first edge of `self` missing from `host`.
    pub fn check_subgraph_of(&self, host: &Graph) -> Result<()> {
        if self.n != host.n {
            return Err(Error::param(format!("vertex counts differ: {} vs {}", self.n, host.n)));
        }
        match self.edges().find(|&(u, v)| !host.has_edge(u, v)) {
            Some((u, v)) => Err(Error::NotSubgraph(u, v)),
            None => Ok(()),
        }
    }

    pub fn is_subgraph_of(&self, host: &Graph) -> bool {
        self.check_subgraph_of(host).is_ok()
    }

    /// G − H: the edge-set difference. `H` must be a subgraph of `self`.
    pub fn subtract(&self, h: &Graph) -> Result<Graph> {
        h.check_subgraph_of(self)?;
        let mut out = Graph::empty(self.n);
        for (u, v) in self.edges() {
            if !h.has_edge(u, v) {
                out.push_lex_edge(u, v);
            }
        }
        Ok(out)
    }

    /// A copy with the given extra edges (already-present pairs are ignored).
    pub fn with_edges(&self, extra: impl IntoIterator<Item = Edge>) -> Graph {
        let mut out = self.clone();
        for (u, v) in extra {
            out.add_edge(u, v);
        }
        out
    }

    pub fn with_removed(&self, u: usize, v: usize) -> Graph {
        let mut out = self.clone();
        out.remove_edge(u, v);
        out
    }

    /// G[U] relabelled onto `0..|U|`, plus the map from new to old labels.
    pub fn induced(&self, set: &VertexSet) -> (Graph, Vec<usize>) {
        let keep = set.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut out = Graph::empty(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = index[w as usize];
                if j != usize::MAX && i < j {
                    out.push_lex_edge(i, j);
                }
            }
        }
        (out, keep)
    }

    /// Component label per vertex, labels numbered in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in self.neighbors(v) {
                    let w = w as usize;
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().iter().all(|&c| c == 0)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edge_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    fn check_invariants(g: &Graph) {
        let mut degree_sum = 0;
        for v in 0..g.n() {
            assert!(!g.has_edge(v, v));
            let pop: usize = g.row(v).iter().map(|w| w.count_ones() as usize).sum();
            assert_eq!(pop, g.degree(v));
            degree_sum += g.degree(v);
            for u in 0..g.n() {
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
        assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn edges_within_and_between() {
        let k4 = complete(4);
        let u = VertexSet::from_vertices(4, [0, 1, 2]);
        assert_eq!(k4.edges_within(&u), 3);
        let a = VertexSet::from_vertices(4, [0, 1]);
        let b = VertexSet::from_vertices(4, [2, 3]);
        assert_eq!(k4.edges_between(&a, &b).unwrap(), 4);

        let c6 = cycle(6);
        let even = VertexSet::from_vertices(6, [0, 2, 4]);
        let odd = even.complement();
        assert_eq!(c6.edges_between(&even, &odd).unwrap(), 6);
        assert_eq!(c6.edges_within(&even), 0);
        assert!(c6.edges_between(&even, &even).is_err());
    }

    #[test]
    fn subtract_identities() {
        let c5 = cycle(5);
        assert_eq!(c5.subtract(&Graph::empty(5)).unwrap(), c5);
        assert_eq!(c5.subtract(&c5).unwrap().edge_count(), 0);
        let not_sub = Graph::from_edges(5, [(0, 2)]).unwrap();
        assert!(matches!(c5.subtract(&not_sub), Err(Error::NotSubgraph(0, 2))));
    }

    #[test]
    fn mutation_keeps_invariants() {
        let mut g = Graph::empty(70);
        for (u, v) in [(0, 69), (3, 64), (64, 69), (1, 2)] {
            assert!(g.add_edge(u, v));
        }
        assert!(!g.add_edge(69, 0));
        check_invariants(&g);
        assert!(g.remove_edge(69, 0));
        check_invariants(&g);
        assert_eq!(g.edge_vec(), vec![(1, 2), (3, 64), (64, 69)]);
        assert_eq!(g.neighbors(64), &[3, 69]);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn induced_relabels() {
        let g = cycle(6);
        let keep = VertexSet::from_vertices(6, [0, 1, 2, 4]);
        let (h, map) = g.induced(&keep);
        assert_eq!(map, vec![0, 1, 2, 4]);
        assert_eq!(h.edge_vec(), vec![(0, 1), (1, 2)]);
        check_invariants(&h);
    }

    #[test]
    fn neighborhood_excludes_set() {
        let g = star(3);
        let leaves = VertexSet::from_vertices(4, [1, 2]);
        assert_eq!(g.neighborhood(&leaves).to_vec(), vec![0]);
        let center = VertexSet::from_vertices(4, [0]);
        assert_eq!(g.neighborhood(&center).to_vec(), vec![1, 2, 3]);
    }
}
