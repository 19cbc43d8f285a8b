//! Vertex-set enumeration and the sampling families used by the checks.

use rand::seq::index::sample;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::rng::Rng;

/// When exhaustive enumeration is allowed: any size bound for small graphs,
/// otherwise only small sets and a bounded total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationCap {
    pub full_up_to_n: usize,
    pub max_set_size: usize,
    pub max_sets: u128,
}

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap { full_up_to_n: 20, max_set_size: 6, max_sets: 10_000_000 }
    }
}

impl EnumerationCap {
    pub fn allows(&self, n: usize, max_size: usize) -> bool {
        n <= self.full_up_to_n || (max_size <= self.max_set_size && subsets_up_to(n, max_size) <= self.max_sets)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Number of subsets with 1 to `r` elements.
pub(crate) fn subsets_up_to(n: usize, r: usize) -> u128 {
    (1..=r.min(n)).fold(0u128, |acc, t| acc.saturating_add(binomial(n, t)))
}

#[inline]
fn popcount_and_not(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & !y).count_ones() as usize).sum()
}

#[inline]
fn popcount_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// Depth-first enumeration of all sets of at most `r` vertices in
/// lexicographic order, carrying the set bits and the union of their rows.
struct SubsetWalk<'g, F> {
    g: &'g Graph,
    r: usize,
    w: usize,
    set: Vec<u64>,
    union: Vec<u64>,
    stack: Vec<usize>,
    checked: u64,
    /// Receives the set, its bits, the union of rows and the vertex just
    /// added; returns true to stop.
    visit: F,
}

impl<F: FnMut(&[usize], &[u64], &[u64], usize) -> bool> SubsetWalk<'_, F> {
    fn go(&mut self, start: usize) -> bool {
        let d = self.stack.len();
        let w = self.w;
        for v in start..self.g.n() {
            let row = self.g.row(v);
            for k in 0..w {
                self.union[(d + 1) * w + k] = self.union[d * w + k] | row[k];
                self.set[(d + 1) * w + k] = self.set[d * w + k];
            }
            self.set[(d + 1) * w + v / 64] |= 1 << (v % 64);
            self.stack.push(v);
            self.checked += 1;
            let lo = (d + 1) * w;
            if (self.visit)(&self.stack, &self.set[lo..lo + w], &self.union[lo..lo + w], v) {
                return true;
            }
            if d + 1 < self.r && self.go(v + 1) {
                return true;
            }
            self.stack.pop();
        }
        false
    }
}

fn walk<F: FnMut(&[usize], &[u64], &[u64], usize) -> bool>(g: &Graph, r: usize, visit: F) -> (Option<Vec<usize>>, u64) {
    let w = g.words_per_row();
    let mut walk = SubsetWalk {
        g,
        r,
        w,
        set: vec![0; (r + 1) * w],
        union: vec![0; (r + 1) * w],
        stack: Vec::with_capacity(r),
        checked: 0,
        visit,
    };
    let found = r > 0 && walk.go(0);
    (found.then(|| walk.stack.clone()), walk.checked)
}

/// Lexicographically first set `U`, `1 ≤ |U| ≤ r`, with `|N(U)| < required(|U|)`.
pub(crate) fn first_non_expanding(g: &Graph, r: usize, required: &[f64]) -> (Option<(Vec<usize>, usize)>, u64) {
    let mut nb = 0;
    let (found, checked) = walk(g, r, |stack, set, union, _| {
        nb = popcount_and_not(union, set);
        (nb as f64) < required[stack.len()]
    });
    (found.map(|s| (s, nb)), checked)
}

/// Lexicographically first set `U`, `1 ≤ |U| ≤ r`, with `e(U) > bound(|U|)`.
pub(crate) fn first_dense(g: &Graph, r: usize, bound: &[f64]) -> (Option<(Vec<usize>, usize)>, u64) {
    let mut edges = vec![0usize; r + 1];
    let (found, checked) = walk(g, r, |stack, set, _, v| {
        let d = stack.len();
        edges[d] = edges[d - 1] + popcount_and(g.row(v), set);
        edges[d] as f64 > bound[d]
    });
    (found.map(|s| (s.clone(), edges[s.len()])), checked)
}

/// Calls `visit` on every `k`-subset of `0..n` in lexicographic order until it returns true.
pub(crate) fn for_each_k_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> u64 {
    if k == 0 || k > n {
        return 0;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut count = 0;
    loop {
        count += 1;
        if visit(&idx) {
            return count;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else { return count };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Set sizes probed by sampling: every size up to 32, then roughly
/// geometric steps, always including `max`.
pub(crate) fn sample_sizes(max: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=max.min(32)).collect();
    let mut t = 32.0f64;
    while (t as usize) < max {
        t *= 1.25;
        out.push((t as usize).min(max));
    }
    out.dedup();
    out
}

pub(crate) fn random_set(n: usize, t: usize, rng: &mut Rng) -> Vec<usize> {
    let mut v = sample(rng, n, t).into_vec();
    v.sort_unstable();
    v
}

pub(crate) fn random_vertex(n: usize, rng: &mut Rng) -> usize {
    rng.random_range(0..n)
}

/// Vertices by ascending `(degree, id)`.
pub(crate) fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    order
}

/// Breadth-first order from `start`, truncated to `max` vertices.
pub(crate) fn ball_order(g: &Graph, start: usize, max: usize) -> Vec<usize> {
    let mut seen = VertexSet::empty(g.n());
    let mut order = vec![start];
    seen.insert(start);
    let mut head = 0;
    while head < order.len() && order.len() < max {
        let v = order[head];
        head += 1;
        for &w in g.neighbors(v) {
            if order.len() >= max {
                break;
            }
            if seen.insert(w as usize) {
                order.push(w as usize);
            }
        }
    }
    order
}

/// Grows a set from `start`, each time adding the boundary vertex that brings
/// the fewest new neighbors (ties to the lower id).
pub(crate) fn compact_order(g: &Graph, start: usize, max: usize) -> Vec<usize> {
    let n = g.n();
    let mut inside = VertexSet::empty(n);
    let mut covered = VertexSet::empty(n);
    let mut order = Vec::new();
    let mut next = Some(start);
    while let Some(v) = next {
        order.push(v);
        inside.insert(v);
        covered.insert(v);
        for &w in g.neighbors(v) {
            covered.insert(w as usize);
        }
        if order.len() >= max {
            break;
        }
        next = covered
            .iter()
            .filter(|&w| !inside.contains(w))
            .min_by_key(|&w| (popcount_and_not(g.row(w), covered.words()), w));
    }
    order
}

/// Grows a set from `start`, each time adding the vertex with the most
/// neighbors already inside (ties to the lower id).
pub(crate) fn dense_order(g: &Graph, start: usize, max: usize) -> Vec<usize> {
    let n = g.n();
    let mut into = vec![0usize; n];
    let mut inside = vec![false; n];
    let mut frontier: Vec<usize> = Vec::new();
    let mut order = Vec::new();
    let mut next = Some(start);
    while let Some(v) = next {
        order.push(v);
        inside[v] = true;
        for &w in g.neighbors(v) {
            let w = w as usize;
            if into[w] == 0 && !inside[w] {
                frontier.push(w);
            }
            into[w] += 1;
        }
        if order.len() >= max {
            break;
        }
        frontier.retain(|&w| !inside[w]);
        next = frontier.iter().copied().max_by_key(|&w| (into[w], std::cmp::Reverse(w)));
    }
    order
}

/// Tracks `|N(U)|` and `e(U)` as vertices are appended to `U`.
pub(crate) struct Prefix<'g> {
    g: &'g Graph,
    set: Vec<u64>,
    union: Vec<u64>,
    pub edges: usize,
    pub len: usize,
}

impl<'g> Prefix<'g> {
    pub(crate) fn new(g: &'g Graph) -> Self {
        let w = g.words_per_row();
        Prefix { g, set: vec![0; w], union: vec![0; w], edges: 0, len: 0 }
    }

    pub(crate) fn push(&mut self, v: usize) {
        let row = self.g.row(v);
        self.edges += popcount_and(row, &self.set);
        self.set[v / 64] |= 1 << (v % 64);
        for (u, r) in self.union.iter_mut().zip(row) {
            *u |= r;
        }
        self.len += 1;
    }

    pub(crate) fn neighborhood(&self) -> usize {
        popcount_and_not(&self.union, &self.set)
    }
}

/// `|N(U)|` for an arbitrary vertex list.
pub(crate) fn neighborhood_size(g: &Graph, set: &[usize]) -> usize {
    let mut p = Prefix::new(g);
    set.iter().for_each(|&v| p.push(v));
    p.neighborhood()
}

pub(crate) fn edges_within(g: &Graph, set: &[usize]) -> usize {
    let mut p = Prefix::new(g);
    set.iter().for_each(|&v| p.push(v));
    p.edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn counts() {
        assert_eq!(binomial(20, 10), 184_756);
        assert_eq!(subsets_up_to(20, 20), (1 << 20) - 1);
        assert_eq!(for_each_k_subset(6, 3, |_| false), 20);
    }

    #[test]
    fn walk_visits_everything_in_lex_order() {
        let g = complete(5);
        let mut seen = Vec::new();
        let (found, checked) = walk(&g, 2, |s, _, _, _| {
            seen.push(s.to_vec());
            false
        });
        assert!(found.is_none());
        assert_eq!(checked, 15);
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
    }

    #[test]
    fn dense_and_compact_orders() {
        let g = disjoint_union(&[complete(4), cycle(6)]);
        assert_eq!(dense_order(&g, 0, 10), vec![0, 1, 2, 3]);
        let c = compact_order(&g, 4, 3);
        assert_eq!(c, vec![4, 5, 6]);
        assert_eq!(edges_within(&g, &[0, 1, 2, 3]), 6);
        assert_eq!(neighborhood_size(&g, &[4, 5]), 2);
    }

    #[test]
    fn sizes() {
        assert_eq!(sample_sizes(3), vec![1, 2, 3]);
        let s = sample_sizes(500);
        assert_eq!(*s.last().unwrap(), 500);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
    }
}
