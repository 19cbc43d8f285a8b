//! Brute-force references shared by the integration tests. Nothing here
//! calls into the library's solvers.

#![allow(dead_code)]

use hamres::graph::gnp_sample;
use hamres::{Graph, RngSpec};

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Permutation + adjacency check of a cyclic vertex order.
pub fn is_hamilton_cycle(g: &Graph, order: &[usize]) -> bool {
    let n = g.n();
    if order.len() != n || n < 3 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|i| g.has_edge(order[i], order[(i + 1) % n]))
}

/// Plain backtracking over orders starting at 0.
pub fn naive_hamiltonian(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let a = adjacency(g);
    fn go(a: &[Vec<bool>], last: usize, used: &mut [bool], count: usize) -> bool {
        let n = a.len();
        if count == n {
            return a[last][0];
        }
        for w in 0..n {
            if !used[w] && a[last][w] {
                used[w] = true;
                if go(a, w, used, count + 1) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    let mut used = vec![false; n];
    used[0] = true;
    go(&a, 0, &mut used, 1)
}

/// Whether some simple path has more than `k` edges.
pub fn has_path_longer_than(g: &Graph, k: usize) -> bool {
    let n = g.n();
    let a = adjacency(g);
    fn go(a: &[Vec<bool>], last: usize, used: &mut [bool], edges: usize, k: usize) -> bool {
        if edges > k {
            return true;
        }
        for w in 0..a.len() {
            if !used[w] && a[last][w] {
                used[w] = true;
                let hit = go(a, w, used, edges + 1, k);
                used[w] = false;
                if hit {
                    return true;
                }
            }
        }
        false
    }
    let mut used = vec![false; n];
    (0..n).any(|s| {
        used[s] = true;
        let hit = go(&a, s, &mut used, 0, k);
        used[s] = false;
        hit
    })
}

/// ℓ(G) by exhaustive path enumeration.
pub fn naive_longest_path(g: &Graph) -> usize {
    let mut l = 0;
    while l + 1 < g.n() && has_path_longer_than(g, l) {
        l += 1;
    }
    l
}

/// Every booster straight from the definition.
pub fn naive_boosters(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let ham = naive_hamiltonian(g);
    let base = naive_longest_path(g);
    let mut out = Vec::new();
    for u in 0..n {
        for w in u + 1..n {
            if g.has_edge(u, w) {
                continue;
            }
            let plus = g.with_edges([(u, w)]);
            if ham || has_path_longer_than(&plus, base) || naive_hamiltonian(&plus) {
                out.push((u, w));
            }
        }
    }
    out
}

/// `|N(U) \ U|` by scanning every vertex.
pub fn outer_neighbors(g: &Graph, set: &[usize]) -> usize {
    (0..g.n())
        .filter(|&v| !set.contains(&v) && set.iter().any(|&u| g.has_edge(u, v)))
        .count()
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    gnp_sample(n, p, &RngSpec::new(seed)).unwrap()
}

/// The edges of `g` as a sorted list, recomputed from `has_edge`.
pub fn edge_list(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                out.push((u, v));
            }
        }
    }
    out
}
