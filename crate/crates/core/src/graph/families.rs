//! Small named graphs used by tests, examples and the CLI.

use super::Graph;

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.push_lex_edge(u, v);
        }
    }
    g
}

/// The cycle 0–1–…–(n−1)–0.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut g = path(n);
    g.add_edge(0, n - 1);
    g
}

/// The path 0–1–…–(n−1).
pub fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.push_lex_edge(v - 1, v);
    }
    g
}

/// K_{1,leaves} with center 0.
pub fn star(leaves: usize) -> Graph {
    let mut g = Graph::empty(leaves + 1);
    for v in 1..=leaves {
        g.push_lex_edge(0, v);
    }
    g
}

/// K_{a,b} with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::empty(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.push_lex_edge(u, v);
        }
    }
    g
}

/// Outer 5-cycle 0..5, inner pentagram 5..10, spokes i–(i+5).
pub fn petersen() -> Graph {
    let mut g = Graph::empty(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
        g.add_edge(i, i + 5);
    }
    g
}

/// Vertex-disjoint union, relabelling each part consecutively.
pub fn disjoint_union(parts: &[Graph]) -> Graph {
    let n = parts.iter().map(Graph::n).sum();
    let mut g = Graph::empty(n);
    let mut offset = 0;
    for part in parts {
        for (u, v) in part.edges() {
            g.push_lex_edge(u + offset, v + offset);
        }
        offset += part.n();
    }
    g
}
