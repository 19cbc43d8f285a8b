use std::collections::VecDeque;

use serde::Serialize;

use super::expander::expansion_property;
use super::profile::ExpanderProfile;
use super::report::{CertReport, Method, PropertyCheck, Witness};
use super::sets::EnumerationCap;
use super::CheckMode;
use crate::error::{Error, Result};
use crate::graph::{low_degree_set, Graph, VertexSet};

/// `V = V1 ∪ D` with `D` the low-degree vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LPartition {
    pub core: VertexSet,
    pub low: VertexSet,
    /// Degree threshold used to build `D`.
    pub threshold: f64,
    pub beta: f64,
}

impl LPartition {
    pub fn new(low: VertexSet, threshold: f64, beta: f64) -> Self {
        LPartition { core: low.complement(), low, threshold, beta }
    }

    /// `D = D_t(G)`.
    pub fn from_low_degree(g: &Graph, t: f64, beta: f64) -> Self {
        LPartition::new(low_degree_set(g, t), t, beta)
    }

    pub fn n1(&self) -> usize {
        self.core.len()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.core.universe() != n || self.low.universe() != n {
            return Err(Error::param("partition universe does not match the graph"));
        }
        if !self.core.is_disjoint(&self.low) || self.core.len() + self.low.len() != n {
            return Err(Error::param("V1 and D must partition the vertex set"));
        }
        Ok(())
    }
}

/// `floor(2 ln n / (3 ln ln n))`, at least 1. Below `n = 3` the formula is
/// undefined and 1 is used.
pub fn short_path_bound(n: usize) -> usize {
    if n < 3 {
        return 1;
    }
    let ln = (n as f64).ln();
    ((2.0 * ln / (3.0 * ln.ln())).floor() as usize).max(1)
}

/// L1–L4 for `g` under the partition.
pub fn check_l_membership(g: &Graph, part: &LPartition, beta: f64, mode: &CheckMode) -> Result<CertReport> {
    check_l_membership_with(g, part, beta, mode, &EnumerationCap::default())
}

pub fn check_l_membership_with(
    g: &Graph,
    part: &LPartition,
    beta: f64,
    mode: &CheckMode,
    cap: &EnumerationCap,
) -> Result<CertReport> {
    part.validate(g.n())?;
    let n = g.n();
    let mut report = CertReport::new();
    let d = &part.low;

    let bound = (n as f64).powf(0.09);
    let mut l1 = PropertyCheck::new("L1", Method::Direct);
    l1.vacuous = d.is_empty();
    if d.len() as f64 > bound {
        l1 = l1.failed(Witness::LargeSet { size: d.len(), bound });
    }
    report.properties.push(l1);

    let mut l2 = PropertyCheck::new("L2", Method::Direct);
    l2.vacuous = d.is_empty();
    l2.checked = d.len() as u64;
    if let Some(v) = d.iter().find(|&v| g.degree_into(v, &part.core) < 2) {
        let into_core = g.degree_into(v, &part.core);
        l2 = l2.failed(Witness::FewNeighbors { vertex: v, into_core, within: part.core.to_vec() });
    }
    report.properties.push(l2);

    let maxlen = short_path_bound(n);
    let mut l3 = PropertyCheck::new("L3", Method::Direct);
    l3.vacuous = d.is_empty();
    l3.checked = d.len() as u64;
    l3.notes.push(format!("paths of length at most {maxlen}"));
    if let (false, Some(path)) = no_short_double_path(g, d, maxlen) {
        l3 = l3.failed(Witness::ShortPath { path, maxlen, ends_in: d.to_vec() });
    }
    report.properties.push(l3);

    let (core_graph, labels) = g.induced(&part.core);
    let mut l4 = if core_graph.n() == 0 {
        PropertyCheck::vacuous("L4", "V1 is empty")
    } else {
        let prof = ExpanderProfile::f_beta(core_graph.n(), beta)?;
        expansion_property("L4", &core_graph, &prof, mode, cap)?
    };
    if let Some(Witness::Expansion { set, within, .. }) = &mut l4.witness {
        for v in set.iter_mut() {
            *v = labels[*v];
        }
        *within = Some(labels.clone());
    }
    report.properties.push(l4);
    Ok(report)
}

/// Looks for a path of length `1..=maxlen` whose two ends lie in `d`; equal
/// ends mean a cycle of length at most `maxlen` through a vertex of `d`.
/// Returns `(true, None)` if there is none, else a shortest such walk found
/// from the lowest-id vertex of `d` that has one.
pub fn no_short_double_path(g: &Graph, d: &VertexSet, maxlen: usize) -> (bool, Option<Vec<usize>>) {
    let n = g.n();
    let maxlen = maxlen.max(1);
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut branch = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    for s in d.iter() {
        for &v in &touched {
            dist[v] = usize::MAX;
        }
        touched.clear();
        dist[s] = 0;
        touched.push(s);
        queue.clear();
        queue.push_back(s);
        let mut other: Option<usize> = None;
        while let Some(v) = queue.pop_front() {
            if dist[v] == maxlen {
                continue;
            }
            for &w in g.neighbors(v) {
                let w = w as usize;
                if dist[w] != usize::MAX {
                    continue;
                }
                dist[w] = dist[v] + 1;
                parent[w] = v;
                branch[w] = if v == s { w } else { branch[v] };
                touched.push(w);
                if d.contains(w) && other.is_none() {
                    other = Some(w);
                }
                queue.push_back(w);
            }
        }
        if let Some(t) = other {
            let mut path = tree_path(&parent, s, t);
            path.reverse();
            return (false, Some(path));
        }
        // shortest cycle through s: a non-tree edge joining two branches
        let mut best: Option<(usize, usize, usize)> = None;
        for &x in &touched {
            if x == s {
                continue;
            }
            for &y in g.neighbors(x) {
                let y = y as usize;
                if y == s || dist[y] == usize::MAX || branch[x] == branch[y] || x > y {
                    continue;
                }
                let len = dist[x] + dist[y] + 1;
                if len <= maxlen && best.is_none_or(|b| len < b.0) {
                    best = Some((len, x, y));
                }
            }
        }
        if let Some((_, x, y)) = best {
            let mut cycle = tree_path(&parent, s, x);
            cycle.reverse();
            cycle.extend(tree_path(&parent, s, y));
            return (false, Some(cycle));
        }
    }
    (true, None)
}

/// `t, parent(t), …, s`.
fn tree_path(parent: &[usize], s: usize, t: usize) -> Vec<usize> {
    let mut out = vec![t];
    let mut at = t;
    while at != s {
        at = parent[at];
        out.push(at);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::Verdict;
    use crate::graph::families::*;

    #[test]
    fn empty_d_is_fine() {
        let g = complete(6);
        assert_eq!(no_short_double_path(&g, &VertexSet::empty(6), 3), (true, None));
    }

    #[test]
    fn path_between_d_vertices() {
        let g = path(3);
        let d = VertexSet::from_vertices(3, [0, 2]);
        assert_eq!(no_short_double_path(&g, &d, 2), (false, Some(vec![0, 1, 2])));
        assert_eq!(no_short_double_path(&g, &d, 1), (true, None));
    }

    #[test]
    fn triangle_through_d_vertex() {
        let g = cycle(3);
        let d = VertexSet::from_vertices(3, [0]);
        let (ok, w) = no_short_double_path(&g, &d, 3);
        assert!(!ok);
        assert_eq!(w, Some(vec![0, 1, 2, 0]));
        assert_eq!(no_short_double_path(&g, &d, 2), (true, None));
    }

    #[test]
    fn cycle_with_empty_d() {
        let g = cycle(100);
        let part = LPartition::new(VertexSet::empty(100), 3.0, 0.03);
        let r = check_l_membership(&g, &part, 0.03, &CheckMode::Exact).unwrap();
        for l in ["L1", "L2", "L3"] {
            assert_eq!(r.verdict(l), Some(Verdict::Pass));
            assert!(r.get(l).unwrap().vacuous);
        }
        // R = 3 and every vertex needs (ln 100)^0.8 > 2 neighbors
        assert_eq!(r.verdict("L4"), Some(Verdict::Fail));
        r.recheck(&g).unwrap();
    }

    #[test]
    fn adjacent_d_vertices_fail_l3() {
        let g = cycle(30).with_edges([(0, 15)]);
        let part = LPartition::new(VertexSet::from_vertices(30, [3, 4]), 3.0, 0.01);
        let r = check_l_membership(&g, &part, 0.01, &CheckMode::Exact).unwrap();
        let w = r.get("L3").unwrap().witness.clone().unwrap();
        assert!(matches!(w, Witness::ShortPath { ref path, .. } if path == &vec![3, 4]));
        // 3 and 4 each have one core neighbor
        assert_eq!(r.verdict("L2"), Some(Verdict::Fail));
        r.recheck(&g).unwrap();
    }

    #[test]
    fn bound_values() {
        assert_eq!(short_path_bound(2000), 2);
        assert_eq!(short_path_bound(2), 1);
        assert!(short_path_bound(1_000_000) >= 3);
    }
}
