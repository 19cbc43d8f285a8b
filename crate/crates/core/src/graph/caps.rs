use serde::{Deserialize, Serialize};

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

/// Which rule produced a cap entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CapRule {
    /// `max(d_v − 2, 0)` for a vertex of degree below the threshold.
    LowDegree,
    /// `floor(d_v · (1/3 − ε))` for every other vertex.
    Fraction,
    /// Supplied directly by the caller.
    Explicit,
}

/// Per-vertex removal budgets: an adversary may delete at most `caps[v]`
/// edges at `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapSequence {
    caps: Vec<usize>,
    rules: Vec<CapRule>,
}

impl CapSequence {
    pub fn from_vec(caps: Vec<usize>) -> Self {
        let rules = vec![CapRule::Explicit; caps.len()];
        CapSequence { caps, rules }
    }

    pub fn uniform(n: usize, cap: usize) -> Self {
        CapSequence::from_vec(vec![cap; n])
    }

    pub fn len(&self) -> usize {
        self.caps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.caps.is_empty()
    }

    pub fn get(&self, v: usize) -> usize {
        self.caps[v]
    }

    pub fn rule(&self, v: usize) -> CapRule {
        self.rules[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.caps
    }

    /// Pointwise `self ≤ other`.
    pub fn le(&self, other: &CapSequence) -> bool {
        self.caps.len() == other.caps.len() && self.caps.iter().zip(&other.caps).all(|(a, b)| a <= b)
    }

    /// Checks that no cap exceeds the vertex degree in `g`.
    pub fn validate_for(&self, g: &Graph) -> Result<()> {
        if self.caps.len() != g.n() {
            return Err(Error::param(format!(
                "cap sequence has {} entries for a graph on {} vertices",
                self.caps.len(),
                g.n()
            )));
        }
        match (0..g.n()).find(|&v| self.caps[v] > g.degree(v)) {
            Some(v) => Err(Error::param(format!(
                "cap {} at vertex {v} exceeds its degree {}",
                self.caps[v],
                g.degree(v)
            ))),
            None => Ok(()),
        }
    }

    /// `d_H(v) ≤ caps[v]` for every vertex.
    pub fn admits(&self, h: &Graph) -> bool {
        h.n() == self.caps.len() && (0..h.n()).all(|v| h.degree(v) <= self.caps[v])
    }
}

/// D_t(G) = { v : d(v) < t }.
pub fn low_degree_set(g: &Graph, t: f64) -> VertexSet {
    VertexSet::from_vertices(g.n(), (0..g.n()).filter(|&v| (g.degree(v) as f64) < t))
}

/// The cap sequence w̃d(t, ε): `d_v − 2` (clamped at zero) on D_t(G) and
/// `floor(d_v (1/3 − ε))` elsewhere.
pub fn wbd_sequence(g: &Graph, t: f64, eps: f64) -> Result<CapSequence> {
    if !(eps > 0.0 && eps < 1.0 / 3.0) {
        return Err(Error::param(format!("eps must lie in (0, 1/3), got {eps}")));
    }
    if !(t >= 0.0) {
        return Err(Error::param(format!("threshold t must be non-negative, got {t}")));
    }
    let frac = 1.0 / 3.0 - eps;
    let (caps, rules) = (0..g.n())
        .map(|v| {
            let d = g.degree(v);
            if (d as f64) < t {
                (d.saturating_sub(2), CapRule::LowDegree)
            } else {
                ((d as f64 * frac).floor() as usize, CapRule::Fraction)
            }
        })
        .unzip();
    Ok(CapSequence { caps, rules })
}

/// Whether `d_H ≤ caps` pointwise.
pub fn degree_respects(h: &Graph, caps: &CapSequence) -> bool {
    caps.admits(h)
}
