use serde::{Deserialize, Serialize};

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    /// No violation among the sets examined; not a proof.
    SampledPass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Method {
    /// Polynomial-time check of the whole property.
    Direct,
    /// Every set in range enumerated.
    Exact,
    /// Random and greedy sets; `trials` random sets per size.
    Sampled { trials: usize },
}

/// A concrete violation. [`Witness::recheck`] verifies it from scratch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `|N(U)| < required`, neighborhoods taken inside `within` when given.
    Expansion {
        set: Vec<usize>,
        neighborhood: usize,
        required: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        within: Option<Vec<usize>>,
    },
    /// `d(v) < required`.
    MinDegree { vertex: usize, degree: usize, required: f64 },
    /// `e(U) > bound`.
    DenseSet { set: Vec<usize>, edges: usize, bound: f64 },
    /// `e(U, Z) < threshold` for disjoint `U`, `Z`.
    SparsePair { u: Vec<usize>, z: Vec<usize>, edges: usize, threshold: f64 },
    /// `|D| > bound`.
    LargeSet { size: usize, bound: f64 },
    /// `e(G) > bound`.
    EdgeCount { edges: usize, bound: f64 },
    /// `d(v, V1) < 2` for `v` in `D`.
    FewNeighbors { vertex: usize, into_core: usize, within: Vec<usize> },
    /// A path with both ends in `D` (equal ends: a cycle) of length ≤ `maxlen`.
    ShortPath { path: Vec<usize>, maxlen: usize, ends_in: Vec<usize> },
}

impl Witness {
    /// Re-verifies the violation in `g` using plain adjacency queries only.
    pub fn recheck(&self, g: &Graph) -> Result<(), String> {
        let n = g.n();
        let in_range = |vs: &[usize]| vs.iter().all(|&v| v < n);
        let distinct = |vs: &[usize]| {
            let mut s = vs.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        };
        let edges_in = |vs: &[usize]| {
            let mut e = 0;
            for (i, &a) in vs.iter().enumerate() {
                for &b in &vs[i + 1..] {
                    e += g.has_edge(a, b) as usize;
                }
            }
            e
        };
        let fail = |msg: &str| Err(format!("witness does not re-check: {msg}"));
        match self {
            Witness::Expansion { set, required, within, .. } => {
                if set.is_empty() || !in_range(set) || !distinct(set) {
                    return fail("malformed set");
                }
                let universe: Vec<usize> = within.clone().unwrap_or_else(|| (0..n).collect());
                if !set.iter().all(|v| universe.contains(v)) {
                    return fail("set leaves its universe");
                }
                let nb = universe
                    .iter()
                    .filter(|w| !set.contains(w) && set.iter().any(|&u| g.has_edge(u, **w)))
                    .count();
                if (nb as f64) < *required {
                    Ok(())
                } else {
                    fail("neighborhood is large enough")
                }
            }
            Witness::MinDegree { vertex, required, .. } => {
                let deg = (0..n).filter(|&w| g.has_edge(*vertex, w)).count();
                if (deg as f64) < *required {
                    Ok(())
                } else {
                    fail("degree is large enough")
                }
            }
            Witness::DenseSet { set, bound, .. } => {
                if !in_range(set) || !distinct(set) {
                    return fail("malformed set");
                }
                if edges_in(set) as f64 > *bound {
                    Ok(())
                } else {
                    fail("set is sparse enough")
                }
            }
            Witness::SparsePair { u, z, threshold, .. } => {
                if !in_range(u) || !in_range(z) || !distinct(&[u.as_slice(), z.as_slice()].concat()) {
                    return fail("sets overlap or are malformed");
                }
                let e: usize = u.iter().map(|&a| z.iter().filter(|&&b| g.has_edge(a, b)).count()).sum();
                if (e as f64) < *threshold {
                    Ok(())
                } else {
                    fail("pair has enough edges")
                }
            }
            Witness::LargeSet { size, bound } => {
                if *size as f64 > *bound {
                    Ok(())
                } else {
                    fail("set is small enough")
                }
            }
            Witness::EdgeCount { bound, .. } => {
                let edges = (0..n).map(|u| (u + 1..n).filter(|&v| g.has_edge(u, v)).count()).sum::<usize>();
                if edges as f64 > *bound {
                    Ok(())
                } else {
                    fail("edge count within bound")
                }
            }
            Witness::FewNeighbors { vertex, within, .. } => {
                let into = within.iter().filter(|&&w| g.has_edge(*vertex, w)).count();
                if into < 2 && !within.contains(vertex) {
                    Ok(())
                } else {
                    fail("vertex has two core neighbors")
                }
            }
            Witness::ShortPath { path, maxlen, ends_in } => {
                let len = path.len().saturating_sub(1);
                if len == 0 || len > *maxlen || !in_range(path) {
                    return fail("bad length");
                }
                let (a, b) = (path[0], path[len]);
                if !ends_in.contains(&a) || !ends_in.contains(&b) {
                    return fail("endpoint outside D");
                }
                let inner = if a == b { &path[..len] } else { &path[..] };
                if !distinct(inner) || (a == b && len < 3) {
                    return fail("not a simple path or cycle");
                }
                if path.windows(2).all(|w| g.has_edge(w[0], w[1])) {
                    Ok(())
                } else {
                    fail("missing edge")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub property: String,
    pub verdict: Verdict,
    #[serde(flatten)]
    pub method: Method,
    /// Sets (or vertices) examined.
    pub checked: u64,
    /// The property holds because its range is empty.
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl PropertyCheck {
    pub(crate) fn new(property: &str, method: Method) -> Self {
        PropertyCheck {
            property: property.to_string(),
            verdict: match method {
                Method::Sampled { .. } => Verdict::SampledPass,
                _ => Verdict::Pass,
            },
            method,
            checked: 0,
            vacuous: false,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub(crate) fn vacuous(property: &str, note: impl Into<String>) -> Self {
        let mut c = PropertyCheck::new(property, Method::Direct);
        c.vacuous = true;
        c.notes.push(note.into());
        c
    }

    pub(crate) fn failed(mut self, witness: Witness) -> Self {
        self.verdict = Verdict::Fail;
        self.witness = Some(witness);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertReport {
    pub properties: Vec<PropertyCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CertReport {
    pub(crate) fn new() -> Self {
        CertReport { properties: Vec::new(), notes: Vec::new() }
    }

    /// No property failed (sampled passes count as passes).
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyCheck::passed)
    }

    /// Every property passed exhaustively or directly.
    pub fn passed_exactly(&self) -> bool {
        self.properties.iter().all(|p| p.verdict == Verdict::Pass)
    }

    pub fn get(&self, property: &str) -> Option<&PropertyCheck> {
        self.properties.iter().find(|p| p.property == property)
    }

    pub fn verdict(&self, property: &str) -> Option<Verdict> {
        self.get(property).map(|p| p.verdict)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyCheck> {
        self.properties.iter().filter(|p| !p.passed())
    }

    /// Re-checks every failing witness against `g`.
    pub fn recheck(&self, g: &Graph) -> Result<(), String> {
        for p in self.failures() {
            match &p.witness {
                Some(w) => w.recheck(g).map_err(|e| format!("{}: {e}", p.property))?,
                None => return Err(format!("{}: failure without a witness", p.property)),
            }
        }
        Ok(())
    }
}
