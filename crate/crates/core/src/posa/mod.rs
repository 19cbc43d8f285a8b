//! Pósa rotation–extension: paths, rotation closures, Hamilton cycle search,
//! booster pairs and greedy booster augmentation.

mod augment;
mod closure;
mod path;
mod search;

use serde::Serialize;

pub use augment::{booster_augment, AugmentConfig, AugmentOutcome, AugmentStep, AugmentTrace, StepKind};
pub use closure::{rotation_closure, RotationClosure};
pub use path::PathState;
pub use search::{find_hamilton_cycle, DecidedBy, HamSearch, SearchBudget, SearchStatus};

use crate::error::Result;
use crate::graph::{Edge, Graph};
use crate::oracle::Oracle;

/// How far the booster reading of a closure can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoosterSoundness {
    /// The oracle confirmed the seed is a longest path and the graph is
    /// connected, so every pair is a booster.
    Verified,
    /// Too large for the oracle; pairs are boosters if the seed is longest.
    Assumed,
    /// The oracle found a longer path than the seed.
    NotLongest,
    /// The seed spans a whole component of a disconnected graph: closing it
    /// into a cycle does not lengthen anything, so no pairs are reported.
    ClosedComponent,
}

#[derive(Debug, Clone, Serialize)]
pub struct PosaBoosters {
    pub pinned: usize,
    /// Pairs `{v₀, u}`, `u` a closure endpoint not adjacent to v₀, in closure order.
    pub pairs: Vec<Edge>,
    pub soundness: BoosterSoundness,
    pub closure_size: usize,
}

impl PosaBoosters {
    pub fn is_sound(&self) -> bool {
        self.soundness == BoosterSoundness::Verified
    }
}

/// Candidate boosters read off the rotation closure of a maximal path.
pub fn posa_booster_pairs(g: &Graph, p: &PathState) -> Result<PosaBoosters> {
    posa_booster_pairs_with(g, p, &Oracle::default())
}

pub fn posa_booster_pairs_with(g: &Graph, p: &PathState, oracle: &Oracle) -> Result<PosaBoosters> {
    let closure = rotation_closure(g, p)?;
    let v0 = p.start();
    let mut pairs: Vec<Edge> = closure
        .endpoints()
        .iter()
        .filter(|&&u| u != v0 && !g.has_edge(v0, u))
        .map(|&u| crate::graph::ordered(v0, u))
        .collect();
    let closed = {
        let comp = g.components();
        let size = comp.iter().filter(|&&c| c == comp[v0]).count();
        size == p.vertex_count() && size < g.n()
    };
    let soundness = if oracle.accepts(g) && oracle.longest_path_length(g)? > p.length() {
        BoosterSoundness::NotLongest
    } else if closed {
        BoosterSoundness::ClosedComponent
    } else if oracle.accepts(g) {
        BoosterSoundness::Verified
    } else {
        BoosterSoundness::Assumed
    };
    if soundness == BoosterSoundness::ClosedComponent {
        pairs.clear();
    }
    Ok(PosaBoosters { pinned: v0, pairs, soundness, closure_size: closure.len() })
}
