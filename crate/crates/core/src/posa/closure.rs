use serde::Serialize;

use super::path::PathState;
use crate::error::{Error, Result};
use crate::graph::Graph;

const UNSEEN: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Node {
    endpoint: usize,
    parent: u32,
    /// Vertex whose edge to the parent's endpoint was rotated along.
    pivot: usize,
}

/// Breadth-first rotation explorer with the first vertex pinned.
///
/// Nodes are keyed by endpoint: an endpoint reached twice is explored once.
/// Paths are not stored; a node's path is rebuilt by replaying the pivots
/// from the seed, and the most recent parent path is cached.
pub(crate) struct Explorer {
    seed: PathState,
    nodes: Vec<Node>,
    node_of: Vec<u32>,
    base: PathState,
    base_node: Option<usize>,
    work: PathState,
    pub(crate) rotations: u64,
}

impl Explorer {
    pub(crate) fn new(n: usize) -> Self {
        let blank = PathState::single(n.max(1), 0);
        Explorer {
            seed: blank.clone(),
            nodes: Vec::new(),
            node_of: vec![UNSEEN; n],
            base: blank.clone(),
            base_node: None,
            work: blank,
            rotations: 0,
        }
    }

    fn reset(&mut self, seed: &PathState) {
        for node in &self.nodes {
            self.node_of[node.endpoint] = UNSEEN;
        }
        self.nodes.clear();
        self.seed.copy_from(seed);
        self.base_node = None;
        self.nodes.push(Node { endpoint: seed.end(), parent: UNSEEN, pivot: usize::MAX });
        self.node_of[seed.end()] = 0;
    }

    /// Explores from `seed` until `accept` holds for a newly reached endpoint
    /// (the seed endpoint included) or the closure is exhausted. At most
    /// `max_nodes` endpoints are collected.
    pub(crate) fn explore(
        &mut self,
        g: &Graph,
        seed: &PathState,
        max_nodes: Option<usize>,
        mut accept: impl FnMut(usize) -> bool,
    ) -> Option<usize> {
        self.reset(seed);
        if accept(seed.end()) {
            return Some(0);
        }
        let cap = max_nodes.unwrap_or(usize::MAX);
        let mut head = 0;
        while head < self.nodes.len() {
            self.materialize(head);
            let path = &self.work;
            let l = path.length();
            let x = path.end();
            for &y in g.neighbors(x) {
                let Some(i) = path.position(y as usize) else { continue };
                if i + 1 >= l {
                    continue;
                }
                self.rotations += 1;
                let u = path.vertices()[i + 1];
                if self.node_of[u] != UNSEEN {
                    continue;
                }
                self.node_of[u] = self.nodes.len() as u32;
                self.nodes.push(Node { endpoint: u, parent: head as u32, pivot: y as usize });
                if accept(u) {
                    return Some(self.nodes.len() - 1);
                }
                if self.nodes.len() >= cap {
                    return None;
                }
            }
            head += 1;
        }
        None
    }

    fn replay_into(&self, k: usize, out: &mut PathState) {
        let mut chain = Vec::new();
        let mut at = k;
        while at != 0 {
            chain.push(self.nodes[at].pivot);
            at = self.nodes[at].parent as usize;
        }
        out.copy_from(&self.seed);
        for &pivot in chain.iter().rev() {
            let i = out.position(pivot).expect("pivot on path");
            out.rotate_unchecked(i);
        }
    }

    /// Leaves the path of node `k` in `self.work`.
    fn materialize(&mut self, k: usize) {
        if k == 0 {
            self.work.copy_from(&self.seed);
            return;
        }
        let parent = self.nodes[k].parent as usize;
        if self.base_node != Some(parent) {
            let mut base = std::mem::replace(&mut self.base, PathState::single(1, 0));
            self.replay_into(parent, &mut base);
            self.base = base;
            self.base_node = Some(parent);
        }
        self.work.copy_from(&self.base);
        let i = self.work.position(self.nodes[k].pivot).expect("pivot on path");
        self.work.rotate_unchecked(i);
    }

    /// The path ending at node `k`, moved into `out`.
    pub(crate) fn take_path(&mut self, k: usize, out: &mut PathState) {
        self.materialize(k);
        std::mem::swap(out, &mut self.work);
    }

    fn endpoints(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.iter().map(|n| n.endpoint)
    }
}

/// All endpoints reachable from a seed path by elementary rotations that keep
/// its first vertex fixed.
#[derive(Clone, Serialize)]
pub struct RotationClosure {
    pinned: usize,
    #[serde(skip)]
    seed: PathState,
    endpoints: Vec<usize>,
    #[serde(skip)]
    parents: Vec<(u32, usize)>,
    closing: Vec<usize>,
    rotations: u64,
}

impl RotationClosure {
    /// v₀, the fixed endpoint.
    pub fn pinned(&self) -> usize {
        self.pinned
    }

    pub fn seed(&self) -> &PathState {
        &self.seed
    }

    /// Endpoints in breadth-first discovery order; the seed endpoint comes first.
    pub fn endpoints(&self) -> &[usize] {
        &self.endpoints
    }

    pub fn len(&self) -> usize {
        self.endpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endpoints.is_empty()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.endpoints.contains(&u)
    }

    /// Endpoints adjacent to v₀: each closes a cycle on the path's vertex set.
    pub fn closing_endpoints(&self) -> &[usize] {
        &self.closing
    }

    /// Number of rotations examined during exploration.
    pub fn rotations(&self) -> u64 {
        self.rotations
    }

    /// Pivot vertices, in order, that rotate the seed into a path ending at `u`.
    pub fn rotation_sequence(&self, u: usize) -> Option<Vec<usize>> {
        let mut at = self.endpoints.iter().position(|&e| e == u)?;
        let mut pivots = Vec::new();
        while at != 0 {
            let (parent, pivot) = self.parents[at];
            pivots.push(pivot);
            at = parent as usize;
        }
        pivots.reverse();
        Some(pivots)
    }

    /// A path from v₀ to `u` on the seed's vertex set, rebuilt by replaying
    /// validated rotations in `g`.
    pub fn path_to(&self, g: &Graph, u: usize) -> Option<PathState> {
        let pivots = self.rotation_sequence(u)?;
        let mut path = self.seed.clone();
        for pivot in pivots {
            let i = path.position(pivot)?;
            path.rotate(g, i).ok()?;
        }
        Some(path)
    }
}

impl std::fmt::Debug for RotationClosure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RotationClosure")
            .field("pinned", &self.pinned)
            .field("endpoints", &self.endpoints)
            .field("closing", &self.closing)
            .field("rotations", &self.rotations)
            .finish()
    }
}

/// Full rotation closure of a maximal path with `p.start()` pinned.
pub fn rotation_closure(g: &Graph, p: &PathState) -> Result<RotationClosure> {
    p.validate(g)?;
    if !p.is_maximal(g) {
        return Err(Error::Precondition("rotation closure needs a maximal path".into()));
    }
    Ok(closure_unchecked(g, p, None))
}

pub(crate) fn closure_unchecked(g: &Graph, p: &PathState, max_nodes: Option<usize>) -> RotationClosure {
    let mut ex = Explorer::new(g.n());
    ex.explore(g, p, max_nodes, |_| false);
    let v0 = p.start();
    let endpoints: Vec<usize> = ex.endpoints().collect();
    let closing = endpoints.iter().copied().filter(|&u| u != v0 && g.has_edge(v0, u)).collect();
    RotationClosure {
        pinned: v0,
        seed: p.clone(),
        parents: ex.nodes.iter().map(|n| (n.parent, n.pivot)).collect(),
        endpoints,
        closing,
        rotations: ex.rotations,
    }
}
