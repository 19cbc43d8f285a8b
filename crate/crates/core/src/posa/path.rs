use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

const OFF: u32 = u32::MAX;

/// A simple path `(v₀, …, v_ℓ)` in some working graph, with O(1) position
/// lookup. When `pinned`, rotations keep `v₀` in place and move `v_ℓ`.
#[derive(Clone, PartialEq, Eq)]
pub struct PathState {
    vertices: Vec<usize>,
    pos: Vec<u32>,
    pinned: bool,
}

impl PathState {
    /// Validates that `vertices` is a simple path in `g`.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        let mut pos = vec![OFF; g.n()];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= g.n() {
                return Err(Error::param(format!("vertex {v} out of range")));
            }
            if pos[v] != OFF {
                return Err(Error::param(format!("vertex {v} repeated on path")));
            }
            pos[v] = i as u32;
        }
        if let Some(w) = vertices.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            return Err(Error::param(format!("path uses non-edge {{{}, {}}}", w[0], w[1])));
        }
        if vertices.is_empty() {
            return Err(Error::param("a path needs at least one vertex"));
        }
        Ok(PathState { vertices, pos, pinned: true })
    }

    pub(crate) fn single(n: usize, v: usize) -> Self {
        let mut pos = vec![OFF; n];
        pos[v] = 0;
        PathState { vertices: vec![v], pos, pinned: true }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// ℓ, the number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("non-empty path")
    }

    pub fn is_pinned(&self) -> bool {
        self.pinned
    }

    pub fn set_pinned(&mut self, pinned: bool) {
        self.pinned = pinned;
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.pos[v] != OFF
    }

    #[inline]
    pub fn position(&self, v: usize) -> Option<usize> {
        match self.pos[v] {
            OFF => None,
            i => Some(i as usize),
        }
    }

    /// Neither endpoint has a neighbor off the path.
    pub fn is_maximal(&self, g: &Graph) -> bool {
        [self.start(), self.end()]
            .iter()
            .all(|&x| g.neighbors(x).iter().all(|&w| self.contains(w as usize)))
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        PathState::new(g, self.vertices.clone()).map(|_| ())
    }

    /// The elementary rotation along `{v_i, v_ℓ}`:
    /// `(v₀,…,v_i, v_ℓ, v_{ℓ−1},…,v_{i+1})`.
    pub fn elementary_rotation(&self, g: &Graph, i: usize) -> Result<PathState> {
        let mut out = self.clone();
        out.rotate(g, i)?;
        Ok(out)
    }

    /// In-place [`elementary_rotation`](Self::elementary_rotation).
    pub fn rotate(&mut self, g: &Graph, i: usize) -> Result<()> {
        let l = self.length();
        if l < 2 || i > l - 2 {
            return Err(Error::Rotation(format!("pivot index {i} not in 0..={} for a path of length {l}", l.saturating_sub(2).max(0))));
        }
        if !g.has_edge(self.vertices[i], self.end()) {
            return Err(Error::Rotation(format!(
                "pivot {} is not adjacent to endpoint {}",
                self.vertices[i],
                self.end()
            )));
        }
        self.rotate_unchecked(i);
        Ok(())
    }

    #[inline]
    pub(crate) fn rotate_unchecked(&mut self, i: usize) {
        self.vertices[i + 1..].reverse();
        for (k, &v) in self.vertices.iter().enumerate().skip(i + 1) {
            self.pos[v] = k as u32;
        }
    }

    pub(crate) fn push(&mut self, v: usize) {
        debug_assert!(!self.contains(v));
        self.pos[v] = self.vertices.len() as u32;
        self.vertices.push(v);
    }

    /// Swaps the roles of the two endpoints.
    pub fn reverse(&mut self) {
        self.vertices.reverse();
        for (k, &v) in self.vertices.iter().enumerate() {
            self.pos[v] = k as u32;
        }
    }

    /// Replaces the path by `order` (a permutation of a vertex subset).
    pub(crate) fn reset_to(&mut self, order: Vec<usize>) {
        for &v in &self.vertices {
            self.pos[v] = OFF;
        }
        self.vertices = order;
        for (k, &v) in self.vertices.iter().enumerate() {
            self.pos[v] = k as u32;
        }
    }

    pub(crate) fn copy_from(&mut self, other: &PathState) {
        self.vertices.clone_from(&other.vertices);
        self.pos.clone_from(&other.pos);
        self.pinned = other.pinned;
    }
}

impl std::fmt::Debug for PathState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("PathState").field(&self.vertices).finish()
    }
}

impl Serialize for PathState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    // a=0, b=1, c=2, d=3
    #[test]
    fn rotation_examples() {
        let g = path(4).with_edges([(1, 3)]);
        let p = PathState::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(p.elementary_rotation(&g, 1).unwrap().vertices(), &[0, 1, 3, 2]);

        let g = path(4).with_edges([(0, 3)]);
        let p = PathState::new(&g, vec![0, 1, 2, 3]).unwrap();
        let q = p.elementary_rotation(&g, 0).unwrap();
        assert_eq!(q.vertices(), &[0, 3, 2, 1]);
        // rotating the result along the same pivot restores the path
        assert_eq!(q.elementary_rotation(&g, 0).unwrap(), p);
    }

    #[test]
    fn rotation_errors() {
        let g = complete(4);
        let p = PathState::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert!(matches!(p.elementary_rotation(&g, 2), Err(Error::Rotation(_))));
        assert!(matches!(p.elementary_rotation(&g, 3), Err(Error::Rotation(_))));
        let c = path(4);
        let p = PathState::new(&c, vec![0, 1, 2, 3]).unwrap();
        assert!(matches!(p.elementary_rotation(&c, 1), Err(Error::Rotation(_))));
    }

    #[test]
    fn new_rejects_non_paths() {
        let g = path(4);
        assert!(PathState::new(&g, vec![0, 2]).is_err());
        assert!(PathState::new(&g, vec![0, 1, 0]).is_err());
        assert!(PathState::new(&g, vec![]).is_err());
    }
}
