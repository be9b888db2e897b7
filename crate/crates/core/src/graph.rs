//! Finite simple undirected graphs stored as one bit row per vertex.
//!
//! Vertices are the dense integers `0..n`. Every graph is capped at
//! [`MAX_VERTICES`] so that a neighbourhood fits in a single `u64` word and
//! neighbourhood intersections are one `&`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the number of vertices of a [`Graph`].
pub const MAX_VERTICES: usize = 64;

/// Bit mask with the lowest `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of `mask` in ascending order.
#[inline]
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// A finite simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

/// How the edges between two disjoint vertex sets look.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Complete,
    Anticomplete,
    Matching,
    Comatching,
    Other,
}

/// All flags behind a [`Relation`] verdict; several can hold at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationFlags {
    pub complete: bool,
    pub anticomplete: bool,
    pub matching: bool,
    pub comatching: bool,
}

impl RelationFlags {
    pub fn strongest(&self) -> Relation {
        if self.complete {
            Relation::Complete
        } else if self.anticomplete {
            Relation::Anticomplete
        } else if self.matching {
            Relation::Matching
        } else if self.comatching {
            Relation::Comatching
        } else {
            Relation::Other
        }
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { n, cap: MAX_VERTICES });
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from symmetric, irreflexive bit rows.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { n, cap: MAX_VERTICES });
        }
        let full = full_mask(n);
        for (u, &row) in rows.iter().enumerate() {
            if row & !full != 0 {
                return Err(Error::VertexOutOfRange { vertex: 64 - row.leading_zeros() as usize - 1, n });
            }
            if row >> u & 1 == 1 {
                return Err(Error::SelfLoop(u));
            }
            for v in bits(row) {
                if rows[v] >> u & 1 == 0 {
                    return Err(Error::Asymmetric(u, v));
                }
            }
        }
        Ok(Graph { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Neighbourhood of `v` as a bit mask.
    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Mask of all vertices.
    #[inline]
    pub fn all(&self) -> u64 {
        full_mask(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.rows[u] & !full_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.rows[v])
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
        Ok(())
    }

    /// Flips the adjacency of `u` and `v`.
    pub fn toggle_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.rows[u] ^= 1 << v;
        self.rows[v] ^= 1 << u;
        Ok(())
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Converts a vertex list to a mask, rejecting out-of-range vertices.
    pub fn mask_of(&self, set: &[usize]) -> Result<u64> {
        let mut m = 0u64;
        for &v in set {
            self.check_vertex(v)?;
            m |= 1 << v;
        }
        Ok(m)
    }

    /// The complement: distinct vertices are adjacent iff they are not adjacent here.
    pub fn complement(&self) -> Graph {
        let full = self.all();
        let rows = (0..self.n).map(|v| !self.rows[v] & full & !(1 << v)).collect();
        Graph { n: self.n, rows }
    }

    /// The subgraph induced by `set`, renumbered in ascending original order.
    pub fn induced(&self, set: &[usize]) -> Result<Graph> {
        let mask = self.mask_of(set)?;
        Ok(self.induced_mask(mask))
    }

    pub(crate) fn induced_mask(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = bits(mask).collect();
        let rows = keep
            .iter()
            .map(|&u| {
                let mut r = 0u64;
                for (j, &v) in keep.iter().enumerate() {
                    if self.has_edge(u, v) {
                        r |= 1 << j;
                    }
                }
                r
            })
            .collect();
        Graph { n: keep.len(), rows }
    }

    /// `G \ S`: deletes every vertex of `set`.
    pub fn without(&self, set: &[usize]) -> Result<Graph> {
        let mask = self.mask_of(set)?;
        Ok(self.induced_mask(self.all() & !mask))
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { n, cap: MAX_VERTICES });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << self.n));
        Ok(Graph { n, rows })
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.component_masks().into_iter().map(|m| bits(m).collect()).collect()
    }

    pub(crate) fn component_masks(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for v in bits(frontier) {
                    next |= self.rows[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_masks().len() == 1
    }

    /// A proper 2-colouring, if one exists.
    ///
    /// Each component is coloured by BFS from its lowest vertex, which goes
    /// to the first part.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for v in self.neighbours(u) {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let (a, b): (Vec<usize>, Vec<usize>) = (0..self.n).partition(|&v| colour[v] == Some(false));
        Some((a, b))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// `true` iff no two vertices of `mask` are adjacent.
    pub fn is_independent_mask(&self, mask: u64) -> bool {
        bits(mask).all(|v| self.rows[v] & mask == 0)
    }

    /// `true` iff every two distinct vertices of `mask` are adjacent.
    pub fn is_clique_mask(&self, mask: u64) -> bool {
        bits(mask).all(|v| self.rows[v] & mask == mask & !(1 << v))
    }

    /// Detailed relation flags between disjoint sets `a` and `b`.
    pub fn relation_flags(&self, a: &[usize], b: &[usize]) -> Result<RelationFlags> {
        let ma = self.mask_of(a)?;
        let mb = self.mask_of(b)?;
        if ma & mb != 0 {
            return Err(Error::Overlap(bits(ma & mb).collect()));
        }
        Ok(self.relation_flags_mask(ma, mb))
    }

    pub(crate) fn relation_flags_mask(&self, ma: u64, mb: u64) -> RelationFlags {
        let (na, nb) = (ma.count_ones(), mb.count_ones());
        let mut flags = RelationFlags { complete: true, anticomplete: true, matching: true, comatching: true };
        let mut side = |from: u64, to: u64, size_to: u32| {
            for v in bits(from) {
                let nbrs = (self.rows[v] & to).count_ones();
                flags.complete &= nbrs == size_to;
                flags.anticomplete &= nbrs == 0;
                flags.matching &= nbrs <= 1;
                flags.comatching &= size_to - nbrs <= 1;
            }
        };
        side(ma, mb, nb);
        side(mb, ma, na);
        flags
    }

    /// Classifies the edges between disjoint sets `a` and `b`.
    pub fn relation_between(&self, a: &[usize], b: &[usize]) -> Result<Relation> {
        Ok(self.relation_flags(a, b)?.strongest())
    }

    /// Applies the vertex permutation `perm` (new index of old vertex `v` is `perm[v]`).
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            for v in self.neighbours(u) {
                rows[perm[u]] |= 1 << perm[v];
            }
        }
        Graph { n: self.n, rows }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn complement_of_triangle_is_edgeless() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.complement(), Graph::empty(3).unwrap());
    }

    #[test]
    fn complement_is_involution_and_counts_edges() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 5), (3, 4), (1, 4)]).unwrap();
        assert_eq!(g.complement().complement(), g);
        assert_eq!(g.edge_count() + g.complement().edge_count(), 15);
    }

    #[test]
    fn induced_renumbers_in_ascending_order() {
        let c5 = cycle(5);
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(c5.induced(&[0, 1, 2, 3]).unwrap(), p4);
        assert_eq!(c5.induced(&[0, 1, 2, 3, 4]).unwrap(), c5);
        assert!(matches!(c5.induced(&[7]), Err(Error::VertexOutOfRange { vertex: 7, n: 5 })));
    }

    #[test]
    fn bipartition_of_even_and_odd_cycles() {
        assert_eq!(cycle(4).bipartition(), Some((vec![0, 2], vec![1, 3])));
        assert_eq!(cycle(5).bipartition(), None);
    }

    #[test]
    fn relation_examples() {
        let k22 = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(k22.relation_between(&[0, 1], &[2, 3]).unwrap(), Relation::Complete);
        let two_p2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_p2.relation_between(&[0, 2], &[1, 3]).unwrap(), Relation::Matching);
        // each even vertex of C6 misses exactly one odd vertex
        assert_eq!(cycle(6).relation_between(&[0, 2, 4], &[1, 3, 5]).unwrap(), Relation::Comatching);
        assert_eq!(cycle(8).relation_between(&[0, 2, 4, 6], &[1, 3, 5, 7]).unwrap(), Relation::Other);
        assert!(matches!(k22.relation_between(&[0, 1], &[1, 2]), Err(Error::Overlap(_))));
    }

    #[test]
    fn anticomplete_pair_also_flags_matching() {
        let g = Graph::empty(4).unwrap();
        let f = g.relation_flags(&[0, 1], &[2, 3]).unwrap();
        assert!(f.anticomplete && f.matching);
        assert_eq!(f.strongest(), Relation::Anticomplete);
    }

    #[test]
    fn rejects_oversized_and_malformed() {
        assert!(Graph::empty(65).is_err());
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_rows(vec![0b10, 0]).is_err());
    }
}
