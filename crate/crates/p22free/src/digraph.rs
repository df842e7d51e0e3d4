//! Strict digraphs on at most 64 vertices, stored as one adjacency bitmask
//! per row so that neighborhood queries reduce to word operations.

use std::fmt;

use thiserror::Error;

/// Hard cap of the bit-parallel representation: one `u64` per row.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DigraphError {
    #[error("vertex count {0} out of range (1..={MAX_VERTICES})")]
    Size(usize),
    #[error("loop arc ({0},{0}) not allowed")]
    Loop(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    Range { vertex: usize, order: usize },
}

/// A subset of the vertices `0..n` of some digraph, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(!0)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1u64 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Ascending iterator over members.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl std::ops::BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl std::ops::BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl std::ops::Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A strict digraph (no loops, no parallel arcs) on vertices `0..n`.
///
/// Both the out-rows and in-rows are kept so that successor and predecessor
/// sets are single word loads. Values are cheap to clone and immutable by
/// convention once a builder has finished with them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: Vec<u64>,
    inc: Vec<u64>,
}

impl Digraph {
    /// Empty digraph on `n` vertices. Errors when `n` is zero or exceeds the
    /// one-word-per-row representation.
    pub fn new(n: usize) -> Result<Self, DigraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(DigraphError::Size(n));
        }
        Ok(Digraph {
            n,
            out: vec![0; n],
            inc: vec![0; n],
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of arcs.
    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|r| r.count_ones() as usize).sum()
    }

    fn check_vertex(&self, v: usize) -> Result<(), DigraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(DigraphError::Range {
                vertex: v,
                order: self.n,
            })
        }
    }

    /// Inserts the arc `(u,v)`. Idempotent; rejects loops and out-of-range
    /// endpoints.
    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<(), DigraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(DigraphError::Loop(u));
        }
        self.out[u] |= 1u64 << v;
        self.inc[v] |= 1u64 << u;
        Ok(())
    }

    /// Removes the arc `(u,v)` if present.
    pub fn remove_arc(&mut self, u: usize, v: usize) -> Result<(), DigraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.out[u] &= !(1u64 << v);
        self.inc[v] &= !(1u64 << u);
        Ok(())
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.out[u] & (1u64 << v) != 0
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs = Vec::with_capacity(self.arc_count());
        for u in 0..self.n {
            for v in VertexSet(self.out[u]).iter() {
                arcs.push((u, v));
            }
        }
        arcs
    }

    /// The digraph with every arc direction flipped.
    pub fn reverse(&self) -> Digraph {
        Digraph {
            n: self.n,
            out: self.inc.clone(),
            inc: self.out.clone(),
        }
    }

    /// Successor set of `u`.
    ///
    /// # Panics
    /// Panics when `u >= order()`.
    pub fn out_neighbors(&self, u: usize) -> VertexSet {
        VertexSet(self.out[u])
    }

    /// Predecessor set of `u`.
    ///
    /// # Panics
    /// Panics when `u >= order()`.
    pub fn in_neighbors(&self, u: usize) -> VertexSet {
        VertexSet(self.inc[u])
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].count_ones() as usize
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.inc[u].count_ones() as usize
    }

    /// Maximum out-degree, the quantity usually called `k`.
    pub fn max_out_degree(&self) -> usize {
        (0..self.n).map(|u| self.out_degree(u)).max().unwrap_or(0)
    }

    /// Vertices attaining the maximum out-degree.
    pub fn max_out_degree_vertices(&self) -> VertexSet {
        let k = self.max_out_degree();
        (0..self.n).filter(|&u| self.out_degree(u) == k).collect()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Number of arcs from `S` to `T`; arcs inside the intersection count
    /// once per ordered pair.
    pub fn e(&self, s: VertexSet, t: VertexSet) -> usize {
        s.iter()
            .map(|u| (self.out[u] & t.bits()).count_ones() as usize)
            .sum()
    }

    /// True when the arcs from `S` to `T` form a perfect matching: each
    /// vertex of `S` has exactly one successor in `T` and each vertex of `T`
    /// exactly one predecessor in `S`. Meaningful for disjoint sets.
    pub fn matches(&self, s: VertexSet, t: VertexSet) -> bool {
        debug_assert!(s.is_disjoint(t), "matches() expects disjoint sets");
        s.iter().all(|u| (self.out[u] & t.bits()).count_ones() == 1)
            && t.iter().all(|v| (self.inc[v] & s.bits()).count_ones() == 1)
    }

    /// Number of vertices that are both successor and predecessor of `v`.
    pub fn tau(&self, v: usize) -> usize {
        (self.out[v] & self.inc[v]).count_ones() as usize
    }

    /// Maximum over all `u` of the number of successors of `u` lying outside
    /// the successor set of `v` (the complement includes `v` itself).
    pub fn alpha(&self, v: usize) -> usize {
        let outside = self.vertices().bits() & !self.out[v];
        (0..self.n)
            .map(|u| (self.out[u] & outside).count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Subdigraph induced by `s`, with vertices renumbered to `0..|s|` in
    /// ascending order of their original labels.
    pub fn induced(&self, s: VertexSet) -> Result<Digraph, DigraphError> {
        let verts: Vec<usize> = s.iter().filter(|&v| v < self.n).collect();
        let mut sub = Digraph::new(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if i != j && self.has_arc(u, v) {
                    sub.add_arc(i, j).expect("indices in range");
                }
            }
        }
        Ok(sub)
    }

    /// Copy of the digraph with vertex `v` relabeled to `perm[v]`.
    /// `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.n);
        let mut d = Digraph::new(self.n).expect("same order");
        for (u, v) in self.arcs() {
            d.add_arc(perm[u], perm[v]).expect("permutation image");
        }
        d
    }

    /// Convenience constructor from an arc list.
    pub fn from_arcs(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Digraph, DigraphError> {
        let mut d = Digraph::new(n)?;
        for (u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.n, self.arcs())
    }
}
