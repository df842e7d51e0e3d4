//! Exact canonical forms for digraphs, via iterated partition refinement and
//! individualization with automorphism pruning.
//!
//! The canonical key of a digraph is the lexicographically smallest packed
//! adjacency matrix over all vertex orderings consistent with the refinement
//! process. Two digraphs are isomorphic iff their keys are equal; this is an
//! exact invariant, not a hash. Backtracking can degenerate on adversarial
//! inputs, but automorphisms discovered along the way prune the symmetric
//! subtrees that dominate the structured digraphs handled here.

use std::collections::BTreeMap;

use crate::digraph::Digraph;

/// Total-order key for an isomorphism class.
///
/// The key is the order followed by the row-major bit-packed adjacency
/// matrix under the canonical labeling. `to_hex` is stable and suitable for
/// golden files.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    key: Vec<u8>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(2 + self.key.len() * 2);
        s.push_str(&format!("{:02x}", self.n));
        for b in &self.key {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }
}

/// Canonical form of `d`; invariant under any relabeling of the vertices.
pub fn canonical_form(d: &Digraph) -> CanonicalForm {
    let mut canonizer = Canonizer::new(d);
    canonizer.run();
    CanonicalForm {
        n: d.order(),
        key: canonizer.best.expect("at least one leaf").0,
    }
}

/// True iff an arc-preserving bijection between the two exists.
pub fn are_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    if a.order() != b.order() || a.arc_count() != b.arc_count() {
        return false;
    }
    let degrees = |d: &Digraph| {
        let mut ds: Vec<(usize, usize)> = (0..d.order())
            .map(|v| (d.out_degree(v), d.in_degree(v)))
            .collect();
        ds.sort_unstable();
        ds
    };
    if degrees(a) != degrees(b) {
        return false;
    }
    canonical_form(a) == canonical_form(b)
}

type Cells = Vec<Vec<usize>>;

struct Canonizer<'a> {
    d: &'a Digraph,
    n: usize,
    /// Smallest encoding seen, with the labeling (position -> vertex) that
    /// produced it.
    best: Option<(Vec<u8>, Vec<usize>)>,
    /// First leaf reached; equality against it is what exposes the
    /// automorphisms of symmetric branches early.
    first: Option<(Vec<u8>, Vec<usize>)>,
    /// Discovered automorphisms, as vertex maps.
    generators: Vec<Vec<usize>>,
    /// Vertices individualized on the current path, root first.
    path: Vec<usize>,
    /// Per path level: candidates whose subtree was fully explored.
    finished: Vec<Vec<usize>>,
}

impl<'a> Canonizer<'a> {
    fn new(d: &'a Digraph) -> Self {
        Canonizer {
            d,
            n: d.order(),
            best: None,
            first: None,
            generators: Vec::new(),
            path: Vec::new(),
            finished: Vec::new(),
        }
    }

    fn run(&mut self) {
        let mut groups: BTreeMap<(usize, usize, usize), Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            groups
                .entry((self.d.out_degree(v), self.d.in_degree(v), self.d.tau(v)))
                .or_default()
                .push(v);
        }
        let cells: Cells = groups.into_values().collect();
        self.descend(cells);
    }

    /// Explores one node of the search tree. Returns `Some(level)` when an
    /// automorphism proved the subtree redundant and the search should
    /// resume at that path level.
    fn descend(&mut self, mut cells: Cells) -> Option<usize> {
        self.refine(&mut cells);

        let target = match cells.iter().position(|c| c.len() > 1) {
            None => return self.visit_leaf(&cells),
            Some(first_split) => {
                // smallest non-singleton cell, lowest index on ties
                let mut best_idx = first_split;
                for (i, c) in cells.iter().enumerate().skip(first_split + 1) {
                    if c.len() > 1 && c.len() < cells[best_idx].len() {
                        best_idx = i;
                    }
                }
                best_idx
            }
        };

        let level = self.path.len();
        let candidates = cells[target].clone();
        self.finished.push(Vec::new());

        for &c in &candidates {
            if self.in_finished_orbit(level, c) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![c]);
            child.push(cells[target].iter().copied().filter(|&v| v != c).collect());
            child.extend_from_slice(&cells[target + 1..]);

            self.path.push(c);
            let jump = self.descend(child);
            self.path.pop();

            match jump {
                None => self.finished[level].push(c),
                Some(j) if j == level => {} // abandoned; an explored orbit mate covers it
                Some(j) => {
                    self.finished.pop();
                    return Some(j);
                }
            }
        }

        self.finished.pop();
        None
    }

    fn visit_leaf(&mut self, cells: &Cells) -> Option<usize> {
        let perm: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let enc = self.encode(&perm);

        if self.first.is_none() {
            self.first = Some((enc.clone(), perm.clone()));
            self.best = Some((enc, perm));
            return None;
        }

        let automorphism = {
            let (first_enc, first_perm) = self.first.as_ref().unwrap();
            let (best_enc, best_perm) = self.best.as_ref().unwrap();
            if enc == *first_enc {
                Some(compose(first_perm, &perm))
            } else if enc < *best_enc {
                self.best = Some((enc, perm));
                return None;
            } else if enc == *best_enc {
                Some(compose(best_perm, &perm))
            } else {
                None
            }
        };

        let gamma = match automorphism {
            Some(g) if g.iter().enumerate().any(|(v, &gv)| v != gv) => g,
            _ => return None,
        };
        let moved_level = self.path.iter().position(|&v| gamma[v] != v);
        self.generators.push(gamma);

        // Jump back to the shallowest moved level if a fully explored
        // candidate there covers the current one.
        if let Some(level) = moved_level {
            if self.in_finished_orbit(level, self.path[level]) {
                return Some(level);
            }
        }
        None
    }

    /// True when `c` lies in the orbit of some fully explored candidate at
    /// `level`, under the subgroup of discovered automorphisms fixing the
    /// path prefix below that level pointwise.
    fn in_finished_orbit(&self, level: usize, c: usize) -> bool {
        if self.finished[level].is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for g in &self.generators {
            if self.path[..level].iter().any(|&v| g[v] != v) {
                continue;
            }
            for (v, &gv) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, gv));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, c);
        self.finished[level]
            .iter()
            .any(|&p| find(&mut parent, p) == root)
    }

    /// Equitable refinement: split every cell by the per-cell out/in counts
    /// of its vertices until stable. Sub-cells are ordered by signature, so
    /// the result depends only on the isomorphism type.
    fn refine(&self, cells: &mut Cells) {
        loop {
            let masks: Vec<u64> = cells
                .iter()
                .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
                .collect();
            let mut next: Cells = Vec::with_capacity(cells.len());
            let mut changed = false;
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut groups: BTreeMap<Vec<(u32, u32)>, Vec<usize>> = BTreeMap::new();
                for &v in cell {
                    let out = self.d.out_neighbors(v).bits();
                    let inc = self.d.in_neighbors(v).bits();
                    let sig: Vec<(u32, u32)> = masks
                        .iter()
                        .map(|&w| ((out & w).count_ones(), (inc & w).count_ones()))
                        .collect();
                    groups.entry(sig).or_default().push(v);
                }
                if groups.len() > 1 {
                    changed = true;
                }
                next.extend(groups.into_values());
            }
            *cells = next;
            if !changed {
                return;
            }
        }
    }

    /// Row-major bit-packed adjacency matrix under `perm` (position->vertex).
    fn encode(&self, perm: &[usize]) -> Vec<u8> {
        let n = self.n;
        let mut bytes = vec![0u8; (n * n + 7) / 8];
        let mut pos = 0;
        for &u in perm {
            let row = self.d.out_neighbors(u).bits();
            for &v in perm {
                if row >> v & 1 == 1 {
                    bytes[pos / 8] |= 1 << (7 - pos % 8);
                }
                pos += 1;
            }
        }
        bytes
    }
}

/// Automorphism sending `base[p]` to `other[p]` for every position `p`.
fn compose(base: &[usize], other: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; base.len()];
    for (p, &v) in base.iter().enumerate() {
        gamma[v] = other[p];
    }
    gamma
}
