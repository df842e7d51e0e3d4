//! Detection of the forbidden subgraph P_{2,2}: two directed 2-paths with a
//! common initial vertex and a common terminal vertex.
//!
//! A copy exists iff some ordered pair `(a,b)` with `a != b` has at least two
//! "middles", i.e. vertices `m` with `a -> m -> b`. All checks here reduce to
//! intersecting the out-row of `a` with the in-row of `b`.

use crate::digraph::{Digraph, VertexSet};

/// An ordered quadruple certifying a P_{2,2} occurrence:
/// `u1 -> u2 -> u4` and `u1 -> u3 -> u4` with `u1 != u4`, `u2 != u3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct P22Witness {
    pub u1: usize,
    pub u2: usize,
    pub u3: usize,
    pub u4: usize,
}

impl P22Witness {
    /// Re-checks the witness against a digraph: all four arcs present and
    /// the distinctness constraints hold.
    pub fn verify(&self, d: &Digraph) -> bool {
        self.u1 != self.u4
            && self.u2 != self.u3
            && d.has_arc(self.u1, self.u2)
            && d.has_arc(self.u2, self.u4)
            && d.has_arc(self.u1, self.u3)
            && d.has_arc(self.u3, self.u4)
    }
}

fn middles(d: &Digraph, a: usize, b: usize) -> u64 {
    // Strictness already keeps a and b out of the intersection, but we mask
    // them off anyway so the definition is visible at the use site.
    let exclude = !(1u64 << a) & !(1u64 << b);
    d.out_neighbors(a).bits() & d.in_neighbors(b).bits() & exclude
}

/// Finds a P_{2,2} if one exists. The witness is deterministic: smallest
/// `(u1,u4)` lexicographically, then the two smallest middles as `(u2,u3)`.
pub fn find_witness(d: &Digraph) -> Option<P22Witness> {
    let n = d.order();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let m = middles(d, a, b);
            if m.count_ones() >= 2 {
                let u2 = m.trailing_zeros() as usize;
                let rest = m & (m - 1);
                let u3 = rest.trailing_zeros() as usize;
                return Some(P22Witness { u1: a, u2, u3, u4: b });
            }
        }
    }
    None
}

/// True iff the digraph contains no P_{2,2}.
pub fn is_free(d: &Digraph) -> bool {
    let n = d.order();
    for a in 0..n {
        for b in 0..n {
            if a != b && middles(d, a, b).count_ones() >= 2 {
                return false;
            }
        }
    }
    true
}

/// Number of ordered pairs `(a,b)` with at least two middles. Zero iff free.
pub fn count_pairs_with_multi_middles(d: &Digraph) -> usize {
    let n = d.order();
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            if a != b && middles(d, a, b).count_ones() >= 2 {
                count += 1;
            }
        }
    }
    count
}

/// Given a P_{2,2}-free digraph and an absent arc `(a,b)` with `a != b`,
/// decides whether the digraph stays free after inserting it.
///
/// Only quadruples using the new arc need checking. The arc can play two
/// roles (up to the middle symmetry): source-to-middle, where some successor
/// `t` of `b` already has a middle from `a`; or middle-to-sink, where some
/// predecessor `s` of `a` already has a middle to `b`.
pub fn stays_free_after(d: &Digraph, a: usize, b: usize) -> bool {
    debug_assert!(a != b && !d.has_arc(a, b), "arc must be absent and non-loop");
    debug_assert!(is_free(d), "digraph must be P_{{2,2}}-free");

    let a_bit = 1u64 << a;
    let b_bit = 1u64 << b;

    // New arc as u1 -> u2: a = u1, b = u2; need t in N+(b), t != a, with an
    // existing middle a -> m -> t (m != b holds since (a,b) was absent).
    for t in (d.out_neighbors(b) - VertexSet::singleton(a)).iter() {
        if d.out_neighbors(a).bits() & d.in_neighbors(t).bits() & !(1u64 << t) & !a_bit != 0 {
            return false;
        }
    }

    // New arc as u2 -> u4: a = u2, b = u4; need s in N-(a), s != b, with an
    // existing middle s -> m -> b (m != a since (a,b) was absent).
    for s in (d.in_neighbors(a) - VertexSet::singleton(b)).iter() {
        if d.out_neighbors(s).bits() & d.in_neighbors(b).bits() & !(1u64 << s) & !b_bit != 0 {
            return false;
        }
    }

    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Digraph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Bit-free oracle: enumerate all ordered quadruples.
    pub(crate) fn naive_is_free(d: &Digraph) -> bool {
        let n = d.order();
        for u1 in 0..n {
            for u2 in 0..n {
                for u3 in 0..n {
                    for u4 in 0..n {
                        if u1 != u4
                            && u2 != u3
                            && d.has_arc(u1, u2)
                            && d.has_arc(u2, u4)
                            && d.has_arc(u1, u3)
                            && d.has_arc(u3, u4)
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn naive_multi_middle_pairs(d: &Digraph) -> usize {
        let n = d.order();
        let mut count = 0;
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let ms = (0..n)
                    .filter(|&m| m != a && m != b && d.has_arc(a, m) && d.has_arc(m, b))
                    .count();
                if ms >= 2 {
                    count += 1;
                }
            }
        }
        count
    }

    fn random_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Digraph {
        let mut d = Digraph::new(n).unwrap();
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(p) {
                    d.add_arc(u, v).unwrap();
                }
            }
        }
        d
    }

    fn minimal_p22() -> Digraph {
        Digraph::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn minimal_p22_yields_witness() {
        let w = find_witness(&minimal_p22()).unwrap();
        assert_eq!(w, P22Witness { u1: 0, u2: 1, u3: 2, u4: 3 });
        assert!(w.verify(&minimal_p22()));
        assert_eq!(count_pairs_with_multi_middles(&minimal_p22()), 1);
    }

    #[test]
    fn no_witness_below_four_vertices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=3 {
            for _ in 0..50 {
                let d = random_digraph(&mut rng, n, 0.7);
                assert!(find_witness(&d).is_none());
            }
        }
    }

    #[test]
    fn complete_two_cycle_digraph_on_four_is_not_free() {
        let mut d = Digraph::new(4).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    d.add_arc(u, v).unwrap();
                }
            }
        }
        assert!(!is_free(&d));
        assert!(!naive_is_free(&d));
        // pair (0,3) has middles 1 and 2
        let w = find_witness(&d).unwrap();
        assert!(w.verify(&d));
    }

    #[test]
    fn empty_digraph_is_free() {
        assert!(is_free(&Digraph::new(6).unwrap()));
        assert_eq!(count_pairs_with_multi_middles(&Digraph::new(6).unwrap()), 0);
    }

    #[test]
    fn agrees_with_quadruple_oracle_on_all_n4_digraphs() {
        // 12 possible arcs on 4 labeled vertices.
        let pairs: Vec<(usize, usize)> = (0..4)
            .flat_map(|u| (0..4).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v)
            .collect();
        for bits in 0u32..(1 << 12) {
            let mut d = Digraph::new(4).unwrap();
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if bits & (1 << i) != 0 {
                    d.add_arc(u, v).unwrap();
                }
            }
            assert_eq!(is_free(&d), naive_is_free(&d), "bits={bits:#014b}");
            if let Some(w) = find_witness(&d) {
                assert!(w.verify(&d));
            }
        }
    }

    #[test]
    fn count_matches_naive_on_random_digraphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let d = random_digraph(&mut rng, 8, 0.25);
            assert_eq!(count_pairs_with_multi_middles(&d), naive_multi_middle_pairs(&d));
        }
    }

    #[test]
    fn stays_free_detects_completion_of_minimal_p22() {
        let d = Digraph::from_arcs(4, [(0, 1), (1, 3), (0, 2)]).unwrap();
        assert!(is_free(&d));
        assert!(!stays_free_after(&d, 2, 3));
    }

    #[test]
    fn any_arc_into_empty_digraph_stays_free() {
        let d = Digraph::new(5).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                if a != b {
                    assert!(stays_free_after(&d, a, b));
                }
            }
        }
    }

    #[test]
    fn stays_free_agrees_with_full_recheck() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5AFE);
        let mut tested = 0;
        while tested < 500 {
            let d = random_digraph(&mut rng, 8, 0.15);
            if !is_free(&d) {
                continue;
            }
            let a = rng.gen_range(0..8);
            let b = rng.gen_range(0..8);
            if a == b || d.has_arc(a, b) {
                continue;
            }
            let mut extended = d.clone();
            extended.add_arc(a, b).unwrap();
            assert_eq!(
                stays_free_after(&d, a, b),
                is_free(&extended),
                "arc ({a},{b}) onto {d:?}"
            );
            tested += 1;
        }
    }

    #[test]
    fn is_free_iff_no_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1FF);
        for _ in 0..400 {
            let n = rng.gen_range(1..=8);
            let d = random_digraph(&mut rng, n, 0.3);
            assert_eq!(is_free(&d), find_witness(&d).is_none());
        }
    }

    #[test]
    fn freeness_is_reverse_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xF11B);
        for _ in 0..300 {
            let d = random_digraph(&mut rng, 7, 0.3);
            assert_eq!(is_free(&d), is_free(&d.reverse()));
        }
    }

    #[test]
    fn non_freeness_is_monotone_under_arc_addition() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0A0B);
        for _ in 0..200 {
            let d = random_digraph(&mut rng, 7, 0.35);
            if is_free(&d) {
                continue;
            }
            let mut extended = d.clone();
            for u in 0..7 {
                for v in 0..7 {
                    if u != v && rng.gen_bool(0.2) {
                        extended.add_arc(u, v).unwrap();
                    }
                }
            }
            assert!(!is_free(&extended));
        }
    }
}
