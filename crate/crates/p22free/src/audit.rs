//! Executable forms of the structural facts underlying the extremal
//! characterization, usable as invariant suites over generated digraphs and
//! as diagnostics on arbitrary inputs.
//!
//! Audits that hold for every P_{2,2}-free digraph return a [`Verdict`]; the
//! quantities that are only bounded on extremal digraphs (`alpha <= 1`,
//! `tau <= 2`, `n/2 <= k <= n/2+2`) are measured and reported without a
//! verdict, since they are false on general inputs by design.

use std::fmt;

use thiserror::Error;

use crate::detect::is_free;
use crate::digraph::{Digraph, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AuditError {
    #[error("{s1} and {s2} must be distinct successors of {v}")]
    NotDistinctSuccessors { v: usize, s1: usize, s2: usize },
    #[error("vertex {vertex} out of range for order {order}")]
    Range { vertex: usize, order: usize },
}

/// Outcome of a single audit. Violations carry named witness vertices that
/// re-verify against the digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated(Violation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub vertices: Vec<(&'static str, usize)>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    fn violated(vertices: Vec<(&'static str, usize)>) -> Verdict {
        Verdict::Violated(Violation { vertices })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Violated(v) => {
                write!(f, "violated at")?;
                for (name, vertex) in &v.vertices {
                    write!(f, " {name}={vertex}")?;
                }
                Ok(())
            }
        }
    }
}

/// Two distinct successors of any vertex share no common successor other
/// than the vertex itself. Equivalent to P_{2,2}-freeness; the violation
/// witness is `(v, s1, s2, w)` with `v->s1->w` and `v->s2->w`.
pub fn audit_common_successors(d: &Digraph) -> Verdict {
    let n = d.order();
    for v in 0..n {
        let succ: Vec<usize> = d.out_neighbors(v).iter().collect();
        for (i, &s1) in succ.iter().enumerate() {
            for &s2 in &succ[i + 1..] {
                let shared =
                    (d.out_neighbors(s1) & d.out_neighbors(s2)) - VertexSet::singleton(v);
                if let Some(w) = shared.min() {
                    return Verdict::violated(vec![
                        ("v", v),
                        ("s1", s1),
                        ("s2", s2),
                        ("w", w),
                    ]);
                }
            }
        }
    }
    Verdict::Holds
}

/// Every vertex other than `v` has at most one predecessor inside `N+(v)`.
/// Holds on every P_{2,2}-free digraph.
pub fn audit_out_neighborhood_indegree(d: &Digraph, v: usize) -> Result<Verdict, AuditError> {
    check_vertex(d, v)?;
    for u in 0..d.order() {
        if u == v {
            continue;
        }
        let preds = d.in_neighbors(u) & d.out_neighbors(v);
        if preds.len() > 1 {
            let mut it = preds.iter();
            return Ok(Verdict::violated(vec![
                ("v", v),
                ("u", u),
                ("p1", it.next().unwrap()),
                ("p2", it.next().unwrap()),
            ]));
        }
    }
    Ok(Verdict::Holds)
}

/// Pigeonhole filter: if two successors `s1, s2` of `v` send at least
/// `|S| + 2` arcs into `S` combined, they share two successors and the
/// digraph cannot be free. The verdict cross-checks that implication
/// against the detector.
pub fn audit_pigeonhole_filter(
    d: &Digraph,
    v: usize,
    s1: usize,
    s2: usize,
    s: VertexSet,
) -> Result<Verdict, AuditError> {
    check_vertex(d, v)?;
    check_vertex(d, s1)?;
    check_vertex(d, s2)?;
    if s1 == s2 || !d.out_neighbors(v).contains(s1) || !d.out_neighbors(v).contains(s2) {
        return Err(AuditError::NotDistinctSuccessors { v, s1, s2 });
    }
    let sum = d.e(VertexSet::singleton(s1), s) + d.e(VertexSet::singleton(s2), s);
    if sum >= s.len() + 2 && is_free(d) {
        return Ok(Verdict::violated(vec![("v", v), ("s1", s1), ("s2", s2)]));
    }
    Ok(Verdict::Holds)
}

/// Any vertex outside `N+(v) ∪ {v}` shares at most `d+(v) - tau(v) + 1`
/// common successors with `v`. Holds on every P_{2,2}-free digraph.
pub fn audit_common_successor_bound(d: &Digraph, v: usize) -> Result<Verdict, AuditError> {
    check_vertex(d, v)?;
    let bound = d.out_degree(v) + 1 - d.tau(v).min(d.out_degree(v));
    for u in 0..d.order() {
        if u == v || d.out_neighbors(v).contains(u) {
            continue;
        }
        let shared = (d.out_neighbors(u) & d.out_neighbors(v)).len();
        if shared > bound {
            return Ok(Verdict::violated(vec![("v", v), ("u", u)]));
        }
    }
    Ok(Verdict::Holds)
}

/// For every arc `u1 -> u2` outside `N+(v)`: no arc runs from
/// `N+(v) ∩ N+(u1)` to `N+(v) ∩ N+(u2)`. Holds on every P_{2,2}-free
/// digraph; such an arc closes two 2-paths from `u1`.
pub fn audit_nonadjacent_outsets(d: &Digraph, v: usize) -> Result<Verdict, AuditError> {
    check_vertex(d, v)?;
    let n = d.order();
    let reach = d.out_neighbors(v);
    for u1 in 0..n {
        if reach.contains(u1) {
            continue;
        }
        for u2 in d.out_neighbors(u1).iter() {
            if reach.contains(u2) {
                continue;
            }
            let a_side = reach & d.out_neighbors(u1);
            let b_side = reach & d.out_neighbors(u2);
            for a in a_side.iter() {
                let hits = d.out_neighbors(a) & b_side;
                if let Some(b) = hits.min() {
                    return Ok(Verdict::violated(vec![
                        ("u1", u1),
                        ("u2", u2),
                        ("u3", a),
                        ("u4", b),
                    ]));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Second half of the out-neighborhood structure: when every vertex of
/// `N+(v)` has a predecessor inside `N+(v)`, any arc `u1 -> u2` outside
/// `N+(v)` between vertices of maximum out-degree forces
/// `N+(u1) ∩ N+(v) = N+(u2) ∩ N+(v) = N+(v) \ {u1'}` with `u1'` fanning out
/// to all of `N+(v) \ {u1'}`. Vacuously holds when the hypotheses fail.
pub fn audit_equal_outdegree_pairs(d: &Digraph, v: usize) -> Result<Verdict, AuditError> {
    check_vertex(d, v)?;
    let reach = d.out_neighbors(v);
    let hypothesis = reach
        .iter()
        .all(|u| !(d.in_neighbors(u) & reach).is_empty());
    if !hypothesis {
        return Ok(Verdict::Holds);
    }
    let k = d.max_out_degree();
    for u1 in 0..d.order() {
        if reach.contains(u1) || d.out_degree(u1) != k {
            continue;
        }
        for u2 in d.out_neighbors(u1).iter() {
            if reach.contains(u2) || d.out_degree(u2) != k {
                continue;
            }
            let n1 = d.out_neighbors(u1) & reach;
            let n2 = d.out_neighbors(u2) & reach;
            let missing = reach - n1;
            let ok = n1 == n2
                && n1.len() + 1 == reach.len()
                && missing
                    .min()
                    .map(|m| (reach - VertexSet::singleton(m)).is_subset_of(d.out_neighbors(m)))
                    .unwrap_or(false);
            if !ok {
                return Ok(Verdict::violated(vec![("v", v), ("u1", u1), ("u2", u2)]));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Measured quantities that the extremal characterization bounds: the
/// maximum out-degree `k` and, per vertex attaining it, `alpha` and `tau`.
/// On a member of the extremal classes with `n >= 13`, `k` lies in
/// `[n/2, n/2 + 2]` and every listed vertex has `alpha <= 1`, `tau <= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalBoundsReport {
    pub n: usize,
    pub k: usize,
    pub k_within_bounds: bool,
    /// The bounds are statements about extremal digraphs of order >= 13;
    /// below that the report is informational only.
    pub in_stated_domain: bool,
    pub per_vertex: Vec<MaxOutVertexReport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxOutVertexReport {
    pub v: usize,
    pub alpha: usize,
    pub tau: usize,
    pub alpha_ok: bool,
    pub tau_ok: bool,
}

impl ExtremalBoundsReport {
    pub fn all_within_bounds(&self) -> bool {
        self.k_within_bounds && self.per_vertex.iter().all(|r| r.alpha_ok && r.tau_ok)
    }
}

pub fn audit_extremal_bounds(d: &Digraph) -> ExtremalBoundsReport {
    let n = d.order();
    let k = d.max_out_degree();
    let per_vertex = d
        .max_out_degree_vertices()
        .iter()
        .map(|v| {
            let alpha = d.alpha(v);
            let tau = d.tau(v);
            MaxOutVertexReport {
                v,
                alpha,
                tau,
                alpha_ok: alpha <= 1,
                tau_ok: tau <= 2,
            }
        })
        .collect();
    ExtremalBoundsReport {
        n,
        k,
        k_within_bounds: 2 * k >= n && 2 * k <= n + 4,
        in_stated_domain: n >= 13,
        per_vertex,
    }
}

/// Full report over one digraph: the universal audits, plus the measured
/// extremal quantities, evaluated at `vertex` (default: the lowest vertex of
/// maximum out-degree).
#[derive(Debug, Clone)]
pub struct AuditReport {
    pub n: usize,
    pub arc_count: usize,
    pub free: bool,
    pub vertex: usize,
    pub common_successors: Verdict,
    pub out_neighborhood_indegree: Verdict,
    pub common_successor_bound: Verdict,
    pub nonadjacent_outsets: Verdict,
    pub equal_outdegree_pairs: Verdict,
    pub extremal: ExtremalBoundsReport,
}

pub fn audit_report(d: &Digraph, vertex: Option<usize>) -> Result<AuditReport, AuditError> {
    let v = match vertex {
        Some(v) => {
            check_vertex(d, v)?;
            v
        }
        None => d
            .max_out_degree_vertices()
            .min()
            .expect("digraphs are nonempty"),
    };
    Ok(AuditReport {
        n: d.order(),
        arc_count: d.arc_count(),
        free: is_free(d),
        vertex: v,
        common_successors: audit_common_successors(d),
        out_neighborhood_indegree: audit_out_neighborhood_indegree(d, v)?,
        common_successor_bound: audit_common_successor_bound(d, v)?,
        nonadjacent_outsets: audit_nonadjacent_outsets(d, v)?,
        equal_outdegree_pairs: audit_equal_outdegree_pairs(d, v)?,
        extremal: audit_extremal_bounds(d),
    })
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order: {}", self.n)?;
        writeln!(f, "arcs: {}", self.arc_count)?;
        writeln!(f, "free: {}", self.free)?;
        writeln!(f, "max_out_degree: {}", self.extremal.k)?;
        writeln!(f, "k_within_extremal_bounds: {}", self.extremal.k_within_bounds)?;
        writeln!(f, "extremal_bounds_domain: {}", self.extremal.in_stated_domain)?;
        writeln!(f, "common_successors: {}", self.common_successors)?;
        writeln!(f, "vertex: {}", self.vertex)?;
        writeln!(
            f,
            "out_neighborhood_indegree: {}",
            self.out_neighborhood_indegree
        )?;
        writeln!(f, "common_successor_bound: {}", self.common_successor_bound)?;
        writeln!(f, "nonadjacent_outsets: {}", self.nonadjacent_outsets)?;
        writeln!(f, "equal_outdegree_pairs: {}", self.equal_outdegree_pairs)?;
        for r in &self.extremal.per_vertex {
            writeln!(
                f,
                "alpha[v={}]: {} (ok: {})",
                r.v, r.alpha, r.alpha_ok
            )?;
            writeln!(f, "tau[v={}]: {} (ok: {})", r.v, r.tau, r.tau_ok)?;
        }
        Ok(())
    }
}

fn check_vertex(d: &Digraph, v: usize) -> Result<(), AuditError> {
    if v < d.order() {
        Ok(())
    } else {
        Err(AuditError::Range {
            vertex: v,
            order: d.order(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, v1_size, FamilyParams};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn minimal_p22() -> Digraph {
        Digraph::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
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

    fn random_free_digraph(rng: &mut ChaCha8Rng, n: usize) -> Digraph {
        loop {
            let d = random_digraph(rng, n, 0.12);
            if is_free(&d) {
                return d;
            }
        }
    }

    #[test]
    fn common_successors_matches_detector() {
        assert!(audit_common_successors(
            &build_family(&FamilyParams::D1 { n: 13, two_cycles: 0 }).unwrap()
        )
        .holds());

        match audit_common_successors(&minimal_p22()) {
            Verdict::Violated(violation) => {
                let get = |name| {
                    violation
                        .vertices
                        .iter()
                        .find(|(k, _)| *k == name)
                        .unwrap()
                        .1
                };
                let d = minimal_p22();
                assert!(d.has_arc(get("v"), get("s1")));
                assert!(d.has_arc(get("v"), get("s2")));
                assert!(d.has_arc(get("s1"), get("w")));
                assert!(d.has_arc(get("s2"), get("w")));
            }
            Verdict::Holds => panic!("minimal P2,2 must violate"),
        }

        let mut rng = ChaCha8Rng::seed_from_u64(0xABCD);
        for _ in 0..300 {
            let d = random_digraph(&mut rng, 7, 0.3);
            assert_eq!(audit_common_successors(&d).holds(), is_free(&d));
        }
    }

    #[test]
    fn common_successors_equals_freeness_on_all_n4_digraphs() {
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
            match audit_common_successors(&d) {
                Verdict::Holds => assert!(is_free(&d), "bits={bits}"),
                Verdict::Violated(violation) => {
                    assert!(!is_free(&d), "bits={bits}");
                    // the witness must re-verify against the digraph
                    let at = |name| {
                        violation
                            .vertices
                            .iter()
                            .find(|(k, _)| *k == name)
                            .unwrap()
                            .1
                    };
                    assert!(d.has_arc(at("v"), at("s1")));
                    assert!(d.has_arc(at("v"), at("s2")));
                    assert!(d.has_arc(at("s1"), at("w")));
                    assert!(d.has_arc(at("s2"), at("w")));
                    assert_ne!(at("w"), at("v"));
                }
            }
        }
    }

    #[test]
    fn out_neighborhood_indegree_cases() {
        let d1 = build_family(&FamilyParams::D1 { n: 13, two_cycles: 0 }).unwrap();
        for v in v1_size(13)..13 {
            assert!(audit_out_neighborhood_indegree(&d1, v).unwrap().holds());
        }

        // in the minimal P2,2, u4 has both middles as predecessors inside N+(u1)
        let verdict = audit_out_neighborhood_indegree(&minimal_p22(), 0).unwrap();
        assert!(!verdict.holds());

        let mut rng = ChaCha8Rng::seed_from_u64(0x0131);
        for _ in 0..40 {
            let d = random_free_digraph(&mut rng, 8);
            for v in 0..8 {
                assert!(audit_out_neighborhood_indegree(&d, v).unwrap().holds());
            }
        }
    }

    #[test]
    fn pigeonhole_filter_cases() {
        // s1 and s2 cover S twice over: the detector must agree
        let d = Digraph::from_arcs(
            6,
            [(0, 1), (0, 2), (1, 4), (1, 5), (2, 4), (2, 5)],
        )
        .unwrap();
        let s: VertexSet = [4, 5].into_iter().collect();
        assert!(!is_free(&d));
        assert!(audit_pigeonhole_filter(&d, 0, 1, 2, s).unwrap().holds());

        // arc sum below |S| + 2 makes the implication vacuous
        let d2 = Digraph::from_arcs(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]).unwrap();
        let s3: VertexSet = [3, 4, 5].into_iter().collect();
        assert!(is_free(&d2));
        assert!(audit_pigeonhole_filter(&d2, 0, 1, 2, s3).unwrap().holds());

        assert_eq!(
            audit_pigeonhole_filter(&d2, 0, 1, 1, s3),
            Err(AuditError::NotDistinctSuccessors { v: 0, s1: 1, s2: 1 })
        );

        let mut rng = ChaCha8Rng::seed_from_u64(0x9e7);
        for _ in 0..200 {
            let d = random_digraph(&mut rng, 8, 0.3);
            let v = rng.gen_range(0..8);
            let succ: Vec<usize> = d.out_neighbors(v).iter().collect();
            if succ.len() < 2 {
                continue;
            }
            let s = VertexSet::from_bits(rng.gen::<u64>() & 0xFF);
            assert!(audit_pigeonhole_filter(&d, v, succ[0], succ[1], s)
                .unwrap()
                .holds());
        }
    }

    #[test]
    fn common_successor_bound_cases() {
        for p in [
            FamilyParams::D1 { n: 13, two_cycles: 1 },
            FamilyParams::D3 { n: 16 },
            FamilyParams::D9 { n: 14 },
        ] {
            let d = build_family(&p).unwrap();
            for v in d.max_out_degree_vertices().iter() {
                assert!(audit_common_successor_bound(&d, v).unwrap().holds());
            }
        }

        // tau = 0 leaves the bound at d+(v) + 1, which no vertex can exceed
        let star = Digraph::from_arcs(5, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(audit_common_successor_bound(&star, 0).unwrap().holds());

        let mut rng = ChaCha8Rng::seed_from_u64(0x3434);
        for _ in 0..40 {
            let d = random_free_digraph(&mut rng, 8);
            for v in 0..8 {
                assert!(audit_common_successor_bound(&d, v).unwrap().holds());
            }
        }
    }

    #[test]
    fn extremal_bounds_reports() {
        let d3 = build_family(&FamilyParams::D3 { n: 16 }).unwrap();
        let report = audit_extremal_bounds(&d3);
        assert_eq!(report.k, 9); // n/2 + 1
        assert!(report.k_within_bounds);
        assert!(report.in_stated_domain);
        assert!(report.all_within_bounds());

        let d1 = build_family(&FamilyParams::D1 { n: 13, two_cycles: 0 }).unwrap();
        let report = audit_extremal_bounds(&d1);
        assert_eq!(report.k, 7); // (n+1)/2
        assert!(report.all_within_bounds());

        let remark = crate::families::remark_digraph();
        let report = audit_extremal_bounds(&remark);
        assert!(!report.in_stated_domain); // measured only, no claim at n = 5
        assert_eq!(report.k, 4);
    }

    #[test]
    fn nonadjacent_outsets_cases() {
        let d2 = build_family(&FamilyParams::D2 { n: 13, v4_size: 2 }).unwrap();
        let v = v1_size(13); // first V3 vertex broadcasts to all of V1
        assert_eq!(d2.out_degree(v), d2.max_out_degree());
        assert!(audit_nonadjacent_outsets(&d2, v).unwrap().holds());

        // planted violation: 1->2 with 1->3->4 and 2->4 under v=0
        let planted =
            Digraph::from_arcs(5, [(0, 3), (0, 4), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        let verdict = audit_nonadjacent_outsets(&planted, 0).unwrap();
        assert_eq!(
            verdict,
            Verdict::violated(vec![("u1", 1), ("u2", 2), ("u3", 3), ("u4", 4)])
        );
        assert!(!is_free(&planted));

        let mut rng = ChaCha8Rng::seed_from_u64(0x1EAF);
        for _ in 0..40 {
            let d = random_free_digraph(&mut rng, 8);
            for v in 0..8 {
                assert!(audit_nonadjacent_outsets(&d, v).unwrap().holds());
            }
        }
    }

    #[test]
    fn equal_outdegree_pairs_on_family_members() {
        // D2's V4 2-cycles give genuine max-out-degree arcs inside V2(v)
        let d2 = build_family(&FamilyParams::D2 { n: 13, v4_size: 4 }).unwrap();
        let v = v1_size(13);
        assert!(audit_equal_outdegree_pairs(&d2, v).unwrap().holds());

        for p in [
            FamilyParams::D3 { n: 16 },
            FamilyParams::D6 { n: 14, v4_size: 4 },
            FamilyParams::D9 { n: 14 },
        ] {
            let d = build_family(&p).unwrap();
            for v in d.max_out_degree_vertices().iter() {
                assert!(
                    audit_equal_outdegree_pairs(&d, v).unwrap().holds(),
                    "{}",
                    p.describe()
                );
            }
        }
    }

    #[test]
    fn report_renders_key_value_lines() {
        let d = build_family(&FamilyParams::D1 { n: 13, two_cycles: 0 }).unwrap();
        let report = audit_report(&d, None).unwrap();
        assert!(report.free);
        assert!(report.common_successors.holds());
        let text = report.to_string();
        assert!(text.contains("order: 13"));
        assert!(text.contains("arcs: 55"));
        assert!(text.contains("common_successors: holds"));
        assert!(audit_report(&d, Some(99)).is_err());
    }
}
