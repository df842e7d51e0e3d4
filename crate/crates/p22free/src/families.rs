//! Deterministic builders for the extremal P_{2,2}-free families D1..D10,
//! the small building blocks S(x,y) and T(x,y), the 5-vertex 12-arc example,
//! and the closed form for the maximum arc count.
//!
//! Every family lives on the vertex partition `V1 ∪ V2` with
//! `|V1| = ⌊n/2⌋ + 1`. Builders use a fixed layout so that equal parameters
//! give equal digraphs:
//!
//! * `V1 = {0, .., ⌊n/2⌋}`, `V2` the rest;
//! * the vertices with no successor in `V2` sit at the lowest indices
//!   (`y = 0`, and `z = 1` whenever an S component spans or begins `V1`;
//!   `y1 = 0, y2 = 1` for D4/D5);
//! * matchings pair sources and targets in ascending index order;
//! * the isolated vertex `v` of D3/D8/D9 is the first vertex of `V2`.
//!
//! The diagrams only fix each family up to isomorphism, so any structural
//! degree of freedom beyond these positional choices is a real parameter and
//! shows up in [`enumerate_params`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::digraph::Digraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family} does not admit order {n}")]
    Order { family: FamilyId, n: usize },
    #[error("invalid parameters for {family}: {reason}")]
    Params {
        family: FamilyId,
        reason: &'static str,
    },
    #[error("{what} must be at least {min}, got {got}")]
    ComponentSize {
        what: &'static str,
        min: usize,
        got: usize,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("closed form is only defined for n >= 13, got {0}")]
pub struct FormulaDomainError(pub usize);

/// Maximum number of arcs of a P_{2,2}-free digraph of order `n >= 13`.
///
/// Three parity cases: `(n^2+4n-1)/4` for odd `n`, `(n^2+4n)/4` when `n/2`
/// is even, `(n^2+4n-4)/4` when `n/2` is odd. Below 13 the formula can be
/// beaten (see [`remark_digraph`]), so smaller orders are rejected.
pub fn ex_formula(n: usize) -> Result<usize, FormulaDomainError> {
    if n < 13 {
        return Err(FormulaDomainError(n));
    }
    let value = if n % 2 == 1 {
        (n * n + 4 * n - 1) / 4
    } else if (n / 2) % 2 == 0 {
        (n * n + 4 * n) / 4
    } else {
        (n * n + 4 * n - 4) / 4
    };
    Ok(value)
}

/// Size of `V1` in every family layout.
pub fn v1_size(n: usize) -> usize {
    n / 2 + 1
}

/// One of the ten extremal family diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
    D8,
    D9,
    D10,
}

impl FamilyId {
    pub const ALL: [FamilyId; 10] = [
        FamilyId::D1,
        FamilyId::D2,
        FamilyId::D3,
        FamilyId::D4,
        FamilyId::D5,
        FamilyId::D6,
        FamilyId::D7,
        FamilyId::D8,
        FamilyId::D9,
        FamilyId::D10,
    ];

    /// Parity admissibility: D1/D2 need odd `n`, D3 needs `n ≡ 0 (mod 4)`,
    /// D4..D10 need even `n` with odd `n/2`. All families need `n >= 13`.
    pub fn admits_order(self, n: usize) -> bool {
        if n < 13 {
            return false;
        }
        match self {
            FamilyId::D1 | FamilyId::D2 => n % 2 == 1,
            FamilyId::D3 => n % 4 == 0,
            _ => n % 2 == 0 && (n / 2) % 2 == 1,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}", *self as usize + 1)
    }
}

impl FromStr for FamilyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        FamilyId::ALL
            .iter()
            .copied()
            .find(|f| f.to_string().to_ascii_lowercase() == lower)
            .ok_or_else(|| format!("unknown family '{s}' (expected d1..d10)"))
    }
}

/// Variants of the D8 rule for the special vertex `x`: its broadcast misses
/// either `z` or the matched predecessor `w` of `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum D8Variant {
    MissesZ,
    MissesW,
}

/// Shape of a 2-arborescence, as the multiset of branch sizes hanging off
/// the root: one part per depth-1 child, part value = 1 + its leaf count.
/// The parts sum to `order - 1`; an empty shape is the bare root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArborShape {
    parts: Vec<usize>,
}

impl ArborShape {
    pub fn new(parts: Vec<usize>) -> Result<Self, FamilyError> {
        if parts.contains(&0) {
            return Err(FamilyError::Params {
                family: FamilyId::D4,
                reason: "arborescence branch sizes must be positive",
            });
        }
        Ok(ArborShape { parts })
    }

    /// A plain out-star on `order` vertices (all children at depth 1).
    pub fn star(order: usize) -> Self {
        ArborShape {
            parts: vec![1; order - 1],
        }
    }

    pub fn order(&self) -> usize {
        1 + self.parts.iter().sum::<usize>()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }
}

impl fmt::Display for ArborShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// A fully specified member of one of the families.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilyParams {
    /// S(y,z) plus `two_cycles` extra 2-cycles inside V1.
    D1 { n: usize, two_cycles: usize },
    /// S(y,z) spanning V1; `v4_size` vertices of V2 paired into 2-cycles.
    D2 { n: usize, v4_size: usize },
    /// Fully determined by its order.
    D3 { n: usize },
    /// T(y1,y2) with the given arborescence shapes plus extra 2-cycles.
    D4 {
        n: usize,
        two_cycles: usize,
        left: ArborShape,
        right: ArborShape,
    },
    /// Two S components of orders `s1 <= s2`; 2-cycles fill the rest of V1.
    D5 { n: usize, s1: usize, s2: usize },
    /// Like D2 but with both y and z unmatched; `v4_size` may be 0.
    D6 { n: usize, v4_size: usize },
    /// Like D6 but a star leaf is unmatched instead of z.
    D7 { n: usize, v4_size: usize },
    /// Two isolated V2 vertices v and x; x's broadcast per `variant`.
    D8 { n: usize, variant: D8Variant },
    /// Fully determined: one V2 2-cycle is entered by the arc x -> x1.
    D9 { n: usize },
    /// Like D1 but the unmatched pair is {y, w} with w the lowest vertex of
    /// `V1 \ {y,z}`; z itself is matched.
    D10 { n: usize, two_cycles: usize },
}

impl FamilyParams {
    pub fn family(&self) -> FamilyId {
        match self {
            FamilyParams::D1 { .. } => FamilyId::D1,
            FamilyParams::D2 { .. } => FamilyId::D2,
            FamilyParams::D3 { .. } => FamilyId::D3,
            FamilyParams::D4 { .. } => FamilyId::D4,
            FamilyParams::D5 { .. } => FamilyId::D5,
            FamilyParams::D6 { .. } => FamilyId::D6,
            FamilyParams::D7 { .. } => FamilyId::D7,
            FamilyParams::D8 { .. } => FamilyId::D8,
            FamilyParams::D9 { .. } => FamilyId::D9,
            FamilyParams::D10 { .. } => FamilyId::D10,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            FamilyParams::D1 { n, .. }
            | FamilyParams::D2 { n, .. }
            | FamilyParams::D3 { n }
            | FamilyParams::D4 { n, .. }
            | FamilyParams::D5 { n, .. }
            | FamilyParams::D6 { n, .. }
            | FamilyParams::D7 { n, .. }
            | FamilyParams::D8 { n, .. }
            | FamilyParams::D9 { n }
            | FamilyParams::D10 { n, .. } => n,
        }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let family = self.family();
        let n = self.n();
        if !family.admits_order(n) {
            return Err(FamilyError::Order { family, n });
        }
        let m = v1_size(n);
        let err = |reason| Err(FamilyError::Params { family, reason });
        match *self {
            FamilyParams::D1 { two_cycles, .. } | FamilyParams::D10 { two_cycles, .. } => {
                if 2 * two_cycles + 2 > m {
                    return err("2-cycles leave no room for the S component");
                }
            }
            FamilyParams::D2 { v4_size, .. } => {
                if v4_size % 2 != 0 || v4_size < 2 {
                    return err("v4_size must be even and at least 2");
                }
                if v4_size + 1 > m - 1 {
                    return err("V3 must keep at least one vertex");
                }
            }
            FamilyParams::D3 { .. } | FamilyParams::D9 { .. } | FamilyParams::D8 { .. } => {}
            FamilyParams::D4 {
                two_cycles,
                ref left,
                ref right,
                ..
            } => {
                let t = left.order() + right.order();
                if t < 2 {
                    return err("T component needs both roots");
                }
                if 2 * two_cycles + t != m {
                    return err("component orders must fill V1 exactly");
                }
            }
            FamilyParams::D5 { s1, s2, .. } => {
                if s1 < 2 || s2 < 2 {
                    return err("S components need at least their 2-cycle");
                }
                if s1 + s2 > m || (m - s1 - s2) % 2 != 0 {
                    return err("S components plus 2-cycles must fill V1 exactly");
                }
            }
            FamilyParams::D6 { v4_size, .. } => {
                if v4_size % 2 != 0 || v4_size > m - 2 {
                    return err("v4_size must be even and fit inside V2");
                }
            }
            FamilyParams::D7 { v4_size, .. } => {
                if v4_size % 2 != 0 || v4_size + 1 > m - 2 {
                    return err("v4_size must be even and keep V3 nonempty");
                }
            }
        }
        Ok(())
    }

    /// Compact one-line rendering, used in document metadata.
    pub fn describe(&self) -> String {
        match self {
            FamilyParams::D1 { n, two_cycles } => format!("D1 n={n} two_cycles={two_cycles}"),
            FamilyParams::D2 { n, v4_size } => format!("D2 n={n} v4={v4_size}"),
            FamilyParams::D3 { n } => format!("D3 n={n}"),
            FamilyParams::D4 {
                n,
                two_cycles,
                left,
                right,
            } => format!("D4 n={n} two_cycles={two_cycles} left={left} right={right}"),
            FamilyParams::D5 { n, s1, s2 } => format!("D5 n={n} s1={s1} s2={s2}"),
            FamilyParams::D6 { n, v4_size } => format!("D6 n={n} v4={v4_size}"),
            FamilyParams::D7 { n, v4_size } => format!("D7 n={n} v4={v4_size}"),
            FamilyParams::D8 { n, variant } => format!(
                "D8 n={n} variant={}",
                match variant {
                    D8Variant::MissesZ => "a",
                    D8Variant::MissesW => "b",
                }
            ),
            FamilyParams::D9 { n } => format!("D9 n={n}"),
            FamilyParams::D10 { n, two_cycles } => format!("D10 n={n} two_cycles={two_cycles}"),
        }
    }
}

/// S(x,y): the 2-cycle `x <-> y` together with an out-star centered at `y`.
/// Vertices `0..order` with `x = 0`, `y = 1`; arc count equals `order`.
pub fn build_s(order: usize) -> Result<Digraph, FamilyError> {
    if order < 2 {
        return Err(FamilyError::ComponentSize {
            what: "S component order",
            min: 2,
            got: order,
        });
    }
    let mut d = Digraph::new(order).expect("order within representation");
    add_s_component(&mut d, 0, 1, 2..order);
    Ok(d)
}

/// T(x,y): the 2-cycle `x <-> y` together with two 2-arborescences rooted at
/// `x = 0` and `y = 1` (built as out-stars here). `left` and `right` are the
/// arborescence orders including the roots; arc count is `left + right`.
pub fn build_t(left: usize, right: usize) -> Result<Digraph, FamilyError> {
    if left < 1 || right < 1 {
        return Err(FamilyError::ComponentSize {
            what: "arborescence order",
            min: 1,
            got: left.min(right),
        });
    }
    let mut d = Digraph::new(left + right).expect("order within representation");
    d.add_arc(0, 1).unwrap();
    d.add_arc(1, 0).unwrap();
    let mut next = 2;
    place_arborescence(&mut d, 0, &ArborShape::star(left), &mut next);
    place_arborescence(&mut d, 1, &ArborShape::star(right), &mut next);
    Ok(d)
}

/// The 5-vertex digraph with arc set
/// `{0<->1, 0<->2, 1<->2, 0<->3, 0<->4, 3<->4}`: P_{2,2}-free with 12 arcs,
/// one more than the closed form would give at n = 5.
pub fn remark_digraph() -> Digraph {
    let pairs = [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)];
    let mut d = Digraph::new(5).unwrap();
    for (u, v) in pairs {
        d.add_arc(u, v).unwrap();
        d.add_arc(v, u).unwrap();
    }
    d
}

fn add_s_component(
    d: &mut Digraph,
    partner: usize,
    center: usize,
    leaves: impl IntoIterator<Item = usize>,
) {
    d.add_arc(partner, center).unwrap();
    d.add_arc(center, partner).unwrap();
    for leaf in leaves {
        d.add_arc(center, leaf).unwrap();
    }
}

/// Pairs `from..to` into consecutive 2-cycles.
fn add_two_cycle_run(d: &mut Digraph, from: usize, to: usize) {
    debug_assert!((to - from) % 2 == 0);
    let mut i = from;
    while i < to {
        d.add_arc(i, i + 1).unwrap();
        d.add_arc(i + 1, i).unwrap();
        i += 2;
    }
}

fn place_arborescence(d: &mut Digraph, root: usize, shape: &ArborShape, next: &mut usize) {
    for &part in shape.parts() {
        let child = *next;
        *next += 1;
        d.add_arc(root, child).unwrap();
        for _ in 1..part {
            d.add_arc(child, *next).unwrap();
            *next += 1;
        }
    }
}

fn broadcast(d: &mut Digraph, sources: impl IntoIterator<Item = usize>, m: usize, skip: Option<usize>) {
    for u in sources {
        for t in 0..m {
            if Some(t) != skip {
                d.add_arc(u, t).unwrap();
            }
        }
    }
}

/// Builds the family member described by `p`. The output always has exactly
/// `ex_formula(n)` arcs and is P_{2,2}-free.
pub fn build_family(p: &FamilyParams) -> Result<Digraph, FamilyError> {
    p.validate()?;
    let n = p.n();
    let m = v1_size(n);
    let mut d = Digraph::new(n).expect("validated order");
    match *p {
        FamilyParams::D1 { two_cycles, .. } => {
            let s = m - 2 * two_cycles;
            add_s_component(&mut d, 0, 1, 2..s);
            add_two_cycle_run(&mut d, s, m);
            for i in 1..m {
                d.add_arc(i, m + i - 1).unwrap();
            }
            broadcast(&mut d, m..n, m, None);
        }
        FamilyParams::D2 { v4_size, .. } => {
            let v3 = (m - 1) - v4_size;
            add_s_component(&mut d, 0, 1, 2..m);
            add_two_cycle_run(&mut d, m + v3, n);
            // z = 1 is matched to the first V3 vertex.
            for i in 1..m {
                d.add_arc(i, m + i - 1).unwrap();
            }
            broadcast(&mut d, m..m + v3, m, None);
            broadcast(&mut d, m + v3..n, m, Some(1));
        }
        FamilyParams::D3 { .. } => {
            add_s_component(&mut d, 0, 1, 2..m);
            add_two_cycle_run(&mut d, m + 1, n);
            d.add_arc(1, m).unwrap(); // z -> v
            for i in 2..m {
                d.add_arc(i, m + i - 2).unwrap();
            }
            broadcast(&mut d, [m], m, None);
            broadcast(&mut d, m + 1..n, m, Some(1));
        }
        FamilyParams::D4 {
            two_cycles,
            ref left,
            ref right,
            ..
        } => {
            let t = m - 2 * two_cycles;
            d.add_arc(0, 1).unwrap();
            d.add_arc(1, 0).unwrap();
            let mut next = 2;
            place_arborescence(&mut d, 0, left, &mut next);
            place_arborescence(&mut d, 1, right, &mut next);
            debug_assert_eq!(next, t);
            add_two_cycle_run(&mut d, t, m);
            for i in 2..m {
                d.add_arc(i, m + i - 2).unwrap();
            }
            broadcast(&mut d, m..n, m, None);
        }
        FamilyParams::D5 { s1, s2, .. } => {
            add_s_component(&mut d, 0, 2, std::iter::empty());
            add_s_component(&mut d, 1, 3, std::iter::empty());
            let mut next = 4;
            for _ in 0..s1 - 2 {
                d.add_arc(2, next).unwrap();
                next += 1;
            }
            for _ in 0..s2 - 2 {
                d.add_arc(3, next).unwrap();
                next += 1;
            }
            add_two_cycle_run(&mut d, next, m);
            for i in 2..m {
                d.add_arc(i, m + i - 2).unwrap();
            }
            broadcast(&mut d, m..n, m, None);
        }
        FamilyParams::D6 { v4_size, .. } => {
            let v3 = (m - 2) - v4_size;
            add_s_component(&mut d, 0, 1, 2..m);
            add_two_cycle_run(&mut d, m + v3, n);
            for i in 2..m {
                d.add_arc(i, m + i - 2).unwrap();
            }
            broadcast(&mut d, m..m + v3, m, None);
            broadcast(&mut d, m + v3..n, m, Some(1));
        }
        FamilyParams::D7 { v4_size, .. } => {
            let v3 = (m - 2) - v4_size;
            d = d7_instance(n, v3, 2);
        }
        FamilyParams::D8 { variant, .. } => {
            add_s_component(&mut d, 0, 1, 2..m);
            add_two_cycle_run(&mut d, m + 2, n);
            d.add_arc(1, m).unwrap(); // z -> v
            for i in 2..m {
                d.add_arc(i, m + i - 2).unwrap();
            }
            broadcast(&mut d, [m], m, None);
            broadcast(&mut d, m + 2..n, m, Some(1));
            let skip = match variant {
                D8Variant::MissesZ => 1,
                // w = 2 is the matched predecessor of v.
                D8Variant::MissesW => 2,
            };
            broadcast(&mut d, [m + 1], m, Some(skip));
        }
        FamilyParams::D9 { .. } => {
            add_s_component(&mut d, 0, 1, 2..m);
            add_two_cycle_run(&mut d, m + 2, n);
            d.add_arc(m + 1, m + 2).unwrap(); // x -> x1, entering the 2-cycle x1 <-> x2
            d.add_arc(1, m).unwrap();
            for i in 2..m {
                d.add_arc(i, m + i - 2).unwrap();
            }
            broadcast(&mut d, [m], m, None);
            broadcast(&mut d, m + 2..n, m, Some(1));
            // x -> V1 \ {z, x2*}; x2 = m+3 is matched from vertex 5.
            for t in 0..m {
                if t != 1 && t != 5 {
                    d.add_arc(m + 1, t).unwrap();
                }
            }
        }
        FamilyParams::D10 { two_cycles, .. } => {
            d = d10_instance(n, two_cycles, 2);
        }
    }
    Ok(d)
}

/// D7 with an explicit choice of the unmatched star leaf `x`; all choices
/// give isomorphic digraphs, so `build_family` fixes `x = 2`.
pub(crate) fn d7_instance(n: usize, v3: usize, x: usize) -> Digraph {
    let m = v1_size(n);
    debug_assert!((2..m).contains(&x));
    let mut d = Digraph::new(n).unwrap();
    add_s_component(&mut d, 0, 1, 2..m);
    add_two_cycle_run(&mut d, m + v3, n);
    d.add_arc(1, m).unwrap(); // z matched into V3
    let mut target = m + 1;
    for i in 2..m {
        if i != x {
            d.add_arc(i, target).unwrap();
            target += 1;
        }
    }
    broadcast(&mut d, m..m + v3, m, None);
    broadcast(&mut d, m + v3..n, m, Some(1));
    d
}

/// D10 with an explicit choice of the second unmatched vertex `w`. Choices
/// within the star-leaf orbit are isomorphic; `build_family` fixes `w` to
/// the lowest vertex of `V1 \ {y,z}`. Picking a 2-cycle vertex instead
/// reproduces a D5 member with an order-2 S component.
pub(crate) fn d10_instance(n: usize, two_cycles: usize, w: usize) -> Digraph {
    let m = v1_size(n);
    let s = m - 2 * two_cycles;
    debug_assert!((2..m).contains(&w));
    let mut d = Digraph::new(n).unwrap();
    add_s_component(&mut d, 0, 1, 2..s);
    add_two_cycle_run(&mut d, s, m);
    let mut target = m;
    for i in 1..m {
        if i != w {
            d.add_arc(i, target).unwrap();
            target += 1;
        }
    }
    broadcast(&mut d, m..n, m, None);
    d
}

/// All partitions of `k` with parts in non-increasing order, largest-first.
fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k.max(1), &mut Vec::new(), &mut out);
    out
}

/// All admissible parameter tuples for `(family, n)` under the canonical
/// positional choices; empty when the family does not admit the order.
pub fn enumerate_params(family: FamilyId, n: usize) -> Vec<FamilyParams> {
    if !family.admits_order(n) {
        return Vec::new();
    }
    let m = v1_size(n);
    let mut out = Vec::new();
    match family {
        FamilyId::D1 => {
            for c in 0..=(m - 2) / 2 {
                out.push(FamilyParams::D1 { n, two_cycles: c });
            }
        }
        FamilyId::D2 => {
            let mut v4 = 2;
            while v4 <= m - 2 {
                out.push(FamilyParams::D2 { n, v4_size: v4 });
                v4 += 2;
            }
        }
        FamilyId::D3 => out.push(FamilyParams::D3 { n }),
        FamilyId::D4 => {
            for c in 0..=(m - 2) / 2 {
                let t = m - 2 * c;
                for a in 1..=t / 2 {
                    let b = t - a;
                    for lp in partitions(a - 1) {
                        for rp in partitions(b - 1) {
                            if a == b && lp > rp {
                                continue; // unordered pair of equal-order shapes
                            }
                            out.push(FamilyParams::D4 {
                                n,
                                two_cycles: c,
                                left: ArborShape::new(lp.clone()).unwrap(),
                                right: ArborShape::new(rp).unwrap(),
                            });
                        }
                    }
                }
            }
        }
        FamilyId::D5 => {
            for s1 in 2..=m / 2 {
                for s2 in s1..=m - s1 {
                    if (m - s1 - s2) % 2 == 0 {
                        out.push(FamilyParams::D5 { n, s1, s2 });
                    }
                }
            }
        }
        FamilyId::D6 => {
            let mut v4 = 0;
            while v4 <= m - 2 {
                out.push(FamilyParams::D6 { n, v4_size: v4 });
                v4 += 2;
            }
        }
        FamilyId::D7 => {
            let mut v4 = 0;
            while v4 <= m - 3 {
                out.push(FamilyParams::D7 { n, v4_size: v4 });
                v4 += 2;
            }
        }
        FamilyId::D8 => {
            out.push(FamilyParams::D8 {
                n,
                variant: D8Variant::MissesZ,
            });
            out.push(FamilyParams::D8 {
                n,
                variant: D8Variant::MissesW,
            });
        }
        FamilyId::D9 => out.push(FamilyParams::D9 { n }),
        FamilyId::D10 => {
            for c in 0..=(m - 2) / 2 {
                out.push(FamilyParams::D10 { n, two_cycles: c });
            }
        }
    }
    debug_assert!(out.iter().all(|p| p.validate().is_ok()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::is_free;
    use crate::digraph::VertexSet;

    #[test]
    fn ex_formula_parity_cases() {
        assert_eq!(ex_formula(13), Ok(55));
        assert_eq!(ex_formula(14), Ok(62));
        assert_eq!(ex_formula(16), Ok(80));
        assert_eq!(ex_formula(5), Err(FormulaDomainError(5)));
        assert_eq!(ex_formula(12), Err(FormulaDomainError(12)));
    }

    #[test]
    fn s_component_shapes() {
        let s2 = build_s(2).unwrap();
        assert_eq!(s2.arc_count(), 2);

        let s5 = build_s(5).unwrap();
        assert_eq!(s5.arc_count(), 5);
        assert_eq!(s5.out_degree(1), 4);
        assert_eq!(s5.out_degree(0), 1);
        for leaf in 2..5 {
            assert_eq!(s5.out_degree(leaf), 0);
        }

        assert!(build_s(1).is_err());
    }

    /// Checks the arborescence contract by path counting: ignoring the root
    /// 2-cycle, every vertex is reached from its root by exactly one
    /// directed path of length at most 2.
    fn assert_t_shape(d: &Digraph, left: usize, right: usize) {
        let mut acyclic = d.clone();
        acyclic.remove_arc(0, 1).unwrap();
        acyclic.remove_arc(1, 0).unwrap();
        let order = d.order();
        assert_eq!(order, left + right);
        for v in 2..order {
            let root = if v < 2 + (left - 1) { 0 } else { 1 };
            let mut paths = 0;
            if acyclic.has_arc(root, v) {
                paths += 1;
            }
            for mid in 0..order {
                if acyclic.has_arc(root, mid) && acyclic.has_arc(mid, v) {
                    paths += 1;
                }
            }
            assert_eq!(paths, 1, "vertex {v}");
        }
        // removing the 2-cycle leaves a forest: every non-root has in-degree 1
        for v in 2..order {
            assert_eq!(acyclic.in_degree(v), 1);
        }
        assert_eq!(acyclic.in_degree(0), 0);
        assert_eq!(acyclic.in_degree(1), 0);
    }

    #[test]
    fn t_component_shapes() {
        let degenerate = build_t(1, 1).unwrap();
        assert_eq!(degenerate.arc_count(), 2);

        let t = build_t(3, 2).unwrap();
        assert_eq!(t.order(), 5);
        assert_eq!(t.arc_count(), 5);
        assert_t_shape(&t, 3, 2);

        assert!(build_t(0, 2).is_err());
    }

    #[test]
    fn remark_digraph_properties() {
        let d = remark_digraph();
        assert_eq!(d.order(), 5);
        assert_eq!(d.arc_count(), 12);
        assert!(is_free(&d));
        assert_eq!(d.out_degree(0), 4);
        // beats the closed form evaluated at 5: (25 + 20 - 1) / 4 = 11
        assert!(d.arc_count() > 11);
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_params(FamilyId::D3, 16).len(), 1);
        assert_eq!(enumerate_params(FamilyId::D1, 13).len(), 3);
        assert!(enumerate_params(FamilyId::D1, 14).is_empty());
        assert!(enumerate_params(FamilyId::D4, 16).is_empty());
        assert_eq!(enumerate_params(FamilyId::D9, 14).len(), 1);
        assert_eq!(enumerate_params(FamilyId::D8, 14).len(), 2);
    }

    #[test]
    fn builders_are_deterministic() {
        for family in FamilyId::ALL {
            for n in 13..=16 {
                for p in enumerate_params(family, n) {
                    assert_eq!(build_family(&p).unwrap(), build_family(&p).unwrap());
                }
            }
        }
    }

    #[test]
    fn d1_at_13_is_extremal() {
        let d = build_family(&FamilyParams::D1 { n: 13, two_cycles: 0 }).unwrap();
        assert_eq!(d.arc_count(), 55);
        assert!(is_free(&d));
    }

    #[test]
    fn d3_at_16_arc_breakdown() {
        let d = build_family(&FamilyParams::D3 { n: 16 }).unwrap();
        assert_eq!(d.arc_count(), 80);
        assert!(is_free(&d));

        let m = v1_size(16);
        let v1: VertexSet = (0..m).collect();
        let v2: VertexSet = (m..16).collect();
        assert_eq!(d.e(v1, v1), 9);
        assert_eq!(d.e(v1, v2), 8);
        assert_eq!(d.e(v2, v2), 6);
        let v_only = VertexSet::singleton(m);
        assert_eq!(d.e(v_only, v1), 9);
        assert_eq!(d.e(v2 - v_only, v1), 48);
    }

    #[test]
    fn d4_at_14_is_extremal() {
        let p = FamilyParams::D4 {
            n: 14,
            two_cycles: 0,
            left: ArborShape::star(4),
            right: ArborShape::star(4),
        };
        let d = build_family(&p).unwrap();
        assert_eq!(d.arc_count(), 62);
        assert!(is_free(&d));
    }

    #[test]
    fn d9_unique_two_path_in_v2() {
        let d = build_family(&FamilyParams::D9 { n: 14 }).unwrap();
        assert_eq!(d.arc_count(), 62);
        assert!(is_free(&d));

        let m = v1_size(14);
        let inner = d.induced((m..14).collect()).unwrap();
        // 2-paths u -> v -> w with all three distinct, inside D(V2)
        let mut two_paths = Vec::new();
        for u in 0..inner.order() {
            for v in 0..inner.order() {
                for w in 0..inner.order() {
                    if u != v && v != w && u != w && inner.has_arc(u, v) && inner.has_arc(v, w) {
                        two_paths.push((u, v, w));
                    }
                }
            }
        }
        // x = m+1, x1 = m+2, x2 = m+3 renumber to 1, 2, 3 inside V2
        assert_eq!(two_paths, vec![(1, 2, 3)]);
    }

    #[test]
    fn full_sweep_small_orders() {
        for family in FamilyId::ALL {
            for n in 13..=16 {
                for p in enumerate_params(family, n) {
                    let d = build_family(&p).unwrap();
                    assert_eq!(d.order(), n);
                    assert_eq!(d.arc_count(), ex_formula(n).unwrap(), "{}", p.describe());
                    assert!(is_free(&d), "{}", p.describe());
                }
            }
        }
    }

    #[test]
    fn d1_arc_group_counts() {
        let d = build_family(&FamilyParams::D1 { n: 13, two_cycles: 0 }).unwrap();
        let m = v1_size(13);
        let v1: VertexSet = (0..m).collect();
        let v2: VertexSet = (m..13).collect();
        // full broadcast: 6 * 7 arcs from V2 into V1
        assert_eq!(d.e(v2, v1), 42);
        // the f arcs alone form the perfect matching V1\{y} -> V2
        assert!(d.matches(v1 - VertexSet::singleton(0), v2));
    }

    #[test]
    fn mutual_partners_of_the_star_center() {
        // in D3 the center is mutual with both y and v (z->v from f, v->V1
        // from g); in D6 only with y
        let d3 = build_family(&FamilyParams::D3 { n: 16 }).unwrap();
        assert_eq!(d3.tau(1), 2);
        let d6 = build_family(&FamilyParams::D6 { n: 14, v4_size: 2 }).unwrap();
        assert_eq!(d6.tau(1), 1);
    }

    #[test]
    fn d1_rule_g_rows() {
        let d = build_family(&FamilyParams::D1 { n: 15, two_cycles: 1 }).unwrap();
        let m = v1_size(15);
        let v1: VertexSet = (0..m).collect();
        for u in m..15 {
            assert!(v1.is_subset_of(d.out_neighbors(u)));
            assert_eq!(d.out_degree(u), m);
        }
    }

    #[test]
    fn v1_arc_budget_for_matching_families() {
        // D1/D4/D5/D10: every V1 component contributes arcs equal to its order.
        let candidates = [
            FamilyParams::D1 { n: 13, two_cycles: 2 },
            FamilyParams::D4 {
                n: 14,
                two_cycles: 1,
                left: ArborShape::star(3),
                right: ArborShape::star(3),
            },
            FamilyParams::D5 { n: 14, s1: 2, s2: 4 },
            FamilyParams::D10 { n: 14, two_cycles: 1 },
        ];
        for p in candidates {
            let n = p.n();
            let m = v1_size(n);
            let d = build_family(&p).unwrap();
            let v1: VertexSet = (0..m).collect();
            assert_eq!(d.e(v1, v1), m, "{}", p.describe());
        }
    }

    #[test]
    fn exactly_two_v1_vertices_feed_v1_in_spanning_s_families() {
        let candidates = [
            FamilyParams::D2 { n: 13, v4_size: 2 },
            FamilyParams::D3 { n: 16 },
            FamilyParams::D6 { n: 14, v4_size: 2 },
            FamilyParams::D7 { n: 14, v4_size: 2 },
            FamilyParams::D8 {
                n: 14,
                variant: D8Variant::MissesZ,
            },
            FamilyParams::D9 { n: 14 },
        ];
        for p in candidates {
            let n = p.n();
            let m = v1_size(n);
            let d = build_family(&p).unwrap();
            let v1: VertexSet = (0..m).collect();
            let sources: Vec<usize> = (0..m)
                .filter(|&u| !(d.out_neighbors(u) & v1).is_empty())
                .collect();
            assert_eq!(sources, vec![0, 1], "{}", p.describe());
        }
    }

    #[test]
    fn invalid_params_are_rejected() {
        assert!(build_family(&FamilyParams::D1 { n: 13, two_cycles: 3 }).is_err());
        assert!(build_family(&FamilyParams::D2 { n: 13, v4_size: 6 }).is_err());
        assert!(build_family(&FamilyParams::D2 { n: 13, v4_size: 3 }).is_err());
        assert!(build_family(&FamilyParams::D3 { n: 14 }).is_err());
        assert!(build_family(&FamilyParams::D5 { n: 14, s1: 2, s2: 3 }).is_err());
        assert!(build_family(&FamilyParams::D9 { n: 16 }).is_err());
    }

    #[test]
    fn partitions_basic() {
        assert_eq!(partitions(0), vec![Vec::<usize>::new()]);
        assert_eq!(partitions(3).len(), 3);
        assert_eq!(partitions(5).len(), 7);
    }
}
