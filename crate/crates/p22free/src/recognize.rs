//! Membership test for the extremal classes: a digraph of order `n >= 13`
//! attains the maximum P_{2,2}-free size iff it (or its reverse) is
//! isomorphic to a member of one of the families D1..D10 admissible at `n`.
//!
//! Recognition works by canonical-form lookup against the enumerated family
//! templates rather than structural decoding: the template count per order
//! is modest and canonical comparison is exact.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::detect::{find_witness, P22Witness};
use crate::digraph::Digraph;
use crate::families::{build_family, enumerate_params, ex_formula, FamilyId};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("recognition is only defined for n >= 13, got {0}")]
pub struct DomainError(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    AsIs,
    Reversed,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::AsIs => write!(f, "as-is"),
            Orientation::Reversed => write!(f, "reversed"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    WrongArcCount { expected: usize, actual: usize },
    ContainsP22(P22Witness),
    NoFamilyMatch,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::WrongArcCount { .. } => write!(f, "wrong arc count"),
            Reason::ContainsP22(_) => write!(f, "contains P2,2"),
            Reason::NoFamilyMatch => write!(f, "no family match"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Member {
        family: FamilyId,
        orientation: Orientation,
    },
    NotExtremal(Reason),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Member {
                family,
                orientation,
            } => write!(f, "Member({family}, {orientation})"),
            Classification::NotExtremal(reason) => write!(f, "NotExtremal({reason})"),
        }
    }
}

/// Immutable table of the canonical forms of every family template at a
/// fixed order. Build once, classify many.
pub struct Recognizer {
    n: usize,
    expected_arcs: usize,
    templates: Vec<(FamilyId, BTreeSet<CanonicalForm>)>,
}

impl Recognizer {
    pub fn new(n: usize) -> Result<Self, DomainError> {
        let expected_arcs = ex_formula(n).map_err(|e| DomainError(e.0))?;
        let templates = FamilyId::ALL
            .iter()
            .map(|&family| {
                let forms = enumerate_params(family, n)
                    .iter()
                    .map(|p| canonical_form(&build_family(p).expect("enumerated params build")))
                    .collect();
                (family, forms)
            })
            .collect();
        Ok(Recognizer {
            n,
            expected_arcs,
            templates,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of isomorphism classes among all templates at this order.
    pub fn isomorphism_class_count(&self) -> usize {
        let mut all: BTreeSet<&CanonicalForm> = BTreeSet::new();
        for (_, forms) in &self.templates {
            all.extend(forms.iter());
        }
        all.len()
    }

    /// Classifies a digraph of the table's order. Gates run in a fixed
    /// sequence: arc count, freeness, then canonical lookup family by
    /// family, checking the digraph before its reverse.
    pub fn classify(&self, d: &Digraph) -> Classification {
        assert_eq!(d.order(), self.n, "digraph order differs from the table");
        let actual = d.arc_count();
        if actual != self.expected_arcs {
            return Classification::NotExtremal(Reason::WrongArcCount {
                expected: self.expected_arcs,
                actual,
            });
        }
        if let Some(w) = find_witness(d) {
            return Classification::NotExtremal(Reason::ContainsP22(w));
        }
        let form = canonical_form(d);
        let reversed_form = canonical_form(&d.reverse());
        for (family, forms) in &self.templates {
            if forms.contains(&form) {
                return Classification::Member {
                    family: *family,
                    orientation: Orientation::AsIs,
                };
            }
            if forms.contains(&reversed_form) {
                return Classification::Member {
                    family: *family,
                    orientation: Orientation::Reversed,
                };
            }
        }
        Classification::NotExtremal(Reason::NoFamilyMatch)
    }

    pub fn is_member(&self, d: &Digraph) -> bool {
        matches!(self.classify(d), Classification::Member { .. })
    }

    /// Every matching family with orientation, not just the first.
    pub fn all_matches(&self, d: &Digraph) -> Vec<(FamilyId, Orientation)> {
        if d.arc_count() != self.expected_arcs || find_witness(d).is_some() {
            return Vec::new();
        }
        let form = canonical_form(d);
        let reversed_form = canonical_form(&d.reverse());
        let mut out = Vec::new();
        for (family, forms) in &self.templates {
            if forms.contains(&form) {
                out.push((*family, Orientation::AsIs));
            }
            if forms.contains(&reversed_form) {
                out.push((*family, Orientation::Reversed));
            }
        }
        out
    }

    #[cfg(test)]
    fn clear_templates(&mut self) {
        for (_, forms) in &mut self.templates {
            forms.clear();
        }
    }
}

/// One-shot classification; builds the template table for `d.order()`.
pub fn classify(d: &Digraph) -> Result<Classification, DomainError> {
    Ok(Recognizer::new(d.order())?.classify(d))
}

/// True iff `d` attains the maximum arc count among P_{2,2}-free digraphs
/// of its order.
pub fn is_in_ex(d: &Digraph) -> Result<bool, DomainError> {
    Ok(Recognizer::new(d.order())?.is_member(d))
}
