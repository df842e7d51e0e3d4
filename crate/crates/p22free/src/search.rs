//! Independent computation of the maximum P_{2,2}-free size: exhaustive
//! enumeration of every labeled digraph for tiny orders, branch-and-bound
//! over arc decisions for small ones. This is the desk-scale cross-check for
//! the construction formulas; it cannot reach the orders the closed form is
//! stated for, and does not try to.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::detect::{is_free, stays_free_after};
use crate::digraph::Digraph;
use crate::families::{build_family, enumerate_params, ex_formula, FamilyId};

/// Exhaustive enumeration visits `2^(n(n-1))` digraphs; beyond this order it
/// is pointless to attempt.
pub const MAX_EXHAUSTIVE_ORDER: usize = 5;

/// Thread count honored by the exhaustive tier (the branch-and-bound tier is
/// sequential so that node accounting stays deterministic).
pub const THREADS_ENV_VAR: &str = "P22_THREADS";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE_ORDER}, got {0}")]
    TooLarge(usize),
    #[error("invalid search configuration: {0}")]
    Config(&'static str),
    #[error("lower-bound verification needs n >= 13, got {0}")]
    Domain(usize),
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: usize,
    /// Starting incumbent, e.g. the arc count of a constructed family member.
    pub seed_lower_bound: Option<usize>,
    /// Cap on explored decision nodes; exceeding it ends the search with
    /// `optimal = false`.
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    pub collect_witnesses: bool,
}

impl SearchConfig {
    pub fn new(n: usize) -> Self {
        SearchConfig {
            n,
            seed_lower_bound: None,
            node_limit: None,
            time_limit: None,
            collect_witnesses: true,
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.n == 0 {
            return Err(SearchError::Config("order must be positive"));
        }
        if self.node_limit == Some(0) {
            return Err(SearchError::Config("node limit must be positive"));
        }
        if self.time_limit == Some(Duration::ZERO) {
            return Err(SearchError::Config("time limit must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub best_arcs: usize,
    /// True iff the search space was exhausted under the bound logic, so
    /// `best_arcs` is the true maximum.
    pub optimal: bool,
    /// Free digraphs attaining `best_arcs`, deduplicated by canonical form
    /// and ordered by it. Empty when witness collection is off or a seeded
    /// incumbent was never reached.
    pub witnesses: Vec<Digraph>,
    /// Decision nodes explored (0 for the exhaustive tier).
    pub nodes: u64,
}

/// Exact maximum by testing every labeled digraph of order `n`.
///
/// The pair space is split into index ranges; `P22_THREADS` (default 1)
/// ranges run concurrently. Results are merged by maximum and canonical
/// dedup, so the outcome does not depend on the thread count.
pub fn max_free_exhaustive(n: usize) -> Result<SearchResult, SearchError> {
    max_free_exhaustive_with(n, true)
}

pub fn max_free_exhaustive_with(
    n: usize,
    collect_witnesses: bool,
) -> Result<SearchResult, SearchError> {
    if n == 0 {
        return Err(SearchError::Config("order must be positive"));
    }
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(SearchError::TooLarge(n));
    }

    let pairs: Vec<(usize, usize)> = ordered_pairs(n);
    let total: u64 = 1 << pairs.len();
    let threads = thread_count();
    let chunk = total.div_ceil(threads as u64).max(1);

    let scan = |from: u64, to: u64| -> (usize, BTreeMap<CanonicalForm, Digraph>) {
        let mut best = 0usize;
        let mut witnesses: BTreeMap<CanonicalForm, Digraph> = BTreeMap::new();
        for bits in from..to {
            let d = digraph_from_bits(n, &pairs, bits);
            let arcs = bits.count_ones() as usize;
            if arcs < best || !is_free(&d) {
                continue;
            }
            if arcs > best {
                best = arcs;
                witnesses.clear();
            }
            if collect_witnesses {
                witnesses.entry(canonical_form(&d)).or_insert(d);
            }
        }
        (best, witnesses)
    };

    let mut partials: Vec<(usize, BTreeMap<CanonicalForm, Digraph>)> = Vec::new();
    if threads <= 1 {
        partials.push(scan(0, total));
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|i| {
                    let from = (i * chunk).min(total);
                    let to = ((i + 1) * chunk).min(total);
                    scope.spawn(move || scan(from, to))
                })
                .collect();
            for h in handles {
                partials.push(h.join().expect("scan thread"));
            }
        });
    }

    let best = partials.iter().map(|(b, _)| *b).max().unwrap_or(0);
    let mut merged: BTreeMap<CanonicalForm, Digraph> = BTreeMap::new();
    for (b, ws) in partials {
        if b == best {
            merged.extend(ws);
        }
    }
    Ok(SearchResult {
        best_arcs: best,
        optimal: true,
        witnesses: merged.into_values().collect(),
        nodes: 0,
    })
}

fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    // unordered pairs in lexicographic order, both directions consecutive
    let mut pairs = Vec::with_capacity(n * (n - 1));
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
            pairs.push((v, u));
        }
    }
    pairs
}

fn digraph_from_bits(n: usize, pairs: &[(usize, usize)], bits: u64) -> Digraph {
    let mut d = Digraph::new(n).expect("order checked");
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if bits >> i & 1 == 1 {
            d.add_arc(u, v).expect("pair in range");
        }
    }
    d
}

fn thread_count() -> usize {
    std::env::var(THREADS_ENV_VAR)
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(1)
}

/// Branch-and-bound over arc decisions: unordered pairs in lexicographic
/// order, both directions of a pair decided consecutively, inclusion tried
/// before exclusion. A branch is cut when even taking every undecided arc
/// cannot exceed the incumbent, and freeness is maintained incrementally so
/// each inclusion costs one local re-check.
pub fn max_free_branch_and_bound(config: &SearchConfig) -> Result<SearchResult, SearchError> {
    config.validate()?;
    let mut searcher = BnbSearcher {
        slots: ordered_pairs(config.n),
        current: Digraph::new(config.n).expect("order checked"),
        best: config.seed_lower_bound.unwrap_or(0),
        arcs: 0,
        witnesses: BTreeMap::new(),
        collect: config.collect_witnesses,
        nodes: 0,
        node_limit: config.node_limit,
        deadline: config.time_limit.map(|t| Instant::now() + t),
        exhausted: true,
    };
    if searcher.best == 0 && searcher.collect {
        // the empty digraph attains an unseeded incumbent of zero
        searcher.record_current();
    }
    searcher.decide(0);
    Ok(SearchResult {
        best_arcs: searcher.best,
        optimal: searcher.exhausted,
        witnesses: searcher.witnesses.into_values().collect(),
        nodes: searcher.nodes,
    })
}

struct BnbSearcher {
    slots: Vec<(usize, usize)>,
    current: Digraph,
    best: usize,
    arcs: usize,
    witnesses: BTreeMap<CanonicalForm, Digraph>,
    collect: bool,
    nodes: u64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    exhausted: bool,
}

impl BnbSearcher {
    fn record_current(&mut self) {
        if self.collect {
            self.witnesses
                .entry(canonical_form(&self.current))
                .or_insert_with(|| self.current.clone());
        }
    }

    fn out_of_budget(&mut self) -> bool {
        if let Some(limit) = self.node_limit {
            if self.nodes >= limit {
                self.exhausted = false;
                return true;
            }
        }
        if let Some(deadline) = self.deadline {
            if self.nodes % 1024 == 0 && Instant::now() >= deadline {
                self.exhausted = false;
                return true;
            }
        }
        false
    }

    fn decide(&mut self, slot: usize) {
        if !self.exhausted {
            return; // budget already exceeded somewhere up the stack
        }
        self.nodes += 1;
        if self.out_of_budget() {
            return;
        }
        // every undecided slot can contribute at most one arc
        if self.arcs + (self.slots.len() - slot) < self.best
            || (self.arcs + (self.slots.len() - slot) == self.best && !self.collect)
        {
            return;
        }
        if slot == self.slots.len() {
            return;
        }
        let (u, v) = self.slots[slot];
        if stays_free_after(&self.current, u, v) {
            self.current.add_arc(u, v).expect("slot in range");
            self.arcs += 1;
            if self.arcs > self.best {
                self.best = self.arcs;
                self.witnesses.clear();
                self.record_current();
            } else if self.arcs == self.best {
                self.record_current();
            }
            self.decide(slot + 1);
            self.current.remove_arc(u, v).expect("slot in range");
            self.arcs -= 1;
        }
        self.decide(slot + 1);
    }
}

/// Builds one admissible family member for `n`'s parity class and confirms
/// it is P_{2,2}-free with exactly `ex_formula(n)` arcs.
pub fn verify_lower_bound(n: usize) -> Result<bool, SearchError> {
    let target = ex_formula(n).map_err(|e| SearchError::Domain(e.0))?;
    let family = if n % 2 == 1 {
        FamilyId::D1
    } else if n % 4 == 0 {
        FamilyId::D3
    } else {
        FamilyId::D4
    };
    let params = enumerate_params(family, n)
        .into_iter()
        .next()
        .ok_or(SearchError::Config("no admissible parameters"))?;
    let d = build_family(&params).map_err(|_| SearchError::Config("family build failed"))?;
    Ok(is_free(&d) && d.arc_count() == target)
}
