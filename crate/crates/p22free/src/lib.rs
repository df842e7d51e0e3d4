//! Construction, detection, recognition, and search for extremal digraphs
//! avoiding P_{2,2}, the orientation of the 4-cycle made of two directed
//! 2-paths with a common start and a common end.
//!
//! The crate is organized around a bitset [`digraph::Digraph`]:
//!
//! * [`detect`] — P_{2,2} witnesses, freeness, incremental re-checks;
//! * [`families`] — the extremal families D1..D10, the closed form
//!   [`families::ex_formula`], and the 5-vertex example beating it;
//! * [`canon`] — exact canonical forms and isomorphism tests;
//! * [`recognize`] — membership test for the extremal classes;
//! * [`search`] — exhaustive and branch-and-bound maximum-arc search;
//! * [`audit`] — executable structural invariants of free digraphs;
//! * [`io`] — JSON documents and DOT export;
//! * [`cli`] — the command-line driver.

pub mod audit;
pub mod canon;
pub mod cli;
pub mod detect;
pub mod digraph;
pub mod families;
pub mod io;
pub mod recognize;
pub mod search;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use detect::{find_witness, is_free, P22Witness};
pub use digraph::{Digraph, DigraphError, VertexSet};
pub use families::{
    build_family, enumerate_params, ex_formula, remark_digraph, FamilyId, FamilyParams,
};
pub use recognize::{classify, is_in_ex, Classification, Recognizer};
pub use search::{
    max_free_branch_and_bound, max_free_exhaustive, verify_lower_bound, SearchConfig, SearchResult,
};
