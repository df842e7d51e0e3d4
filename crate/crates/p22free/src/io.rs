//! JSON interchange documents and DOT export.
//!
//! The JSON form is the canonical interchange: arcs sorted lexicographically,
//! no timestamps, byte-identical across runs for the same digraph. DOT is a
//! one-way export for visual inspection.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{Digraph, MAX_VERTICES};

#[derive(Debug, Error)]
pub enum DocumentError {
    /// Malformed JSON; the inner error carries line and column.
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("order {0} out of range (1..={MAX_VERTICES})")]
    Size(usize),
    #[error("arcs[{index}]: loop [{v},{v}]")]
    Loop { index: usize, v: usize },
    #[error("arcs[{index}]: duplicate arc [{u},{v}]")]
    Duplicate { index: usize, u: usize, v: usize },
    #[error("arcs[{index}]: vertex {v} out of range for n={n}")]
    Range { index: usize, v: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct DocumentMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// Serialized digraph: order, sorted arc list, optional metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphDocument {
    pub n: usize,
    pub arcs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<DocumentMeta>,
}

impl DigraphDocument {
    pub fn from_digraph(d: &Digraph, metadata: Option<DocumentMeta>) -> Self {
        DigraphDocument {
            n: d.order(),
            arcs: d.arcs().into_iter().map(|(u, v)| [u, v]).collect(),
            metadata,
        }
    }

    /// Validates the arc list and builds the digraph.
    pub fn to_digraph(&self) -> Result<Digraph, DocumentError> {
        let mut d = Digraph::new(self.n).map_err(|_| DocumentError::Size(self.n))?;
        for (index, &[u, v]) in self.arcs.iter().enumerate() {
            if u == v {
                return Err(DocumentError::Loop { index, v });
            }
            for &w in &[u, v] {
                if w >= self.n {
                    return Err(DocumentError::Range {
                        index,
                        v: w,
                        n: self.n,
                    });
                }
            }
            if d.has_arc(u, v) {
                return Err(DocumentError::Duplicate { index, u, v });
            }
            d.add_arc(u, v).expect("validated arc");
        }
        Ok(d)
    }
}

/// Compact JSON encoding with arcs in lexicographic order.
pub fn encode_json(d: &Digraph) -> String {
    encode_json_with_meta(d, None)
}

pub fn encode_json_with_meta(d: &Digraph, metadata: Option<DocumentMeta>) -> String {
    serde_json::to_string(&DigraphDocument::from_digraph(d, metadata))
        .expect("document serialization is infallible")
}

pub fn parse_document(text: &str) -> Result<DigraphDocument, DocumentError> {
    Ok(serde_json::from_str(text)?)
}

pub fn decode_json(text: &str) -> Result<Digraph, DocumentError> {
    parse_document(text)?.to_digraph()
}

/// DOT rendering: one edge statement per arc in lexicographic order,
/// vertices named `v0..v(n-1)`. Isolated vertices are not listed, so the
/// empty digraph renders as header and footer only.
pub fn encode_dot(d: &Digraph) -> String {
    let mut out = String::from("digraph {\n");
    for (u, v) in d.arcs() {
        out.push_str(&format!("  v{u} -> v{v};\n"));
    }
    out.push_str("}\n");
    out
}
