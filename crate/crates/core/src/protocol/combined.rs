use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{enumerate_cut_sets, Node, NodeSet, Tree};
use crate::protocol::certificate::{
    alice_accept, bob_accept, enumerate_certificates, prover_certificate, Certificate,
};

/// A row of the full constraint system: either the cycle inequality for a
/// node set or the nonnegativity bound for a single edge variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FacetId {
    Cycle(NodeSet),
    Nonneg(Node, Node),
}

impl FacetId {
    /// Normalizes the edge to `a < b`; rejects self-loops.
    pub fn nonneg(a: Node, b: Node) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidCertificate(format!(
                "edge endpoints coincide: {a}"
            )));
        }
        Ok(FacetId::Nonneg(a.min(b), a.max(b)))
    }

    /// `"S:{1,2}"` for cycle rows, `"E:1-2"` for edge rows.
    pub fn descriptor(&self) -> String {
        match self {
            FacetId::Cycle(s) => format!("S:{s}"),
            FacetId::Nonneg(a, b) => format!("E:{a}-{b}"),
        }
    }
}

/// A certificate for the combined protocol. The variant is the prover's tag
/// bit: either a parsimonious certificate for a cycle row, or the named edge
/// for a nonnegativity row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CombinedCertificate {
    Cyc(Certificate),
    Nng(Node, Node),
}

impl fmt::Display for CombinedCertificate {
    /// `"C:u,v,pi,delta,d"` or `"N:a-b"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombinedCertificate::Cyc(c) => write!(f, "C:{c}"),
            CombinedCertificate::Nng(a, b) => write!(f, "N:{a}-{b}"),
        }
    }
}

/// The row-holder's side. A mismatched tag is always rejected; an edge
/// certificate must name exactly the row's edge; a cycle certificate is
/// judged by the parsimonious protocol.
pub fn combined_alice_accept(fa: &FacetId, cc: &CombinedCertificate) -> bool {
    match (fa, cc) {
        (FacetId::Cycle(s), CombinedCertificate::Cyc(c)) => alice_accept(s, c),
        (FacetId::Nonneg(a, b), CombinedCertificate::Nng(x, y)) => (a, b) == (x, y),
        _ => false,
    }
}

/// The tree-holder's side. An edge certificate is accepted exactly when the
/// tree contains the edge (the tree is off that facet precisely then).
pub fn combined_bob_accept(tree: &Tree, cc: &CombinedCertificate) -> bool {
    match cc {
        CombinedCertificate::Cyc(c) => bob_accept(tree, c),
        CombinedCertificate::Nng(a, b) => tree.contains_edge(*a, *b),
    }
}

/// The prover for the combined protocol; returns nothing exactly when the
/// tree lies on the facet.
pub fn combined_prover(fa: &FacetId, tree: &Tree) -> Option<CombinedCertificate> {
    match fa {
        FacetId::Cycle(s) => prover_certificate(s, tree).map(CombinedCertificate::Cyc),
        FacetId::Nonneg(a, b) => tree
            .contains_edge(*a, *b)
            .then_some(CombinedCertificate::Nng(*a, *b)),
    }
}

/// Every facet row for `n`: cycle rows in set-enumeration order, then (when
/// requested) one edge row per unordered pair in lexicographic order.
pub fn enumerate_facets(n: Node, include_nonneg: bool) -> Result<Vec<FacetId>> {
    let mut out: Vec<FacetId> = enumerate_cut_sets(n)?.map(FacetId::Cycle).collect();
    if include_nonneg {
        for a in 1..n {
            for b in (a + 1)..=n {
                out.push(FacetId::Nonneg(a, b));
            }
        }
    }
    Ok(out)
}

/// Every combined certificate for `n`: all cycle certificates, then all
/// edge certificates.
pub fn enumerate_combined_certificates(n: Node) -> Vec<CombinedCertificate> {
    let mut out: Vec<CombinedCertificate> = enumerate_certificates(n)
        .into_iter()
        .map(CombinedCertificate::Cyc)
        .collect();
    for a in 1..n {
        for b in (a + 1)..=n {
            out.push(CombinedCertificate::Nng(a, b));
        }
    }
    out
}
