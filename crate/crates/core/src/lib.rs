//! Verification harness for a nondeterministic communication protocol on
//! spanning trees.
//!
//! The object under test is a Boolean predicate indexed by proper node
//! subsets (at least two nodes, not all of them) and labeled trees on
//! `1..=n`: the predicate is 1 when the tree's edges inside the subset fail
//! to connect it. That predicate is exactly the support of the slack matrix
//! pairing the cycle inequalities of the spanning-tree polytope with its
//! vertices, so a nondeterministic protocol for it is a rectangle cover of
//! that support.
//!
//! The crate provides three independent routes to the same ground truth and
//! a check suite that plays them against each other:
//!
//! * [`graph`]: trees (encode/decode against integer sequences,
//!   enumeration, uniform sampling), node subsets as bitmasks, and the
//!   union-find connectivity oracle.
//! * [`protocol`]: path witnesses, the compressed certificate (endpoint
//!   pair, side bit, direction bit, distance scale), both acceptance
//!   predicates, the prover, and the tagged extension that also covers the
//!   nonnegativity facets.
//! * [`slack`]: the slack matrix itself, built from scratch, with export
//!   and import codecs plus exact and greedy rectangle covers.
//! * [`verify`]: the checks (soundness, completeness, the triangle
//!   transfer property, naive cross-checks, cover checks, the slack
//!   identity), each reporting counted work and sorted violations.
//!
//! Randomized checks are deterministic for a fixed seed regardless of
//! thread count; exhaustive checks enumerate the full universe under
//! explicit size caps.

pub mod error;
pub mod graph;
pub mod protocol;
pub mod slack;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{NodeSet, Tree};
pub use protocol::{Certificate, FacetId, TieBreak, Witness};
pub use slack::SupportMatrix;
pub use verify::{Mode, VerificationReport};
