//! Three-block oriented paths in digraphs of large chromatic number.
//!
//! The crate provides the digraph model, exact colouring, the exhaustive
//! path matcher, constructive finders that follow the existence arguments
//! step by step, and a campaign harness for searching small hosts.

pub mod canon;
pub mod coloring;
pub mod digraph;
pub mod enumerate;
pub mod format;
pub mod harness;
pub mod pattern;
pub mod proofs;
pub mod rng;
#[cfg(test)]
mod testkit;

pub use canon::{canonical_form, canonical_labeling, is_isomorphic, Canon};
pub use coloring::{
    chromatic_number, chromatic_number_capped, critical_subdigraph, gallai_roy_path,
    is_k_colorable, ChromaticCertificate, ColoringError,
};
pub use digraph::{fixture, Digraph, Fixture, GraphError, Induced, Mode, VertexSet};
pub use harness::{run_campaign, Campaign, CampaignKind, ScanReport, Store};
pub use pattern::{find_pattern, verify_witness, BlockPattern, Direction, PathWitness, PatternError};
pub use proofs::{
    check_trace, f_upper_bound, find_p1k1, find_p1k1_via_origins, find_p1l1_at_least,
    find_reversed_three_block, find_three_block_decomposition, g, g_extreme, Branch, GIndex,
    ProofError, ProofTrace,
};
