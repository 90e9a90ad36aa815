//! Toolkit for extracting disjoint-union-of-cycles minors from graphs of
//! large treewidth, together with the bramble, treewidth, linkage and
//! cycle-packing subroutines the construction relies on.
//!
//! Everything here is certificate-producing: minor models, tree
//! decompositions, hitting sets, path systems and cycle packings all carry
//! enough data to be re-verified independently of the search that found
//! them. Exact routines are guarded by instance-size limits and stay exact
//! within them; the extractor additionally offers a relaxed mode whose
//! thresholds are scaled down so the full pipeline can be exercised on
//! desk-scale fixtures without ever reporting an unverified success.

pub mod bramble;
pub mod cycle_packing;
mod error;
pub mod experiments;
pub mod extract;
pub mod format;
pub mod generators;
pub mod graph;
pub mod linkage;
pub mod minor;
pub mod treewidth;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
