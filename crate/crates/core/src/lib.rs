//! Maximal omnitigs of strongly connected multigraphs.
//!
//! The graph is first compressed ([`transform`]); maximal macrotigs and leftover
//! bivalent arcs are built on the compressed graph ([`tigs`]) and scanned into
//! handles ([`enumerate`]), which materialize as walks of the input graph.
//! [`verify`] holds brute-force oracles used by the test suites.

pub mod classify;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod scc;
pub mod structure;
pub mod tigs;
pub mod transform;
pub mod univocal;
pub mod verify;
pub mod walk;

pub use classify::{is_closed_path, Classification};
pub use enumerate::{
    all_maximal_omnitig_handles, omnitig_length_stats, Enumeration, EnumerationOptions, HandleKind,
    LengthStats, OmnitigHandle, Representation,
};
pub use error::{Error, Result};
pub use graph::{ArcId, Graph, NodeId};
pub use walk::Walk;
pub use oracle::{build_oracle, Backend, FailureOracle};
