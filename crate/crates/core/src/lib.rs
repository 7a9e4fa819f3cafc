//! Graph algorithms driven by elimination forests.
//!
//! The central piece is a divide-and-conquer driver ([`framework::compute`])
//! that walks an elimination forest bottom-up: a problem supplies an
//! `increment` step (add the subtree root to an already-solved subgraph) and a
//! `union` step (merge solutions of disconnected parts). Every solver in this
//! crate is an instantiation of that driver:
//!
//! * [`matching`] — maximum-cardinality matching and maximum-weight perfect
//!   matching with laminar dual certificates, plus reductions for the
//!   non-perfect variants and disjoint terminal paths,
//! * [`potentials`] — negative-cycle detection / potential construction and
//!   potential-based single-source shortest paths,
//! * [`min_cycle`] — minimum-weight cycle for non-negative weights,
//! * [`replacement`] — replacement paths along a shortest path,
//! * [`two_hop`] — 2-hop cover (hub label) distance oracles.
//!
//! [`oracles`] holds independent brute-force references used by the test
//! suites, and [`io`] the text formats understood by the CLI.

pub mod error;
pub mod forest;
pub mod framework;
pub mod gen;
pub mod graph;
pub mod io;
pub mod matching;
pub mod min_cycle;
pub mod oracles;
pub mod potentials;
pub mod replacement;
pub mod two_hop;

mod dijkstra;

pub use error::{Error, Result};
pub use forest::{EliminationForest, TreeDecomposition};
pub use graph::{Graph, VertexSetView};
