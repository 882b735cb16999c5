//! Exact S-packing colorings of small graphs and tools for studying
//! χ_S-critical graphs.
//!
//! A packing sequence `S = (s_1, s_2, ...)` is non-decreasing. An
//! S-packing k-coloring assigns colors from `1..=k` so that two distinct
//! vertices sharing color `i` are at distance greater than `s_i`.
//! `χ_S(G)` is the least such `k`.
//!
//! Module map:
//! - [`graph`]: graphs, distances, W-sets, graph6 and edge-list I/O,
//!   canonical labeling.
//! - [`sequence`]: packing sequences and sequence classes.
//! - [`solver`]: k-colorability, `χ_S`, a witness validator and a brute-force
//!   oracle.
//! - [`critical`]: criticality reports, problematic pairs and the
//!   edge-doubling recoloring.
//! - [`families`]: named graphs and gadget constructions.
//! - [`verify`]: small-graph enumeration and the registered checks.

pub mod critical;
pub mod families;
pub mod graph;
pub mod sequence;
pub mod solver;
pub mod verify;

pub use critical::{CriticalityReport, ProblematicPairs};
pub use families::FamilySpec;
pub use graph::{Distance, DistanceMatrix, EdgePartition, Graph, GraphError};
pub use sequence::{PackingSequence, SequencePattern, Tail};
pub use solver::{ChiResult, Coloring, SolveError, SolverConfig};
