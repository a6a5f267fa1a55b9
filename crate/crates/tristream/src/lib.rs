//! Streaming triangle detection toolkit.
//!
//! The crate is organised around a strict division of labour:
//!
//! * [`graph`] and [`stream`] define the data model: immutable simple
//!   undirected graphs, the edge-list text format, and a pass-budgeted
//!   stream that is a detector's only access to the edges.
//! * [`detectors`] holds the two 2-pass randomized distinguishers, one
//!   based on edge sparsification and one on vertex sampling, with exact
//!   stored-edge accounting.
//! * [`oracle`] computes every statistic the detectors are measured
//!   against, exactly and without streaming: triangle count, triangle
//!   density, tower heights, edge-sharing pairs, sparsification moments,
//!   and tail bounds.
//! * [`generators`] builds the graph families the suites run on, from
//!   towers to the two bit-vector gadget constructions.
//! * [`harness`] turns all of that into reproducible Monte Carlo reports.

pub mod detectors;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod oracle;
mod sampling;
pub mod stream;

pub use detectors::{
    detect_by_sparsification, detect_by_sparsification_adaptive, detect_by_vertex_sampling,
    run_detector, Algorithm, DetectError, DetectionOutcome, DetectorConfig, SampledSubgraph,
    Verdict,
};
pub use graph::{parse_edge_list, serialize_edge_list, Edge, Graph, GraphError};
pub use harness::{
    structural_audit, run_trials, run_trials_parallel, trial_seed, verify_variance, wilson_interval,
    AuditRecord, TrialReport, VarianceReport,
};
pub use oracle::{
    chebyshev_zero_bound, chernoff_tail, compute_stats, sparsification_moments, triangle_count,
    GraphStats, OracleError, SparsificationMoments, TailSide,
};
pub use stream::{EdgeStream, Pass, PassBudgetExhausted};
