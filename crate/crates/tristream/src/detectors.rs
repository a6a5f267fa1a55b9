//! Two-pass streaming triangle detectors.
//!
//! Both detectors distinguish triangle-free graphs from graphs with many
//! triangles using two passes and far less memory than the edge list:
//!
//! * [`detect_by_sparsification`] keeps each edge independently with
//!   probability p = min(1, 6/T^(1/3)), aborts with [`Verdict::Fail`] if
//!   more than 5·(6m/T^(1/3)) edges accumulate, then looks for a triangle
//!   inside the kept subgraph and, in a second pass, for any stream edge
//!   that closes one against it. It never reports a triangle on a
//!   triangle-free input.
//! * [`detect_by_vertex_sampling`] samples ceil(4n/rho) vertices without
//!   replacement, stores every edge touching the sample, and checks in the
//!   second pass whether any stream edge closes a triangle. It never fails;
//!   its space is bounded in expectation only.
//!
//! Space is accounted in stored edges; vertex bookkeeping is free.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Edge;
use crate::sampling::partial_fisher_yates;
use crate::stream::{EdgeStream, PassBudgetExhausted};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetectError {
    #[error("invalid detector config: {reason}")]
    InvalidConfig { reason: String },
    #[error(transparent)]
    Stream(#[from] PassBudgetExhausted),
}

fn invalid(reason: impl Into<String>) -> DetectError {
    DetectError::InvalidConfig {
        reason: reason.into(),
    }
}

/// Detector selector, as spelled on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Algorithm {
    /// Edge sparsification with the edge count known up front.
    #[serde(rename = "a")]
    Sparsification,
    /// Edge sparsification with the edge count guessed by doubling.
    #[serde(rename = "a-adaptive")]
    SparsificationAdaptive,
    /// Triangle-density vertex sampling.
    #[serde(rename = "a2")]
    VertexSampling,
}

/// Parameters shared by the detectors. Each detector validates the fields
/// it actually reads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetectorConfig {
    /// Triangle threshold T of the distinguishing problem (sparsification).
    pub triangle_threshold: Option<u64>,
    /// Triangle density rho supplied to vertex sampling. The detector
    /// cannot see the true density; the caller is trusted.
    pub triangle_density: Option<u64>,
    /// Known edge count for plain sparsification; must match the stream.
    pub m_known: Option<usize>,
    /// Seed for the per-run RNG.
    pub seed: u64,
}

impl DetectorConfig {
    pub fn sparsification(triangle_threshold: u64, m_known: usize, seed: u64) -> Self {
        Self {
            triangle_threshold: Some(triangle_threshold),
            triangle_density: None,
            m_known: Some(m_known),
            seed,
        }
    }

    pub fn sparsification_adaptive(triangle_threshold: u64, seed: u64) -> Self {
        Self {
            triangle_threshold: Some(triangle_threshold),
            triangle_density: None,
            m_known: None,
            seed,
        }
    }

    pub fn vertex_sampling(triangle_density: u64, seed: u64) -> Self {
        Self {
            triangle_threshold: None,
            triangle_density: Some(triangle_density),
            m_known: None,
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    TriangleFound,
    NoTriangle,
    Fail,
}

/// Result of one detector run, with stored-edge accounting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetectionOutcome {
    pub verdict: Verdict,
    /// Maximum number of simultaneously stored edges.
    pub stored_edges_peak: usize,
    pub passes_used: u32,
}

/// The stored edge set, indexed for common-neighbor queries.
#[derive(Debug, Clone, Default)]
pub struct SampledSubgraph {
    adj: HashMap<u32, HashSet<u32>>,
    edge_count: usize,
}

impl SampledSubgraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Insert an undirected edge; returns false if it was already stored.
    pub fn insert(&mut self, (u, v): Edge) -> bool {
        let added = self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
        if added {
            self.edge_count += 1;
        }
        added
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains_edge(&self, (u, v): Edge) -> bool {
        self.adj.get(&u).is_some_and(|nbrs| nbrs.contains(&v))
    }

    /// Stored edges as normalized pairs in sorted order.
    pub fn edges_sorted(&self) -> Vec<Edge> {
        let mut edges: Vec<Edge> = self
            .adj
            .iter()
            .flat_map(|(&u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        edges.sort_unstable();
        edges
    }

    /// True iff the endpoints of `e` have a common neighbor among the
    /// stored edges. `e` itself need not be stored; a stored copy of `e`
    /// contributes nothing since no vertex neighbors itself.
    pub fn completes_triangle(&self, (u, v): Edge) -> bool {
        if u == v {
            return false;
        }
        let (Some(nu), Some(nv)) = (self.adj.get(&u), self.adj.get(&v)) else {
            return false;
        };
        let (small, large) = if nu.len() <= nv.len() { (nu, nv) } else { (nv, nu) };
        small.iter().any(|w| large.contains(w))
    }

    /// True iff three stored edges form a triangle.
    pub fn contains_triangle(&self) -> bool {
        self.adj.iter().any(|(&u, nbrs)| {
            nbrs.iter()
                .any(|&v| u < v && self.completes_triangle((u, v)))
        })
    }
}

/// Dispatch on the selector.
pub fn run_detector(
    alg: Algorithm,
    stream: &mut EdgeStream,
    cfg: &DetectorConfig,
) -> Result<DetectionOutcome, DetectError> {
    match alg {
        Algorithm::Sparsification => detect_by_sparsification(stream, cfg),
        Algorithm::SparsificationAdaptive => detect_by_sparsification_adaptive(stream, cfg),
        Algorithm::VertexSampling => detect_by_vertex_sampling(stream, cfg),
    }
}

fn threshold_from(cfg: &DetectorConfig) -> Result<u64, DetectError> {
    match cfg.triangle_threshold {
        Some(t) if t >= 1 => Ok(t),
        Some(_) => Err(invalid("triangle threshold must be at least 1")),
        None => Err(invalid("triangle threshold is required")),
    }
}

/// Edge-sparsification detector with the edge count known up front.
///
/// The fail threshold is the real value 30m/T^(1/3) and a run fails only
/// when the stored count strictly exceeds it, so a non-failing run never
/// holds more than that many edges.
pub fn detect_by_sparsification(
    stream: &mut EdgeStream,
    cfg: &DetectorConfig,
) -> Result<DetectionOutcome, DetectError> {
    let t = threshold_from(cfg)?;
    let m_known = cfg
        .m_known
        .ok_or_else(|| invalid("m_known is required; use the adaptive variant when m is unknown"))?;
    if m_known != stream.edge_count() {
        return Err(invalid(format!(
            "m_known = {m_known} does not match the stream's {} edges",
            stream.edge_count()
        )));
    }
    let cbrt_t = (t as f64).cbrt();
    let fail_threshold = 30.0 * m_known as f64 / cbrt_t;
    run_sparsification(stream, t, move |_| fail_threshold, cfg.seed)
}

/// Edge-sparsification detector for unknown m: the retention probability
/// depends only on T, so sampling is unchanged; the fail threshold tracks
/// a doubling guess, the smallest power of two covering the edges seen so
/// far. The stored-edge peak may reach twice the known-m variant's bound.
pub fn detect_by_sparsification_adaptive(
    stream: &mut EdgeStream,
    cfg: &DetectorConfig,
) -> Result<DetectionOutcome, DetectError> {
    let t = threshold_from(cfg)?;
    if cfg.m_known.is_some() {
        return Err(invalid("the adaptive variant takes no m_known"));
    }
    let cbrt_t = (t as f64).cbrt();
    run_sparsification(
        stream,
        t,
        move |seen| 30.0 * seen.next_power_of_two() as f64 / cbrt_t,
        cfg.seed,
    )
}

/// Shared sparsification body: one uniform draw per stream edge, in stream
/// order, so the kept set is a pure function of (T, seed) regardless of
/// the fail-threshold schedule.
fn run_sparsification(
    stream: &mut EdgeStream,
    t: u64,
    mut fail_threshold: impl FnMut(u64) -> f64,
    seed: u64,
) -> Result<DetectionOutcome, DetectError> {
    let p = (6.0 / (t as f64).cbrt()).min(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kept = SampledSubgraph::new();
    let mut seen: u64 = 0;

    {
        let pass = stream.next_pass()?;
        for edge in pass {
            seen += 1;
            if rng.random::<f64>() < p {
                kept.insert(edge);
                if kept.edge_count() as f64 > fail_threshold(seen) {
                    return Ok(DetectionOutcome {
                        verdict: Verdict::Fail,
                        stored_edges_peak: kept.edge_count(),
                        passes_used: 1,
                    });
                }
            }
        }
    }

    // A triangle entirely inside the kept set resolves the run in one pass.
    if kept.contains_triangle() {
        return Ok(DetectionOutcome {
            verdict: Verdict::TriangleFound,
            stored_edges_peak: kept.edge_count(),
            passes_used: 1,
        });
    }

    let peak = kept.edge_count();
    let pass = stream.next_pass()?;
    for edge in pass {
        if kept.completes_triangle(edge) {
            return Ok(DetectionOutcome {
                verdict: Verdict::TriangleFound,
                stored_edges_peak: peak,
                passes_used: 2,
            });
        }
    }
    Ok(DetectionOutcome {
        verdict: Verdict::NoTriangle,
        stored_edges_peak: peak,
        passes_used: 2,
    })
}

/// Vertex-sampling detector: store every edge touching a uniform sample of
/// ceil(4n/rho) vertices, then check whether any stream edge closes a
/// triangle against the stored set. Never produces [`Verdict::Fail`].
pub fn detect_by_vertex_sampling(
    stream: &mut EdgeStream,
    cfg: &DetectorConfig,
) -> Result<DetectionOutcome, DetectError> {
    let rho = match cfg.triangle_density {
        Some(r) if r >= 1 => r,
        Some(_) => return Err(invalid("triangle density must be at least 1")),
        None => return Err(invalid("triangle density is required")),
    };
    let n = stream.vertex_count();
    let sample_size = ((4 * n as u64).div_ceil(rho)).min(n as u64) as usize;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut in_sample = vec![false; n];
    for v in partial_fisher_yates(n, sample_size, &mut rng) {
        in_sample[v] = true;
    }

    let mut kept = SampledSubgraph::new();
    {
        let pass = stream.next_pass()?;
        for (u, v) in pass {
            if in_sample[u as usize] || in_sample[v as usize] {
                kept.insert((u, v));
            }
        }
    }

    let peak = kept.edge_count();
    let pass = stream.next_pass()?;
    for edge in pass {
        if kept.completes_triangle(edge) {
            return Ok(DetectionOutcome {
                verdict: Verdict::TriangleFound,
                stored_edges_peak: peak,
                passes_used: 2,
            });
        }
    }
    Ok(DetectionOutcome {
        verdict: Verdict::NoTriangle,
        stored_edges_peak: peak,
        passes_used: 2,
    })
}
