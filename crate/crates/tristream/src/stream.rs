//! Pass-budgeted sequential access to a graph's edges.
//!
//! A stream hands out complete passes over the edge list, every pass in the
//! same fixed order, and refuses to start a pass once the budget is spent.
//! Detectors consume edges exclusively through this interface, so the pass
//! count they use is machine-checked rather than a convention.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Edge, Graph};
use crate::sampling::partial_fisher_yates;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("pass budget exhausted: all {passes_allowed} passes consumed")]
pub struct PassBudgetExhausted {
    pub passes_allowed: u32,
}

/// A single-consumer view over one graph's edges, valid for a bounded
/// number of passes. Order is fixed at open time: input order, or a
/// seed-deterministic shuffle.
pub struct EdgeStream<'g> {
    graph: &'g Graph,
    order: Option<Vec<usize>>,
    passes_allowed: u32,
    passes_consumed: u32,
}

impl Graph {
    pub fn open_stream(&self, passes: u32, shuffle_seed: Option<u64>) -> EdgeStream<'_> {
        let order = shuffle_seed.map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = self.edge_count();
            partial_fisher_yates(m, m, &mut rng)
        });
        EdgeStream {
            graph: self,
            order,
            passes_allowed: passes,
            passes_consumed: 0,
        }
    }
}

impl<'g> EdgeStream<'g> {
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn passes_allowed(&self) -> u32 {
        self.passes_allowed
    }

    pub fn passes_consumed(&self) -> u32 {
        self.passes_consumed
    }

    pub fn passes_remaining(&self) -> u32 {
        self.passes_allowed - self.passes_consumed
    }

    /// Start the next pass, yielding every edge exactly once.
    ///
    /// A partially consumed pass still counts as one full pass against the
    /// budget; abandoning the iterator early is allowed only when no
    /// further pass will be requested.
    pub fn next_pass(&mut self) -> Result<Pass<'_>, PassBudgetExhausted> {
        if self.passes_consumed >= self.passes_allowed {
            return Err(PassBudgetExhausted {
                passes_allowed: self.passes_allowed,
            });
        }
        self.passes_consumed += 1;
        Ok(Pass {
            edges: self.graph.edges(),
            order: self.order.as_deref(),
            pos: 0,
        })
    }
}

/// Iterator over the edges of one pass.
pub struct Pass<'a> {
    edges: &'a [Edge],
    order: Option<&'a [usize]>,
    pos: usize,
}

impl Iterator for Pass<'_> {
    type Item = Edge;

    fn next(&mut self) -> Option<Edge> {
        if self.pos >= self.edges.len() {
            return None;
        }
        let idx = match self.order {
            Some(order) => order[self.pos],
            None => self.pos,
        };
        self.pos += 1;
        Some(self.edges[idx])
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.edges.len() - self.pos;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Pass<'_> {}
