//! Simple undirected graphs and the plain-text edge-list format.
//!
//! Vertex ids are dense non-negative integers below 2^32; the vertex count
//! is inferred as `max id + 1` unless an explicit count is supplied (which
//! is how isolated vertices are represented). Self-loops and duplicate
//! edges are rejected at construction time, never silently dropped, so the
//! edge count `m` is unambiguous everywhere it enters a space threshold.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

/// An undirected edge, kept in the orientation it was supplied in.
pub type Edge = (u32, u32);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: self-loop")]
    SelfLoop { line: usize },
    #[error("line {line}: duplicate edge")]
    DuplicateEdge { line: usize },
    #[error("line {line}: malformed edge line")]
    Malformed { line: usize },
    #[error("line {line}: endpoint exceeds the declared vertex count")]
    EndpointOutOfRange { line: usize },
}

/// An immutable simple undirected graph with a sorted adjacency index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<u32>>,
}

impl Graph {
    /// Build a graph from an edge list, inferring the vertex count as
    /// `max id + 1` (0 for an empty list).
    pub fn from_edges(edges: Vec<Edge>) -> Result<Self, GraphError> {
        let n = edges
            .iter()
            .map(|&(u, v)| u.max(v) as usize + 1)
            .max()
            .unwrap_or(0);
        Self::with_vertices(n, edges)
    }

    /// Build a graph with an explicit vertex count, which may exceed the
    /// largest endpoint so that isolated vertices are representable.
    ///
    /// Error positions refer to 1-based indices into `edges`.
    pub fn with_vertices(n: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(edges.len());
        for (idx, &(u, v)) in edges.iter().enumerate() {
            let line = idx + 1;
            if u == v {
                return Err(GraphError::SelfLoop { line });
            }
            if (u as usize) >= n || (v as usize) >= n {
                return Err(GraphError::EndpointOutOfRange { line });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge { line });
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Self { n, edges, adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        (u as usize) < self.n && self.adjacency[u as usize].binary_search(&v).is_ok()
    }
}

/// Parse the edge-list interchange format: one `"u v"` pair per line,
/// ASCII decimal, with `#`-prefixed comment lines and blank lines ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let mut seen: HashSet<(u32, u32)> = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(GraphError::Malformed { line });
        };
        let u: u32 = a.parse().map_err(|_| GraphError::Malformed { line })?;
        let v: u32 = b.parse().map_err(|_| GraphError::Malformed { line })?;
        if u == v {
            return Err(GraphError::SelfLoop { line });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge { line });
        }
        edges.push((u, v));
    }
    // Construction cannot fail: loops and duplicates were rejected above.
    Graph::from_edges(edges).map_err(|e| match e {
        GraphError::SelfLoop { line } | GraphError::DuplicateEdge { line } => {
            unreachable!("validated at line {line}")
        }
        other => other,
    })
}

/// Serialize to the edge-list format; inverse of [`parse_edge_list`] for
/// graphs without trailing isolated vertices.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(g.edge_count() * 8);
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
