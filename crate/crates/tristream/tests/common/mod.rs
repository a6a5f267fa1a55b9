//! Shared test support: brute-force cross-oracles that stay independent of
//! the library's intersection-based statistics, an exhaustive moments
//! oracle, and small corpus builders.

#![allow(dead_code)] // each test binary uses its own subset

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tristream::graph::Graph;

/// All triangles by cubic triple enumeration.
pub fn enumerate_triangles(g: &Graph) -> Vec<[u32; 3]> {
    let n = g.vertex_count() as u32;
    let mut triangles = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if !g.has_edge(u, v) {
                continue;
            }
            for w in (v + 1)..n {
                if g.has_edge(u, w) && g.has_edge(v, w) {
                    triangles.push([u, v, w]);
                }
            }
        }
    }
    triangles
}

pub fn naive_triangle_count(g: &Graph) -> u64 {
    enumerate_triangles(g).len() as u64
}

/// Vertices that belong to at least one triangle.
pub fn naive_rho(g: &Graph) -> u64 {
    let mut members: Vec<u32> = enumerate_triangles(g).into_iter().flatten().collect();
    members.sort_unstable();
    members.dedup();
    members.len() as u64
}

fn shared_edge(a: &[u32; 3], b: &[u32; 3]) -> bool {
    let edges = |t: &[u32; 3]| [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])];
    edges(a)
        .into_iter()
        .any(|e| edges(b).into_iter().any(|f| e == f))
}

/// Unordered pairs of triangles sharing an edge, by pairwise comparison.
pub fn naive_pi(g: &Graph) -> u64 {
    let tris = enumerate_triangles(g);
    let mut pairs = 0u64;
    for i in 0..tris.len() {
        for j in (i + 1)..tris.len() {
            if shared_edge(&tris[i], &tris[j]) {
                pairs += 1;
            }
        }
    }
    pairs
}

/// Tallest tower by counting triangles per edge from the triangle list.
pub fn naive_max_tower(g: &Graph) -> u64 {
    let tris = enumerate_triangles(g);
    let mut best = 0u64;
    for &(u, v) in g.edges() {
        let (a, b) = (u.min(v), u.max(v));
        let height = tris
            .iter()
            .filter(|t| {
                [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])].contains(&(a, b))
            })
            .count() as u64;
        best = best.max(height);
    }
    best
}

/// Exact mean and variance of the triangle count under independent edge
/// retention, by enumerating all 2^m retention patterns. Only sensible for
/// small m.
pub fn exhaustive_moments(g: &Graph, p: f64) -> (f64, f64) {
    let m = g.edge_count();
    assert!(m <= 20, "exhaustive enumeration over 2^{m} patterns");

    // Each triangle as a bitmask over edge indices.
    let edge_index = |u: u32, v: u32| -> usize {
        g.edges()
            .iter()
            .position(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v))
            .expect("triangle edge present in the edge list")
    };
    let tri_masks: Vec<u32> = enumerate_triangles(g)
        .iter()
        .map(|t| {
            (1u32 << edge_index(t[0], t[1]))
                | (1u32 << edge_index(t[0], t[2]))
                | (1u32 << edge_index(t[1], t[2]))
        })
        .collect();

    let (mut mean, mut second) = (0.0f64, 0.0f64);
    for pattern in 0u32..(1u32 << m) {
        let kept = pattern.count_ones() as i32;
        let prob = p.powi(kept) * (1.0 - p).powi(m as i32 - kept);
        let count = tri_masks
            .iter()
            .filter(|&&mask| pattern & mask == mask)
            .count() as f64;
        mean += prob * count;
        second += prob * count * count;
    }
    (mean, second - mean * mean)
}

/// A random bipartite (hence triangle-free) graph with parts of the given
/// sizes and independent cross edges.
pub fn random_bipartite(left: u32, right: u32, edge_prob: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..left {
        for v in 0..right {
            if rng.random::<f64>() < edge_prob {
                edges.push((u, left + v));
            }
        }
    }
    Graph::with_vertices((left + right) as usize, edges).expect("bipartite edges are valid")
}
