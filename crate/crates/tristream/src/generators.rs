//! Deterministic constructors for the graph families used throughout the
//! test suites: towers, disjoint triangle packs, the triangle-free double
//! bipartite graph, seeded random graphs, and two bit-vector gadgets whose
//! triangle counts encode an indexed bit and a set intersection size.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Edge, Graph};
use crate::sampling::partial_fisher_yates;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid arguments: {reason}")]
    InvalidArgs { reason: String },
}

fn invalid(reason: impl Into<String>) -> GenError {
    GenError::InvalidArgs {
        reason: reason.into(),
    }
}

fn build(n: u64, edges: Vec<Edge>) -> Graph {
    Graph::with_vertices(n as usize, edges).expect("generator emits a valid graph")
}

fn check_id_space(n: u64) -> Result<(), GenError> {
    if n > u32::MAX as u64 + 1 {
        Err(invalid(format!("{n} vertices exceed the 32-bit id space")))
    } else {
        Ok(())
    }
}

/// Sum part sizes without overflowing before the id-space check can run.
fn vertex_total(parts: &[u64]) -> Result<u64, GenError> {
    let mut total = 0u64;
    for &part in parts {
        total = total
            .checked_add(part)
            .ok_or_else(|| invalid("vertex count overflows"))?;
    }
    check_id_space(total)?;
    Ok(total)
}

/// A bit string with 1-indexed access.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVector {
    bits: Vec<bool>,
}

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Result<Self, GenError> {
        if bits.is_empty() {
            return Err(invalid("bit vector must be non-empty"));
        }
        Ok(Self { bits })
    }

    /// Parse a string of `0` and `1` characters.
    pub fn from_bit_str(s: &str) -> Result<Self, GenError> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(invalid(format!("unexpected character {other:?} in bit string"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(bits)
    }

    /// A seeded vector of `len` bits with exactly `ones` ones at uniformly
    /// random positions.
    pub fn random(len: usize, ones: usize, seed: u64) -> Result<Self, GenError> {
        if len == 0 {
            return Err(invalid("bit vector must be non-empty"));
        }
        if ones > len {
            return Err(invalid(format!("cannot place {ones} ones in {len} bits")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bits = vec![false; len];
        for pos in partial_fisher_yates(len, ones, &mut rng) {
            bits[pos] = true;
        }
        Ok(Self { bits })
    }

    #[allow(clippy::len_without_is_empty)] // never empty by construction
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// 1-indexed bit access; panics outside [1, len].
    pub fn get(&self, index: usize) -> bool {
        assert!(
            (1..=self.bits.len()).contains(&index),
            "bit index {index} outside [1, {}]",
            self.bits.len()
        );
        self.bits[index - 1]
    }

    pub fn count_ones(&self) -> u64 {
        self.bits.iter().filter(|&&b| b).count() as u64
    }

    /// Inner product with another vector of the same length.
    pub fn dot(&self, other: &BitVector) -> u64 {
        assert_eq!(self.len(), other.len(), "dot product needs equal lengths");
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|&(&a, &b)| a && b)
            .count() as u64
    }
}

impl std::fmt::Display for BitVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// An s-tower: a base edge (0,1) plus `s` apex vertices adjacent to both
/// endpoints, optionally padded by a triangle-free matching on fresh
/// vertices so the vertex count grows without touching the density.
///
/// Statistics: t3 = s, max tower = s, pi = C(s,2), rho = s + 2,
/// m = 2s + 1 + pad_edges.
pub fn gen_tower(s: u64, pad_edges: u64) -> Result<Graph, GenError> {
    if s < 1 {
        return Err(invalid("tower height must be at least 1"));
    }
    let n = vertex_total(&[s, 2, pad_edges, pad_edges])?;
    let mut edges = Vec::with_capacity((2 * s + 1 + pad_edges) as usize);
    edges.push((0, 1));
    for apex in 2..s + 2 {
        edges.push((0, apex as u32));
        edges.push((1, apex as u32));
    }
    let pad_base = s + 2;
    for i in 0..pad_edges {
        edges.push(((pad_base + 2 * i) as u32, (pad_base + 2 * i + 1) as u32));
    }
    Ok(build(n, edges))
}

/// `count` vertex-disjoint triangles on 3·count vertices.
pub fn gen_disjoint_triangles(count: u64) -> Result<Graph, GenError> {
    if count < 1 {
        return Err(invalid("triangle count must be at least 1"));
    }
    let n = vertex_total(&[count, count, count])?;
    let mut edges = Vec::with_capacity(3 * count as usize);
    for i in 0..count {
        let base = (3 * i) as u32;
        edges.push((base, base + 1));
        edges.push((base + 1, base + 2));
        edges.push((base + 2, base));
    }
    Ok(build(n, edges))
}

/// Three parts of size k chained by two complete bipartite graphs: a
/// triangle-free graph with 2k^2 edges and Θ(k^3) two-edge paths.
pub fn gen_double_bipartite(k: u64) -> Graph {
    let n = vertex_total(&[k, k, k]).expect("part size exceeds the id space");
    let mut edges = Vec::with_capacity((2 * k * k) as usize);
    for a in 0..k {
        for b in 0..k {
            edges.push((a as u32, (k + b) as u32));
        }
    }
    for b in 0..k {
        for c in 0..k {
            edges.push(((k + b) as u32, (2 * k + c) as u32));
        }
    }
    build(n, edges)
}

/// Index gadget: parts X (size a = len/f), Y (size f), Z (size t).
/// Bit (i-1)·f + j of `x` wires (x_i, y_j); the slot of `ell` gets a star
/// of 2t edges from Z to its two endpoints. The resulting graph has
/// t triangles if x[ell] = 1 and none otherwise.
pub fn gen_index_gadget(x: &BitVector, f: u64, ell: u64, t: u64) -> Result<Graph, GenError> {
    if f < 1 {
        return Err(invalid("part size f must be at least 1"));
    }
    if t < 1 {
        return Err(invalid("triangle parameter must be at least 1"));
    }
    let len = x.len() as u64;
    if !len.is_multiple_of(f) {
        return Err(invalid(format!(
            "bit vector length {len} is not a multiple of part size {f}"
        )));
    }
    let a = len / f;
    if ell < 1 || ell > len {
        return Err(invalid(format!("index {ell} outside [1, {len}]")));
    }
    let n = vertex_total(&[a, f, t])?;

    let x_vertex = |i: u64| (i - 1) as u32; // i in [1, a]
    let y_vertex = |j: u64| (a + j - 1) as u32; // j in [1, f]
    let z_vertex = |r: u64| (a + f + r - 1) as u32; // r in [1, t]

    let mut edges = Vec::new();
    for i in 1..=a {
        for j in 1..=f {
            if x.get(((i - 1) * f + j) as usize) {
                edges.push((x_vertex(i), y_vertex(j)));
            }
        }
    }
    let slot_i = (ell - 1) / f + 1;
    let slot_j = ell - (slot_i - 1) * f;
    for r in 1..=t {
        edges.push((z_vertex(r), x_vertex(slot_i)));
        edges.push((z_vertex(r), y_vertex(slot_j)));
    }
    Ok(build(n, edges))
}

/// Disjointness gadget: parts A, B, C of size sqrt(len) each, `x` wiring
/// A to B, `y` wiring C to B, plus the A-C perfect matching. The triangle
/// count equals the inner product of `x` and `y`.
pub fn gen_disj_gadget(x: &BitVector, y: &BitVector) -> Result<Graph, GenError> {
    if x.len() != y.len() {
        return Err(invalid(format!(
            "vector lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    let len = x.len() as u64;
    let side = (len as usize).isqrt() as u64;
    if side * side != len {
        return Err(invalid(format!("length {len} is not a perfect square")));
    }
    let n = vertex_total(&[side, side, side])?;

    let a_vertex = |i: u64| (i - 1) as u32;
    let b_vertex = |k: u64| (side + k - 1) as u32;
    let c_vertex = |i: u64| (2 * side + i - 1) as u32;

    let mut edges = Vec::new();
    for i in 1..=side {
        for k in 1..=side {
            if x.get(((i - 1) * side + k) as usize) {
                edges.push((a_vertex(i), b_vertex(k)));
            }
        }
    }
    for i in 1..=side {
        for k in 1..=side {
            if y.get(((i - 1) * side + k) as usize) {
                edges.push((c_vertex(i), b_vertex(k)));
            }
        }
    }
    for i in 1..=side {
        edges.push((a_vertex(i), c_vertex(i)));
    }
    Ok(build(n, edges))
}

/// Seed-deterministic Erdős–Rényi-style simple graph: each of the C(n,2)
/// pairs is an edge independently with probability `edge_prob`.
pub fn gen_random(n: u64, edge_prob: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(invalid(format!(
            "edge probability must lie in [0, 1], got {edge_prob}"
        )));
    }
    check_id_space(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < edge_prob {
                edges.push((u as u32, v as u32));
            }
        }
    }
    Ok(build(n, edges))
}
