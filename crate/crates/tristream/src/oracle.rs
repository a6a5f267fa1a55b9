//! Exact, non-streaming graph statistics and probability-bound utilities.
//!
//! Everything here is ground truth for the detectors: exact triangle
//! counts, the triangle density, per-edge tower heights, edge-sharing
//! triangle pairs, the exact moments of the sparsified triangle count,
//! and the standard tail bounds the analysis leans on.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("probability must lie in [0, 1], got {p}")]
    InvalidProbability { p: f64 },
    #[error("invalid arguments: {reason}")]
    InvalidArgs { reason: &'static str },
}

/// Exact triangle statistics of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    /// Number of triangles.
    pub t3: u64,
    /// Triangle density: number of vertices belonging to at least one triangle.
    pub rho: u64,
    /// Per-edge tower heights, aligned with the graph's edge order: entry e
    /// counts the triangles containing edge e.
    pub tower_heights: Vec<u64>,
    /// Tallest tower height; 0 for a triangle-free graph.
    pub max_tower: u64,
    /// Number of unordered pairs of triangles sharing an edge.
    pub pi: u64,
}

/// `x choose 2` without overflow.
pub fn binom2(x: u64) -> u128 {
    if x < 2 {
        0
    } else {
        (x as u128) * (x as u128 - 1) / 2
    }
}

/// `x choose 3` without overflow.
pub fn binom3(x: u64) -> u128 {
    if x < 3 {
        0
    } else {
        (x as u128) * (x as u128 - 1) * (x as u128 - 2) / 6
    }
}

/// Exact statistics via per-edge sorted-adjacency intersection.
///
/// For each edge (u, v), the common neighbors of u and v are exactly the
/// apexes of the triangles containing the edge, so the intersection size
/// is the edge's tower height, Σ heights = 3·t3, and π = Σ C(height, 2).
pub fn compute_stats(g: &Graph) -> GraphStats {
    let mut tower_heights = vec![0u64; g.edge_count()];
    let mut in_triangle = vec![false; g.vertex_count()];
    let mut height_sum: u64 = 0;
    let mut max_tower: u64 = 0;
    let mut pi: u128 = 0;

    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        let mut height = 0u64;
        let (mut a, mut b) = (g.neighbors(u).iter(), g.neighbors(v).iter());
        let (mut x, mut y) = (a.next(), b.next());
        while let (Some(&p), Some(&q)) = (x, y) {
            match p.cmp(&q) {
                std::cmp::Ordering::Less => x = a.next(),
                std::cmp::Ordering::Greater => y = b.next(),
                std::cmp::Ordering::Equal => {
                    height += 1;
                    in_triangle[p as usize] = true;
                    x = a.next();
                    y = b.next();
                }
            }
        }
        if height > 0 {
            in_triangle[u as usize] = true;
            in_triangle[v as usize] = true;
        }
        tower_heights[idx] = height;
        height_sum += height;
        max_tower = max_tower.max(height);
        pi += binom2(height);
    }

    GraphStats {
        t3: height_sum / 3,
        rho: in_triangle.iter().filter(|&&b| b).count() as u64,
        tower_heights,
        max_tower,
        pi: u64::try_from(pi).expect("edge-sharing pair count exceeds u64"),
    }
}

/// Exact triangle count only; cheaper than [`compute_stats`] when the
/// other fields are not needed (e.g. inside sampling loops).
pub fn triangle_count(g: &Graph) -> u64 {
    let mut sum = 0u64;
    for &(u, v) in g.edges() {
        sum += sorted_intersection_size(g.neighbors(u), g.neighbors(v));
    }
    sum / 3
}

fn sorted_intersection_size(a: &[u32], b: &[u32]) -> u64 {
    let (mut i, mut j, mut count) = (0, 0, 0u64);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Exact mean and variance of the triangle count after independent edge
/// retention with probability `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SparsificationMoments {
    pub p: f64,
    pub mu: f64,
    pub sigma_sq: f64,
}

/// Moments of the sparsified triangle count.
///
/// A triangle survives with probability p^3. Two triangles sharing an edge
/// survive jointly with probability p^5, giving covariance p^5 - p^6 per
/// sharing pair and zero otherwise, hence
/// sigma^2 = t3·p^3·(1 - p^3) + 2·pi·(p^5 - p^6).
pub fn sparsification_moments(g: &Graph, p: f64) -> Result<SparsificationMoments, OracleError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(OracleError::InvalidProbability { p });
    }
    let stats = compute_stats(g);
    let t3 = stats.t3 as f64;
    let pi = stats.pi as f64;
    let p3 = p.powi(3);
    let mu = p3 * t3;
    let sigma_sq = t3 * p3 * (1.0 - p3) + 2.0 * pi * (p.powi(5) - p.powi(6));
    Ok(SparsificationMoments { p, mu, sigma_sq })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailSide {
    Upper,
    Lower,
}

/// phi(x) = (1 + x)·ln(1 + x) - x, extended by continuity at x = -1.
fn phi(x: f64) -> f64 {
    if x == -1.0 {
        1.0
    } else {
        (1.0 + x) * (1.0 + x).ln() - x
    }
}

/// Binomial-style Chernoff tail bound: e^{-mu·phi(t/mu)} for the upper
/// tail Pr(X >= mu + t), e^{-mu·phi(-t/mu)} for the lower tail
/// Pr(X <= mu - t). The lower side requires t <= mu.
pub fn chernoff_tail(mu: f64, t: f64, side: TailSide) -> Result<f64, OracleError> {
    if !mu.is_finite() || mu <= 0.0 {
        return Err(OracleError::InvalidArgs {
            reason: "mu must be positive and finite",
        });
    }
    if !t.is_finite() || t < 0.0 {
        return Err(OracleError::InvalidArgs {
            reason: "t must be non-negative and finite",
        });
    }
    let x = match side {
        TailSide::Upper => t / mu,
        TailSide::Lower => {
            if t > mu {
                return Err(OracleError::InvalidArgs {
                    reason: "lower tail requires t <= mu",
                });
            }
            -t / mu
        }
    };
    Ok((-mu * phi(x)).exp().clamp(0.0, 1.0))
}

/// Chebyshev bound on Pr[X = 0]: min(1, (sigma/mu)^2).
pub fn chebyshev_zero_bound(mu: f64, sigma: f64) -> Result<f64, OracleError> {
    if !mu.is_finite() || mu <= 0.0 {
        return Err(OracleError::InvalidArgs {
            reason: "mu must be positive and finite",
        });
    }
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(OracleError::InvalidArgs {
            reason: "sigma must be non-negative and finite",
        });
    }
    Ok((sigma / mu).powi(2).min(1.0))
}
