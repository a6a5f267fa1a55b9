//! Monte Carlo trial runner, variance cross-check, and structural audits.
//!
//! Reports are reproducible: trial i always runs with the seed
//! `trial_seed(master_seed, i)`, aggregation is order-independent, and the
//! JSON serialization of a report is byte-identical across serial and
//! parallel execution apart from the wall-clock field.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::detectors::{run_detector, Algorithm, DetectError, DetectionOutcome, DetectorConfig, Verdict};
use crate::graph::Graph;
use crate::oracle::{self, binom3, sparsification_moments, OracleError};

/// Per-trial seed derivation: the i-th output of a splitmix64 stream
/// seeded with `master_seed`. A pure function of (master_seed, i), so
/// reports do not depend on execution order or machine.
pub fn trial_seed(master_seed: u64, trial_index: u64) -> u64 {
    splitmix64_mix(master_seed.wrapping_add((trial_index + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn splitmix64_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The configuration a report was produced under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub alg: Algorithm,
    pub triangle_threshold: Option<u64>,
    pub triangle_density: Option<u64>,
    pub m_known: Option<usize>,
    pub n: usize,
    pub m: usize,
}

/// Aggregate of a batch of independent detector runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub trials: u64,
    pub found: u64,
    pub not_found: u64,
    pub fail: u64,
    pub stored_edges_mean: f64,
    pub stored_edges_max: usize,
    /// Informational only; excluded from reproducibility guarantees.
    pub wall_time_ms: f64,
    pub master_seed: u64,
    pub config_echo: ConfigEcho,
}

/// Run `trials` independent detector executions and return every outcome,
/// in trial order. Trial i uses a fresh 2-pass stream in input order and
/// the seed `trial_seed(master_seed, i)`.
pub fn run_trial_outcomes(
    g: &Graph,
    alg: Algorithm,
    cfg: &DetectorConfig,
    trials: u64,
    master_seed: u64,
) -> Result<Vec<DetectionOutcome>, DetectError> {
    run_trial_outcomes_parallel(g, alg, cfg, trials, master_seed, 1)
}

/// Parallel variant of [`run_trial_outcomes`]. Outcomes are collected by
/// trial index, so the result is identical for every thread count.
pub fn run_trial_outcomes_parallel(
    g: &Graph,
    alg: Algorithm,
    cfg: &DetectorConfig,
    trials: u64,
    master_seed: u64,
    threads: usize,
) -> Result<Vec<DetectionOutcome>, DetectError> {
    if trials < 1 {
        return Err(DetectError::InvalidConfig {
            reason: "trials must be at least 1".into(),
        });
    }
    let one_trial = |i: u64| -> Result<DetectionOutcome, DetectError> {
        let trial_cfg = DetectorConfig {
            seed: trial_seed(master_seed, i),
            ..cfg.clone()
        };
        let mut stream = g.open_stream(2, None);
        run_detector(alg, &mut stream, &trial_cfg)
    };
    if threads <= 1 {
        (0..trials).map(one_trial).collect()
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool construction");
        pool.install(|| (0..trials).into_par_iter().map(one_trial).collect())
    }
}

/// Run trials serially and aggregate into a [`TrialReport`].
pub fn run_trials(
    g: &Graph,
    alg: Algorithm,
    cfg: &DetectorConfig,
    trials: u64,
    master_seed: u64,
) -> Result<TrialReport, DetectError> {
    run_trials_parallel(g, alg, cfg, trials, master_seed, 1)
}

/// Run trials on `threads` workers and aggregate. The report equals the
/// serial one byte for byte, wall time aside.
pub fn run_trials_parallel(
    g: &Graph,
    alg: Algorithm,
    cfg: &DetectorConfig,
    trials: u64,
    master_seed: u64,
    threads: usize,
) -> Result<TrialReport, DetectError> {
    let start = Instant::now();
    let outcomes = run_trial_outcomes_parallel(g, alg, cfg, trials, master_seed, threads)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    let mut found = 0u64;
    let mut not_found = 0u64;
    let mut fail = 0u64;
    let mut peak_sum: u64 = 0;
    let mut peak_max: usize = 0;
    for out in &outcomes {
        match out.verdict {
            Verdict::TriangleFound => found += 1,
            Verdict::NoTriangle => not_found += 1,
            Verdict::Fail => fail += 1,
        }
        peak_sum += out.stored_edges_peak as u64;
        peak_max = peak_max.max(out.stored_edges_peak);
    }

    Ok(TrialReport {
        trials,
        found,
        not_found,
        fail,
        stored_edges_mean: peak_sum as f64 / trials as f64,
        stored_edges_max: peak_max,
        wall_time_ms,
        master_seed,
        config_echo: ConfigEcho {
            alg,
            triangle_threshold: cfg.triangle_threshold,
            triangle_density: cfg.triangle_density,
            m_known: cfg.m_known,
            n: g.vertex_count(),
            m: g.edge_count(),
        },
    })
}

/// Empirical check of the sparsified-triangle moments: sample independent
/// edge retentions, count triangles exactly in each, and report z-scores
/// of the empirical mean and variance against the closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarianceReport {
    pub p: f64,
    pub samples: u64,
    pub exact_mu: f64,
    pub exact_sigma_sq: f64,
    pub empirical_mean: f64,
    pub empirical_variance: f64,
    pub mean_z_score: f64,
    pub variance_z_score: f64,
    pub master_seed: u64,
}

pub fn verify_variance(
    g: &Graph,
    p: f64,
    samples: u64,
    master_seed: u64,
) -> Result<VarianceReport, OracleError> {
    if samples < 1 {
        return Err(OracleError::InvalidArgs {
            reason: "samples must be at least 1",
        });
    }
    let moments = sparsification_moments(g, p)?;

    let n = g.vertex_count();
    let mut counts = Vec::with_capacity(samples as usize);
    for i in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(master_seed, i));
        let kept: Vec<_> = g
            .edges()
            .iter()
            .copied()
            .filter(|_| rng.random::<f64>() < p)
            .collect();
        let sub = Graph::with_vertices(n, kept).expect("subgraph of a valid graph");
        counts.push(oracle::triangle_count(&sub) as f64);
    }

    let nf = samples as f64;
    let mean = counts.iter().sum::<f64>() / nf;
    let (mut m2, mut m4) = (0.0f64, 0.0f64);
    for &c in &counts {
        let d = c - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    let variance = if samples > 1 { m2 / (nf - 1.0) } else { 0.0 };
    let fourth_moment = m4 / nf;

    // Standard error of the mean from the exact sigma; of the variance
    // from the empirical fourth central moment.
    let mean_se = (moments.sigma_sq / nf).sqrt();
    let var_se = if samples > 1 {
        let se_sq = (fourth_moment - variance * variance * (nf - 3.0) / (nf - 1.0)) / nf;
        se_sq.max(0.0).sqrt()
    } else {
        0.0
    };

    Ok(VarianceReport {
        p,
        samples,
        exact_mu: moments.mu,
        exact_sigma_sq: moments.sigma_sq,
        empirical_mean: mean,
        empirical_variance: variance,
        mean_z_score: z_score(mean - moments.mu, mean_se),
        variance_z_score: z_score(variance - moments.sigma_sq, var_se),
        master_seed,
    })
}

fn z_score(diff: f64, se: f64) -> f64 {
    if diff == 0.0 {
        0.0
    } else if se == 0.0 {
        f64::INFINITY * diff.signum()
    } else {
        diff / se
    }
}

/// Structural audit of one graph against the oracle's inequalities:
/// the edge-sharing pair bound pi <= 3·t3·h/2 and the two-sided density
/// bounds rho <= 3·t3, C(rho,3) >= t3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRecord {
    pub n: usize,
    pub m: usize,
    pub t3: u64,
    pub rho: u64,
    pub max_tower: u64,
    pub pi: u64,
    pub shared_pair_bound_ok: bool,
    pub density_upper_ok: bool,
    pub density_lower_ok: bool,
    pub pass: bool,
}

pub fn structural_audit(g: &Graph) -> AuditRecord {
    let s = oracle::compute_stats(g);
    // 2·pi <= 3·t3·h, checked in u128; vacuous for triangle-free graphs.
    let shared_pair_bound_ok = 2 * s.pi as u128 <= 3 * s.t3 as u128 * s.max_tower as u128;
    let density_upper_ok = s.rho <= 3 * s.t3;
    let density_lower_ok = binom3(s.rho) >= s.t3 as u128;
    AuditRecord {
        n: g.vertex_count(),
        m: g.edge_count(),
        t3: s.t3,
        rho: s.rho,
        max_tower: s.max_tower,
        pi: s.pi,
        shared_pair_bound_ok,
        density_upper_ok,
        density_lower_ok,
        pass: shared_pair_bound_ok && density_upper_ok && density_lower_ok,
    }
}

/// Wilson score interval for a binomial proportion at normal quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p_hat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p_hat + z2 / (2.0 * n)) / denom;
    let half = z * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}
