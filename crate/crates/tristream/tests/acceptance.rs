//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS line with the measured numbers (visible under `--nocapture`).
//!
//! Every probabilistic comparison runs at least 10^3 trials under a fixed
//! master seed and is judged on a Wilson 95% interval, not the point
//! estimate.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tristream::detectors::{Algorithm, DetectionOutcome, DetectorConfig, Verdict};
use tristream::generators::{
    gen_disj_gadget, gen_disjoint_triangles, gen_double_bipartite, gen_index_gadget, gen_random,
    gen_tower, BitVector,
};
use tristream::graph::Graph;
use tristream::harness::{structural_audit, run_trial_outcomes, verify_variance, wilson_interval};
use tristream::oracle::{binom3, compute_stats, sparsification_moments};

const Z95: f64 = 1.959963984540054;

fn outcomes(
    g: &Graph,
    alg: Algorithm,
    cfg: &DetectorConfig,
    trials: u64,
    master_seed: u64,
) -> Vec<DetectionOutcome> {
    run_trial_outcomes(g, alg, cfg, trials, master_seed).expect("trials run")
}

fn count(outcomes: &[DetectionOutcome], verdict: Verdict) -> u64 {
    outcomes.iter().filter(|o| o.verdict == verdict).count() as u64
}

fn all_detector_configs(g: &Graph) -> [(Algorithm, DetectorConfig); 3] {
    let m = g.edge_count();
    [
        (
            Algorithm::Sparsification,
            DetectorConfig::sparsification(216, m, 0),
        ),
        (
            Algorithm::SparsificationAdaptive,
            DetectorConfig::sparsification_adaptive(216, 0),
        ),
        (
            Algorithm::VertexSampling,
            DetectorConfig::vertex_sampling(12, 0),
        ),
    ]
}

/// Criterion 1: neither detector ever reports a triangle on triangle-free
/// input, across the double bipartite graph and a random bipartite corpus.
#[test]
fn criterion_01_soundness_zero_false_positives() {
    let mut runs = 0u64;

    let bip = gen_double_bipartite(20);
    for (alg, cfg) in &all_detector_configs(&bip) {
        let outs = outcomes(&bip, *alg, cfg, 1000, 0xB17A);
        assert_eq!(
            count(&outs, Verdict::TriangleFound),
            0,
            "{alg:?} on the double bipartite graph"
        );
        runs += outs.len() as u64;
    }

    for graph_idx in 0..100u64 {
        let left = 1 + (graph_idx % 40) as u32;
        let right = 1 + ((graph_idx * 7) % 40) as u32;
        let q = (0.05 + 0.009 * graph_idx as f64).min(0.95);
        let g = common::random_bipartite(left, right, q, 1000 + graph_idx);
        assert_eq!(compute_stats(&g).t3, 0);
        for (alg, cfg) in &all_detector_configs(&g) {
            let outs = outcomes(&g, *alg, cfg, 10, 77 + graph_idx);
            assert_eq!(
                count(&outs, Verdict::TriangleFound),
                0,
                "{alg:?} on random bipartite #{graph_idx}"
            );
            runs += outs.len() as u64;
        }
    }
    println!("criterion 1 PASS: soundness, 0 false positives over {runs} runs");
}

fn sparsification_batches() -> [(&'static str, Graph, u64, u64); 2] {
    [
        ("1000 disjoint triangles", gen_disjoint_triangles(1000).unwrap(), 1000, 0xD15C),
        ("tower of height 1000", gen_tower(1000, 0).unwrap(), 1000, 0x70E3),
    ]
}

/// Criterion 2: the sparsification detector errs (Fail or NoTriangle) with
/// Wilson-95% upper bound at most 1/3 on instances holding at least T
/// triangles, T = 1000.
#[test]
fn criterion_02_sparsification_success_rate() {
    let mut lines = Vec::new();
    for (name, g, t, master) in sparsification_batches() {
        let cfg = DetectorConfig::sparsification(t, g.edge_count(), 0);
        let outs = outcomes(&g, Algorithm::Sparsification, &cfg, 1000, master);
        let errors = count(&outs, Verdict::Fail) + count(&outs, Verdict::NoTriangle);
        let (_, hi) = wilson_interval(errors, outs.len() as u64, Z95);
        assert!(
            hi <= 1.0 / 3.0,
            "{name}: error upper bound {hi:.4} exceeds 1/3"
        );
        lines.push(format!("{name}: {errors}/1000 errors, Wilson hi {hi:.4}"));
    }
    println!("criterion 2 PASS: {}", lines.join("; "));
}

/// Criterion 3: the stored-edge peak respects the hard cap 30m/T^(1/3) in
/// every non-failing trial (plus one edge at the moment a run fails), and
/// the fail rate's Wilson-95% upper bound stays within 1/50 + 0.01.
#[test]
fn criterion_03_sparsification_space() {
    let mut lines = Vec::new();
    for (name, g, t, master) in sparsification_batches() {
        let m = g.edge_count();
        let cfg = DetectorConfig::sparsification(t, m, 0);
        let outs = outcomes(&g, Algorithm::Sparsification, &cfg, 1000, master);
        let cap = 30.0 * m as f64 / (t as f64).cbrt();
        for out in &outs {
            let peak = out.stored_edges_peak as f64;
            match out.verdict {
                Verdict::Fail => assert!(peak <= cap + 1.0, "{name}: fail peak {peak} > cap+1"),
                _ => assert!(peak <= cap, "{name}: peak {peak} > cap {cap}"),
            }
        }
        let fails = count(&outs, Verdict::Fail);
        let (_, hi) = wilson_interval(fails, outs.len() as u64, Z95);
        assert!(
            hi <= 1.0 / 50.0 + 0.01,
            "{name}: fail upper bound {hi:.4} exceeds 0.03"
        );
        let max_peak = outs.iter().map(|o| o.stored_edges_peak).max().unwrap();
        lines.push(format!(
            "{name}: peak {max_peak} <= cap {cap:.0}, {fails} fails (hi {hi:.4})"
        ));
    }
    println!("criterion 3 PASS: {}", lines.join("; "));
}

/// Criterion 4: on a single tall tower (height 10^4 at T = 10^4) the miss
/// rate is at most 1%.
#[test]
fn criterion_04_tall_tower_regime() {
    let g = gen_tower(10_000, 0).unwrap();
    let t = 10_000u64;
    let cfg = DetectorConfig::sparsification(t, g.edge_count(), 0);
    let outs = outcomes(&g, Algorithm::Sparsification, &cfg, 1000, 0x7A11);
    let misses = count(&outs, Verdict::NoTriangle);
    let fails = count(&outs, Verdict::Fail);
    assert!(misses <= 10, "{misses} misses out of 1000 exceed 1%");
    assert_eq!(fails, 0, "the fail threshold exceeds m; no run can fail");
    println!("criterion 4 PASS: tall tower, {misses}/1000 misses, {fails} fails");
}

/// Criterion 5: vertex sampling on a 10-tower padded to 1000 vertices
/// (density 12): miss upper bound at most 5%, mean stored edges within
/// three standard errors of 8m/rho.
#[test]
fn criterion_05_vertex_sampling_guarantees() {
    let g = gen_tower(10, 494).unwrap();
    assert_eq!(g.vertex_count(), 1000);
    let stats = compute_stats(&g);
    assert_eq!(stats.rho, 12);

    let cfg = DetectorConfig::vertex_sampling(stats.rho, 0);
    let trials = 2000u64;
    let outs = outcomes(&g, Algorithm::VertexSampling, &cfg, trials, 0xA2A2);

    let misses = count(&outs, Verdict::NoTriangle);
    let (_, hi) = wilson_interval(misses, trials, Z95);
    assert!(hi <= 0.05, "miss upper bound {hi:.4} exceeds 0.05");

    let peaks: Vec<f64> = outs.iter().map(|o| o.stored_edges_peak as f64).collect();
    let mean = peaks.iter().sum::<f64>() / trials as f64;
    let var = peaks.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials as f64 - 1.0);
    let se = (var / trials as f64).sqrt();
    let bound = 8.0 * g.edge_count() as f64 / stats.rho as f64;
    assert!(
        mean <= bound + 3.0 * se,
        "mean stored {mean:.2} exceeds {bound:.2} + 3se ({se:.3})"
    );
    println!(
        "criterion 5 PASS: {misses}/{trials} misses (hi {hi:.4}), mean stored {mean:.1} <= {bound:.1}"
    );
}

/// Criterion 6: gadget correctness. The index gadget carries exactly
/// T·x[ell] triangles and the disjointness gadget exactly the inner
/// product, over randomized corpora. Zero tolerance.
#[test]
fn criterion_06_gadget_correctness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6AD6);

    for _ in 0..1000 {
        let a = rng.random_range(1..=8u64);
        let f = rng.random_range(1..=8u64);
        let len = (a * f) as usize;
        let ones = rng.random_range(0..=len);
        let x = BitVector::random(len, ones, rng.random()).unwrap();
        let ell = rng.random_range(1..=len as u64);
        let t = rng.random_range(1..=20u64);
        let g = gen_index_gadget(&x, f, ell, t).unwrap();
        let expected = if x.get(ell as usize) { t } else { 0 };
        assert_eq!(compute_stats(&g).t3, expected, "index gadget a={a} f={f} ell={ell} t={t}");
    }

    for _ in 0..1000 {
        let side = rng.random_range(1..=10u64);
        let len = (side * side) as usize;
        let x = BitVector::random(len, rng.random_range(0..=len), rng.random()).unwrap();
        let y = BitVector::random(len, rng.random_range(0..=len), rng.random()).unwrap();
        let g = gen_disj_gadget(&x, &y).unwrap();
        assert_eq!(compute_stats(&g).t3, x.dot(&y), "disjointness gadget side={side}");
    }
    println!("criterion 6 PASS: 1000 index + 1000 disjointness gadgets exact");
}

/// Criterion 7: the closed-form sparsification moments match exhaustive
/// 2^m enumeration to 1e-12 relative error on every small corpus graph,
/// and simulation lands within five standard errors on the 2-tower.
#[test]
fn criterion_07_variance_oracle() {
    let mut corpus: Vec<(String, Graph)> = Vec::new();
    for s in 1..=4 {
        corpus.push((format!("tower {s}"), gen_tower(s, 0).unwrap()));
    }
    corpus.push(("K4".into(), gen_random(4, 1.0, 0).unwrap()));
    for t in 1..=4 {
        corpus.push((format!("{t} disjoint triangles"), gen_disjoint_triangles(t).unwrap()));
    }

    let mut checked = 0;
    for (name, g) in &corpus {
        assert!(g.edge_count() <= 12, "{name} exceeds the exhaustive budget");
        for &p in &[0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0] {
            let exact = sparsification_moments(g, p).unwrap();
            let (mu, var) = common::exhaustive_moments(g, p);
            let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
            assert!(rel(exact.mu, mu) <= 1e-12, "{name} p={p}: mu {} vs {}", exact.mu, mu);
            assert!(
                rel(exact.sigma_sq, var) <= 1e-12,
                "{name} p={p}: sigma_sq {} vs {}",
                exact.sigma_sq,
                var
            );
            checked += 1;
        }
    }

    let two_tower = gen_tower(2, 0).unwrap();
    let report = verify_variance(&two_tower, 0.5, 100_000, 0x5EED).unwrap();
    assert!((report.exact_sigma_sq - 0.25).abs() < 1e-15);
    assert!(
        report.variance_z_score.abs() <= 5.0,
        "variance z-score {} out of range",
        report.variance_z_score
    );
    println!(
        "criterion 7 PASS: {checked} moment checks exact; 2-tower empirical variance {:.5} (z {:+.2})",
        report.empirical_variance, report.variance_z_score
    );
}

fn audit_corpus() -> Vec<Graph> {
    let mut graphs = Vec::new();
    for i in 0..1000u64 {
        let n = 1 + (i % 50);
        let p = 0.02 + 0.07 * ((i / 50) % 13) as f64;
        graphs.push(gen_random(n, p.min(1.0), 31 * i + 1).unwrap());
    }
    for (s, pad) in [(1, 0), (2, 0), (5, 3), (10, 978), (100, 0)] {
        graphs.push(gen_tower(s, pad).unwrap());
    }
    for t in [1, 4, 100] {
        graphs.push(gen_disjoint_triangles(t).unwrap());
    }
    for k in [1, 2, 20] {
        graphs.push(gen_double_bipartite(k));
    }
    let x = BitVector::from_bit_str("10110110").unwrap();
    graphs.push(gen_index_gadget(&x, 4, 3, 5).unwrap());
    graphs.push(gen_index_gadget(&x, 2, 2, 7).unwrap());
    let wide = BitVector::random(16, 9, 3).unwrap();
    let other = BitVector::random(16, 7, 4).unwrap();
    graphs.push(gen_disj_gadget(&wide, &other).unwrap());
    graphs.push(gen_random(30, 1.0, 0).unwrap());
    graphs
}

/// Criterion 8: the edge-sharing pair bound pi <= 3·t3·h/2 holds on the
/// whole corpus with zero violations.
#[test]
fn criterion_08_shared_pair_bound() {
    let corpus = audit_corpus();
    for (i, g) in corpus.iter().enumerate() {
        let rec = structural_audit(g);
        assert!(
            rec.shared_pair_bound_ok,
            "graph #{i}: pi={} t3={} h={}",
            rec.pi, rec.t3, rec.max_tower
        );
    }
    println!("criterion 8 PASS: pair bound on {} graphs", corpus.len());
}

/// Criterion 9: the density bounds rho <= 3·t3 and C(rho,3) >= t3 hold on
/// the same corpus with zero violations.
#[test]
fn criterion_09_density_bounds() {
    let corpus = audit_corpus();
    for (i, g) in corpus.iter().enumerate() {
        let s = compute_stats(g);
        assert!(s.rho <= 3 * s.t3, "graph #{i}: rho={} t3={}", s.rho, s.t3);
        assert!(
            binom3(s.rho) >= s.t3 as u128,
            "graph #{i}: C(rho,3)={} t3={}",
            binom3(s.rho),
            s.t3
        );
    }
    println!("criterion 9 PASS: density bounds on {} graphs", corpus.len());
}

/// Criterion 10: a bench run with a fixed master seed produces identical
/// JSON, wall time aside, whether it runs on one thread or eight.
#[test]
fn criterion_10_bench_reproducibility() {
    use std::process::Command;

    let dir = tempfile::tempdir().unwrap();
    let edgelist = dir.path().join("triangles.el");
    std::fs::write(
        &edgelist,
        tristream::serialize_edge_list(&gen_disjoint_triangles(200).unwrap()),
    )
    .unwrap();

    let bench = |threads: &str| -> serde_json::Value {
        let out = Command::new(env!("CARGO_BIN_EXE_tristream"))
            .args([
                "bench",
                "--alg",
                "a",
                "--T",
                "200",
                "--trials",
                "500",
                "--seed",
                "99",
                "--threads",
                threads,
            ])
            .arg(&edgelist)
            .output()
            .expect("bench runs");
        assert!(out.status.success(), "bench failed: {out:?}");
        let mut v: serde_json::Value =
            serde_json::from_slice(&out.stdout).expect("bench emits JSON");
        v.as_object_mut()
            .unwrap()
            .insert("wall_time_ms".into(), serde_json::json!(0));
        v
    };

    let serial = bench("1");
    let parallel = bench("8");
    assert_eq!(
        serde_json::to_string(&serial).unwrap(),
        serde_json::to_string(&parallel).unwrap()
    );
    println!("criterion 10 PASS: serial and 8-thread bench reports identical");
}
