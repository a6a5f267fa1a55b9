//! Python bindings for the tristream toolkit.
//!
//! Exposes the graph type, the generators, the exact statistics oracle,
//! both streaming detectors, and the Monte Carlo harness as a single
//! in-process module. Long-running harness calls release the GIL.
//!
//! Usage from Python:
//!
//!     import tristream_py as ts
//!     g = ts.gen_disjoint_triangles(1000)
//!     report = ts.run_trials(g, "a", trials=1000, master_seed=7, t=1000)
//!     assert report.found / report.trials >= 2 / 3

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use tristream::detectors::{run_detector, Algorithm, DetectorConfig, Verdict};
use tristream::generators::BitVector;
use tristream::harness;
use tristream::oracle::{self, TailSide};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_algorithm(name: &str) -> PyResult<Algorithm> {
    match name {
        "a" => Ok(Algorithm::Sparsification),
        "a-adaptive" => Ok(Algorithm::SparsificationAdaptive),
        "a2" => Ok(Algorithm::VertexSampling),
        other => Err(value_err(format!(
            "unknown algorithm {other:?}; expected \"a\", \"a-adaptive\", or \"a2\""
        ))),
    }
}

fn build_config(
    alg: Algorithm,
    t: Option<u64>,
    rho: Option<u64>,
    m: usize,
    seed: u64,
) -> PyResult<DetectorConfig> {
    match alg {
        Algorithm::Sparsification => {
            let t = t.ok_or_else(|| value_err("t is required for algorithm \"a\""))?;
            Ok(DetectorConfig::sparsification(t, m, seed))
        }
        Algorithm::SparsificationAdaptive => {
            let t = t.ok_or_else(|| value_err("t is required for algorithm \"a-adaptive\""))?;
            Ok(DetectorConfig::sparsification_adaptive(t, seed))
        }
        Algorithm::VertexSampling => {
            let rho = rho.ok_or_else(|| value_err("rho is required for algorithm \"a2\""))?;
            Ok(DetectorConfig::vertex_sampling(rho, seed))
        }
    }
}

/// An immutable simple undirected graph.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: tristream::Graph,
}

#[pymethods]
impl PyGraph {
    /// Vertex count.
    #[getter]
    fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    /// Edge count.
    #[getter]
    fn m(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner.edges().to_vec()
    }

    fn neighbors(&self, v: u32) -> PyResult<Vec<u32>> {
        if (v as usize) >= self.inner.vertex_count() {
            return Err(value_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn has_edge(&self, u: u32, v: u32) -> bool {
        self.inner.has_edge(u, v)
    }

    /// Serialize to the edge-list text format.
    fn to_edge_list(&self) -> String {
        tristream::serialize_edge_list(&self.inner)
    }

    /// Exact triangle statistics.
    fn stats(&self) -> PyGraphStats {
        PyGraphStats {
            inner: oracle::compute_stats(&self.inner),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, m={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// Exact triangle statistics of a graph.
#[pyclass(name = "GraphStats", frozen)]
struct PyGraphStats {
    inner: oracle::GraphStats,
}

#[pymethods]
impl PyGraphStats {
    /// Triangle count.
    #[getter]
    fn t3(&self) -> u64 {
        self.inner.t3
    }

    /// Number of vertices in at least one triangle.
    #[getter]
    fn rho(&self) -> u64 {
        self.inner.rho
    }

    /// Tallest tower height (0 when triangle-free).
    #[getter]
    fn max_tower(&self) -> u64 {
        self.inner.max_tower
    }

    /// Number of triangle pairs sharing an edge.
    #[getter]
    fn pi(&self) -> u64 {
        self.inner.pi
    }

    /// Per-edge tower heights, aligned with Graph.edges().
    fn tower_heights(&self) -> Vec<u64> {
        self.inner.tower_heights.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "GraphStats(t3={}, rho={}, max_tower={}, pi={})",
            self.inner.t3, self.inner.rho, self.inner.max_tower, self.inner.pi
        )
    }
}

/// Result of one detector execution.
#[pyclass(name = "DetectionOutcome", frozen, get_all)]
struct PyDetectionOutcome {
    verdict: String,
    stored_edges_peak: usize,
    passes_used: u32,
}

impl PyDetectionOutcome {
    fn from_core(out: tristream::DetectionOutcome) -> Self {
        let verdict = match out.verdict {
            Verdict::TriangleFound => "TriangleFound",
            Verdict::NoTriangle => "NoTriangle",
            Verdict::Fail => "Fail",
        };
        Self {
            verdict: verdict.into(),
            stored_edges_peak: out.stored_edges_peak,
            passes_used: out.passes_used,
        }
    }
}

#[pymethods]
impl PyDetectionOutcome {
    fn __repr__(&self) -> String {
        format!(
            "DetectionOutcome(verdict={:?}, stored_edges_peak={}, passes_used={})",
            self.verdict, self.stored_edges_peak, self.passes_used
        )
    }
}

/// Aggregate of a Monte Carlo batch of detector runs.
#[pyclass(name = "TrialReport", frozen)]
struct PyTrialReport {
    inner: harness::TrialReport,
}

#[pymethods]
impl PyTrialReport {
    #[getter]
    fn trials(&self) -> u64 {
        self.inner.trials
    }

    #[getter]
    fn found(&self) -> u64 {
        self.inner.found
    }

    #[getter]
    fn not_found(&self) -> u64 {
        self.inner.not_found
    }

    #[getter]
    fn fail(&self) -> u64 {
        self.inner.fail
    }

    #[getter]
    fn stored_edges_mean(&self) -> f64 {
        self.inner.stored_edges_mean
    }

    #[getter]
    fn stored_edges_max(&self) -> usize {
        self.inner.stored_edges_max
    }

    #[getter]
    fn wall_time_ms(&self) -> f64 {
        self.inner.wall_time_ms
    }

    #[getter]
    fn master_seed(&self) -> u64 {
        self.inner.master_seed
    }

    /// The full report as single-line JSON.
    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "TrialReport(trials={}, found={}, not_found={}, fail={})",
            self.inner.trials, self.inner.found, self.inner.not_found, self.inner.fail
        )
    }
}

/// Exact-versus-simulated sparsification moments.
#[pyclass(name = "VarianceReport", frozen)]
struct PyVarianceReport {
    inner: harness::VarianceReport,
}

#[pymethods]
impl PyVarianceReport {
    #[getter]
    fn p(&self) -> f64 {
        self.inner.p
    }

    #[getter]
    fn samples(&self) -> u64 {
        self.inner.samples
    }

    #[getter]
    fn exact_mu(&self) -> f64 {
        self.inner.exact_mu
    }

    #[getter]
    fn exact_sigma_sq(&self) -> f64 {
        self.inner.exact_sigma_sq
    }

    #[getter]
    fn empirical_mean(&self) -> f64 {
        self.inner.empirical_mean
    }

    #[getter]
    fn empirical_variance(&self) -> f64 {
        self.inner.empirical_variance
    }

    #[getter]
    fn mean_z_score(&self) -> f64 {
        self.inner.mean_z_score
    }

    #[getter]
    fn variance_z_score(&self) -> f64 {
        self.inner.variance_z_score
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "VarianceReport(exact_sigma_sq={}, empirical_variance={})",
            self.inner.exact_sigma_sq, self.inner.empirical_variance
        )
    }
}

/// Structural audit record.
#[pyclass(name = "AuditRecord", frozen, get_all)]
struct PyAuditRecord {
    t3: u64,
    rho: u64,
    max_tower: u64,
    pi: u64,
    shared_pair_bound_ok: bool,
    density_upper_ok: bool,
    density_lower_ok: bool,
    #[pyo3(name = "passed")]
    pass: bool,
}

#[pymethods]
impl PyAuditRecord {
    fn __repr__(&self) -> String {
        format!("AuditRecord(passed={})", self.pass)
    }
}

/// Parse the edge-list text format into a Graph.
#[pyfunction]
fn parse_edge_list(text: &str) -> PyResult<PyGraph> {
    tristream::parse_edge_list(text)
        .map(|inner| PyGraph { inner })
        .map_err(value_err)
}

/// Tower graph: a base edge with `s` apex triangles, padded by a
/// triangle-free matching of `pad_edges` fresh edges.
#[pyfunction]
#[pyo3(signature = (s, pad_edges=0))]
fn gen_tower(s: u64, pad_edges: u64) -> PyResult<PyGraph> {
    tristream::generators::gen_tower(s, pad_edges)
        .map(|inner| PyGraph { inner })
        .map_err(value_err)
}

/// `count` vertex-disjoint triangles.
#[pyfunction]
fn gen_disjoint_triangles(count: u64) -> PyResult<PyGraph> {
    tristream::generators::gen_disjoint_triangles(count)
        .map(|inner| PyGraph { inner })
        .map_err(value_err)
}

/// Triangle-free double complete bipartite graph on 3k vertices.
#[pyfunction]
fn gen_double_bipartite(k: u64) -> PyGraph {
    PyGraph {
        inner: tristream::generators::gen_double_bipartite(k),
    }
}

/// Index gadget over a 0/1 string: `t` triangles iff bit `ell` is set.
#[pyfunction]
fn gen_index_gadget(bits: &str, f: u64, ell: u64, t: u64) -> PyResult<PyGraph> {
    let x = BitVector::from_bit_str(bits).map_err(value_err)?;
    tristream::generators::gen_index_gadget(&x, f, ell, t)
        .map(|inner| PyGraph { inner })
        .map_err(value_err)
}

/// Disjointness gadget over two 0/1 strings: the triangle count equals
/// their inner product.
#[pyfunction]
fn gen_disj_gadget(x: &str, y: &str) -> PyResult<PyGraph> {
    let xv = BitVector::from_bit_str(x).map_err(value_err)?;
    let yv = BitVector::from_bit_str(y).map_err(value_err)?;
    tristream::generators::gen_disj_gadget(&xv, &yv)
        .map(|inner| PyGraph { inner })
        .map_err(value_err)
}

/// Seeded random simple graph with independent edge probability `p`.
#[pyfunction]
fn gen_random(n: u64, p: f64, seed: u64) -> PyResult<PyGraph> {
    tristream::generators::gen_random(n, p, seed)
        .map(|inner| PyGraph { inner })
        .map_err(value_err)
}

/// Run one detector execution over a fresh 2-pass stream.
///
/// `alg` is "a" (sparsification, needs `t`), "a-adaptive" (needs `t`), or
/// "a2" (vertex sampling, needs `rho`).
#[pyfunction]
#[pyo3(signature = (graph, alg, seed, t=None, rho=None))]
fn detect(
    graph: &PyGraph,
    alg: &str,
    seed: u64,
    t: Option<u64>,
    rho: Option<u64>,
) -> PyResult<PyDetectionOutcome> {
    let algorithm = parse_algorithm(alg)?;
    let cfg = build_config(algorithm, t, rho, graph.inner.edge_count(), seed)?;
    let mut stream = graph.inner.open_stream(2, None);
    run_detector(algorithm, &mut stream, &cfg)
        .map(PyDetectionOutcome::from_core)
        .map_err(value_err)
}

/// Run a Monte Carlo batch of detector executions. Trial i runs with the
/// seed trial_seed(master_seed, i); the GIL is released while running.
#[pyfunction]
#[pyo3(signature = (graph, alg, trials, master_seed, t=None, rho=None, threads=1))]
#[allow(clippy::too_many_arguments)]
fn run_trials(
    py: Python<'_>,
    graph: &PyGraph,
    alg: &str,
    trials: u64,
    master_seed: u64,
    t: Option<u64>,
    rho: Option<u64>,
    threads: usize,
) -> PyResult<PyTrialReport> {
    let algorithm = parse_algorithm(alg)?;
    let cfg = build_config(algorithm, t, rho, graph.inner.edge_count(), master_seed)?;
    let g = graph.inner.clone();
    py.detach(|| harness::run_trials_parallel(&g, algorithm, &cfg, trials, master_seed, threads))
        .map(|inner| PyTrialReport { inner })
        .map_err(value_err)
}

/// Exact mean and variance of the sparsified triangle count as a tuple.
#[pyfunction]
fn sparsification_moments(graph: &PyGraph, p: f64) -> PyResult<(f64, f64)> {
    oracle::sparsification_moments(&graph.inner, p)
        .map(|m| (m.mu, m.sigma_sq))
        .map_err(value_err)
}

/// Compare the exact moments against `samples` simulated sparsifications.
#[pyfunction]
fn verify_variance(
    py: Python<'_>,
    graph: &PyGraph,
    p: f64,
    samples: u64,
    master_seed: u64,
) -> PyResult<PyVarianceReport> {
    let g = graph.inner.clone();
    py.detach(|| harness::verify_variance(&g, p, samples, master_seed))
        .map(|inner| PyVarianceReport { inner })
        .map_err(value_err)
}

/// Audit the structural inequalities on a graph.
#[pyfunction]
fn audit(graph: &PyGraph) -> PyAuditRecord {
    let rec = harness::structural_audit(&graph.inner);
    PyAuditRecord {
        t3: rec.t3,
        rho: rec.rho,
        max_tower: rec.max_tower,
        pi: rec.pi,
        shared_pair_bound_ok: rec.shared_pair_bound_ok,
        density_upper_ok: rec.density_upper_ok,
        density_lower_ok: rec.density_lower_ok,
        pass: rec.pass,
    }
}

/// Chernoff tail bound e^{-mu·phi(±t/mu)}; `side` is "upper" or "lower".
#[pyfunction]
fn chernoff_tail(mu: f64, t: f64, side: &str) -> PyResult<f64> {
    let side = match side {
        "upper" => TailSide::Upper,
        "lower" => TailSide::Lower,
        other => {
            return Err(value_err(format!(
                "unknown side {other:?}; expected \"upper\" or \"lower\""
            )))
        }
    };
    oracle::chernoff_tail(mu, t, side).map_err(value_err)
}

/// Chebyshev bound on Pr[X = 0]: min(1, (sigma/mu)^2).
#[pyfunction]
fn chebyshev_zero_bound(mu: f64, sigma: f64) -> PyResult<f64> {
    oracle::chebyshev_zero_bound(mu, sigma).map_err(value_err)
}

/// The per-trial seed derivation used by the harness.
#[pyfunction]
fn trial_seed(master_seed: u64, trial_index: u64) -> u64 {
    harness::trial_seed(master_seed, trial_index)
}

/// Wilson score interval for a binomial proportion.
#[pyfunction]
#[pyo3(signature = (successes, trials, z=1.959963984540054))]
fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    harness::wilson_interval(successes, trials, z)
}

#[pymodule]
fn tristream_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyGraphStats>()?;
    m.add_class::<PyDetectionOutcome>()?;
    m.add_class::<PyTrialReport>()?;
    m.add_class::<PyVarianceReport>()?;
    m.add_class::<PyAuditRecord>()?;
    m.add_function(wrap_pyfunction!(parse_edge_list, m)?)?;
    m.add_function(wrap_pyfunction!(gen_tower, m)?)?;
    m.add_function(wrap_pyfunction!(gen_disjoint_triangles, m)?)?;
    m.add_function(wrap_pyfunction!(gen_double_bipartite, m)?)?;
    m.add_function(wrap_pyfunction!(gen_index_gadget, m)?)?;
    m.add_function(wrap_pyfunction!(gen_disj_gadget, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random, m)?)?;
    m.add_function(wrap_pyfunction!(detect, m)?)?;
    m.add_function(wrap_pyfunction!(run_trials, m)?)?;
    m.add_function(wrap_pyfunction!(sparsification_moments, m)?)?;
    m.add_function(wrap_pyfunction!(verify_variance, m)?)?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(chernoff_tail, m)?)?;
    m.add_function(wrap_pyfunction!(chebyshev_zero_bound, m)?)?;
    m.add_function(wrap_pyfunction!(trial_seed, m)?)?;
    m.add_function(wrap_pyfunction!(wilson_interval, m)?)?;
    Ok(())
}
