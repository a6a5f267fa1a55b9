use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tristream::detectors::{run_detector, Algorithm, DetectorConfig};
use tristream::generators::{
    gen_disj_gadget, gen_disjoint_triangles, gen_double_bipartite, gen_index_gadget, gen_random,
    gen_tower, BitVector,
};
use tristream::graph::{parse_edge_list, serialize_edge_list, Graph};
use tristream::harness::{
    structural_audit, run_trials_parallel, trial_seed, verify_variance, TrialReport,
};
use tristream::oracle::compute_stats;

#[derive(Parser)]
#[command(
    name = "tristream",
    version,
    about = "Streaming triangle detection: generators, exact statistics, 2-pass detectors, and a Monte Carlo bench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list.
    #[command(subcommand)]
    Gen(GenFamily),
    /// Print exact triangle statistics of an edge list as JSON.
    Stats { edgelist: PathBuf },
    /// Run a single detector execution and print the outcome as JSON.
    Detect {
        #[arg(long, value_enum)]
        alg: AlgArg,
        /// Triangle threshold (detectors a and a-adaptive).
        #[arg(long = "T")]
        triangle_threshold: Option<u64>,
        /// Triangle density (detector a2).
        #[arg(long)]
        rho: Option<u64>,
        #[arg(long)]
        seed: u64,
        edgelist: PathBuf,
    },
    /// Run Monte Carlo detector trials and print a report.
    Bench {
        #[arg(long, value_enum)]
        alg: AlgArg,
        #[arg(long)]
        trials: u64,
        /// Master seed; trial i runs with a seed derived from it.
        #[arg(long)]
        seed: u64,
        #[arg(long = "T")]
        triangle_threshold: Option<u64>,
        #[arg(long)]
        rho: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Worker threads; the report is identical for any value.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        edgelist: PathBuf,
    },
    /// Compare exact sparsified-triangle moments against simulation.
    /// Exits 1 when a z-score exceeds 5.
    Variance {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        edgelist: PathBuf,
    },
    /// Check the structural inequalities on a graph; exits 1 on violation.
    Audit { edgelist: PathBuf },
}

#[derive(Subcommand)]
enum GenFamily {
    /// A base edge with s apex triangles, optionally padded by a
    /// triangle-free matching on fresh vertices.
    Tower {
        #[arg(long)]
        s: u64,
        #[arg(long, default_value_t = 0)]
        pad: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Vertex-disjoint triangles.
    Disjoint {
        #[arg(long = "t")]
        count: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Two stacked complete bipartite graphs: triangle-free, 2k^2 edges.
    Bipartite {
        #[arg(long)]
        k: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Index gadget over a bit vector: T triangles iff bit ell is set.
    Index {
        #[arg(long)]
        f: u64,
        #[arg(long)]
        ell: u64,
        #[arg(long = "T")]
        triangles: u64,
        #[command(flatten)]
        bits: BitsArg,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Disjointness gadget over two bit vectors: the triangle count is
    /// their inner product.
    Disj {
        /// First vector as a 0/1 string.
        #[arg(long)]
        x: Option<String>,
        /// Second vector as a 0/1 string.
        #[arg(long)]
        y: Option<String>,
        #[command(flatten)]
        bits: BitsArg,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Seeded Erdős–Rényi-style random graph.
    Random {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct BitsArg {
    /// Explicit bit vector as a 0/1 string.
    #[arg(long)]
    bits: Option<String>,
    /// Draw this many random bits instead of --bits.
    #[arg(long)]
    random_bits: Option<usize>,
    /// Number of ones among the random bits.
    #[arg(long)]
    ones: Option<usize>,
    /// Seed for the random bits.
    #[arg(long)]
    seed: Option<u64>,
}

impl BitsArg {
    /// Resolve one vector; `stream` distinguishes multiple draws from the
    /// same seed (the x and y of the disjointness gadget).
    fn resolve(&self, explicit: Option<&String>, stream: u64) -> Result<BitVector, String> {
        if let Some(s) = explicit.or(self.bits.as_ref()) {
            return BitVector::from_bit_str(s).map_err(|e| e.to_string());
        }
        match (self.random_bits, self.ones, self.seed) {
            (Some(len), Some(ones), Some(seed)) => {
                BitVector::random(len, ones, trial_seed(seed, stream)).map_err(|e| e.to_string())
            }
            _ => Err("supply --bits (or --x/--y), or all of --random-bits --ones --seed".into()),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgArg {
    A,
    #[value(name = "a-adaptive")]
    AAdaptive,
    A2,
}

impl From<AlgArg> for Algorithm {
    fn from(a: AlgArg) -> Algorithm {
        match a {
            AlgArg::A => Algorithm::Sparsification,
            AlgArg::AAdaptive => Algorithm::SparsificationAdaptive,
            AlgArg::A2 => Algorithm::VertexSampling,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Table,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Gen(family) => run_gen(family),
        Command::Stats { edgelist } => {
            let g = load_graph(&edgelist)?;
            let s = compute_stats(&g);
            let json = serde_json::json!({
                "t3": s.t3,
                "rho": s.rho,
                "max_tower": s.max_tower,
                "pi": s.pi,
                "n": g.vertex_count(),
                "m": g.edge_count(),
            });
            println!("{json}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Detect {
            alg,
            triangle_threshold,
            rho,
            seed,
            edgelist,
        } => {
            let g = load_graph(&edgelist)?;
            let cfg = build_config(alg, triangle_threshold, rho, seed, &g)?;
            let mut stream = g.open_stream(2, None);
            let outcome = run_detector(alg.into(), &mut stream, &cfg).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string(&outcome).expect("serializable"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            alg,
            trials,
            seed,
            triangle_threshold,
            rho,
            format,
            threads,
            edgelist,
        } => {
            let g = load_graph(&edgelist)?;
            let cfg = build_config(alg, triangle_threshold, rho, seed, &g)?;
            let report = run_trials_parallel(&g, alg.into(), &cfg, trials, seed, threads)
                .map_err(|e| e.to_string())?;
            print_report(&report, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Variance {
            p,
            samples,
            seed,
            edgelist,
        } => {
            let g = load_graph(&edgelist)?;
            let report = verify_variance(&g, p, samples, seed).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string(&report).expect("serializable"));
            let ok = report.mean_z_score.abs() <= 5.0 && report.variance_z_score.abs() <= 5.0;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Audit { edgelist } => {
            let g = load_graph(&edgelist)?;
            let record = structural_audit(&g);
            println!("{}", serde_json::to_string(&record).expect("serializable"));
            Ok(if record.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn run_gen(family: GenFamily) -> Result<ExitCode, String> {
    let (graph, out) = match family {
        GenFamily::Tower { s, pad, out } => (gen_tower(s, pad).map_err(|e| e.to_string())?, out),
        GenFamily::Disjoint { count, out } => {
            (gen_disjoint_triangles(count).map_err(|e| e.to_string())?, out)
        }
        GenFamily::Bipartite { k, out } => (gen_double_bipartite(k), out),
        GenFamily::Index {
            f,
            ell,
            triangles,
            bits,
            out,
        } => {
            let x = bits.resolve(None, 0)?;
            (
                gen_index_gadget(&x, f, ell, triangles).map_err(|e| e.to_string())?,
                out,
            )
        }
        GenFamily::Disj { x, y, bits, out } => {
            let xv = bits.resolve(x.as_ref(), 0)?;
            let yv = bits.resolve(y.as_ref(), 1)?;
            (gen_disj_gadget(&xv, &yv).map_err(|e| e.to_string())?, out)
        }
        GenFamily::Random { n, p, seed, out } => {
            (gen_random(n, p, seed).map_err(|e| e.to_string())?, out)
        }
    };
    let text = serialize_edge_list(&graph);
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn load_graph(path: &PathBuf) -> Result<Graph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_edge_list(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn build_config(
    alg: AlgArg,
    triangle_threshold: Option<u64>,
    rho: Option<u64>,
    seed: u64,
    g: &Graph,
) -> Result<DetectorConfig, String> {
    match alg {
        AlgArg::A => {
            let t = triangle_threshold.ok_or("--T is required for --alg a")?;
            Ok(DetectorConfig::sparsification(t, g.edge_count(), seed))
        }
        AlgArg::AAdaptive => {
            let t = triangle_threshold.ok_or("--T is required for --alg a-adaptive")?;
            Ok(DetectorConfig::sparsification_adaptive(t, seed))
        }
        AlgArg::A2 => {
            let r = rho.ok_or("--rho is required for --alg a2")?;
            Ok(DetectorConfig::vertex_sampling(r, seed))
        }
    }
}

fn print_report(report: &TrialReport, format: Format) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string(report).expect("serializable"));
        }
        Format::Table => {
            println!("{:<22} {}", "trials", report.trials);
            println!("{:<22} {}", "found", report.found);
            println!("{:<22} {}", "not_found", report.not_found);
            println!("{:<22} {}", "fail", report.fail);
            println!("{:<22} {:.3}", "stored_edges_mean", report.stored_edges_mean);
            println!("{:<22} {}", "stored_edges_max", report.stored_edges_max);
            println!("{:<22} {:.3}", "wall_time_ms", report.wall_time_ms);
            println!("{:<22} {}", "master_seed", report.master_seed);
        }
        Format::Csv => {
            println!(
                "trials,found,not_found,fail,stored_edges_mean,stored_edges_max,wall_time_ms,master_seed"
            );
            println!(
                "{},{},{},{},{},{},{},{}",
                report.trials,
                report.found,
                report.not_found,
                report.fail,
                report.stored_edges_mean,
                report.stored_edges_max,
                report.wall_time_ms,
                report.master_seed
            );
        }
    }
}
