//! `acsbm` command-line tool. Thread count for parallel multi-start follows
//! `RAYON_NUM_THREADS`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use acsbm::benchmark::{load_graph, run_plan, ExperimentKind, ExperimentPlan, Model, RealReport};
use acsbm::generators::{generate_ppm, generate_sbm, Planted, PpmSpec, SbmSpec};
use acsbm::io::{read_labels, write_edge_list, write_labels};
use acsbm::metrics::nmi;
use acsbm::{multi_start, AssortativityMode, FitResult, OmegaMatrix, Partition};
use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "acsbm", version, about = "Degree-corrected block models with assortativity constraints")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Planted partition graph with equal blocks.
    GeneratePpm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        avg_degree: f64,
        /// Off-diagonal to diagonal rate ratio.
        #[arg(long)]
        ratio: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output prefix; writes `<out>.edges`, `<out>.labels`, `<out>.json`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Block model with uniformly drawn rates and uniform labels.
    GenerateSbm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_parser = parse_range, default_value = "0.45,0.55")]
        diag_range: (f64, f64),
        #[arg(long, value_parser = parse_range, default_value = "0,0.4")]
        offdiag_range: (f64, f64),
    },
    /// Multi-start fit of one model to an edge list.
    Fit {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        model: ModelArg,
        /// Constraint family for ac-dc-sbm.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = 20)]
        runs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Solver tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 1000)]
        max_sweeps: usize,
        /// Node ids in the edge list start at 1.
        #[arg(long)]
        one_based: bool,
        #[arg(long, default_value = "result.json")]
        out: PathBuf,
    },
    /// Prints the NMI between two label files.
    Eval {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        /// Labels start at 1.
        #[arg(long)]
        one_based: bool,
    },
    /// Runs an experiment plan and writes CSV/JSON artifacts.
    Bench {
        #[arg(value_enum)]
        kind: BenchKind,
        /// JSON plan; omitted fields take their defaults.
        #[arg(long)]
        plan: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    DcSbm,
    AcDcSbm,
    Modularity,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::DcSbm => Model::DcSbm,
            ModelArg::AcDcSbm => Model::AcDcSbm,
            ModelArg::Modularity => Model::Modularity,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strong,
    Weak,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchKind {
    Ppm,
    Sbm,
    Real,
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected `lo,hi`")?;
    let lo: f64 = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let hi: f64 = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    Ok((lo, hi))
}

#[derive(Serialize)]
struct Sidecar<'a, S: Serialize> {
    generator: &'a str,
    spec: S,
    omega: &'a OmegaMatrix,
    nodes: usize,
    edges: u64,
}

#[derive(Serialize)]
struct RunSummary {
    seed: u64,
    score: f64,
    log_likelihood: f64,
    sweeps: usize,
    accepted_moves: usize,
    converged: bool,
}

#[derive(Serialize)]
struct Diagnostics {
    sweeps: usize,
    accepted_moves: usize,
    constrained_solves: usize,
    filtered_moves: usize,
    converged: bool,
    seed: u64,
}

#[derive(Serialize)]
struct FitOutput {
    graph: PathBuf,
    k: usize,
    mode: AssortativityMode,
    tol: f64,
    #[serde(flatten)]
    best: RealReport,
    labels: Vec<usize>,
    diagnostics: Diagnostics,
    all_runs: Vec<RunSummary>,
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    Ok(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
}

fn write_planted<S: Serialize>(planted: &Planted, generator: &str, spec: S, out: &Path) -> Result<()> {
    let mut edges = create(&with_ext(out, "edges"))?;
    write_edge_list(&planted.graph, &mut edges)?;
    edges.flush()?;
    let mut labels = create(&with_ext(out, "labels"))?;
    write_labels(&planted.truth, &mut labels)?;
    labels.flush()?;
    let sidecar = Sidecar {
        generator,
        spec,
        omega: &planted.omega,
        nodes: planted.graph.node_count(),
        edges: planted.graph.total_weight(),
    };
    let mut json = create(&with_ext(out, "json"))?;
    serde_json::to_writer_pretty(&mut json, &sidecar)?;
    json.flush()?;
    println!(
        "wrote {} nodes, {} edges to {}.{{edges,labels,json}}",
        planted.graph.node_count(),
        planted.graph.total_weight(),
        out.display()
    );
    Ok(())
}

fn read_partition(path: &Path, one_based: bool) -> Result<Partition> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let p = read_labels(BufReader::new(file), None).with_context(|| format!("reading {}", path.display()))?;
    if !one_based {
        return Ok(p);
    }
    let shifted = p
        .assignment()
        .iter()
        .map(|&b| b.checked_sub(1).context("label 0 in a 1-based file"))
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition::from_labels(shifted)?)
}

fn summarize_runs(results: &[FitResult]) -> Vec<RunSummary> {
    results
        .iter()
        .map(|r| RunSummary {
            seed: r.seed,
            score: r.score,
            log_likelihood: r.log_likelihood,
            sweeps: r.sweeps,
            accepted_moves: r.accepted_moves,
            converged: r.converged,
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn fit(
    graph: PathBuf,
    k: usize,
    model: Model,
    mode: Option<ModeArg>,
    runs: usize,
    seed: u64,
    tol: f64,
    max_sweeps: usize,
    one_based: bool,
    out: PathBuf,
) -> Result<()> {
    if mode.is_some() && model != Model::AcDcSbm {
        bail!("--mode only applies to --model ac-dc-sbm");
    }
    let ac_mode = match mode {
        Some(ModeArg::Weak) => AssortativityMode::Weak,
        _ => AssortativityMode::Strong,
    };
    let g = load_graph(&graph, one_based).with_context(|| format!("loading {}", graph.display()))?;
    let mut cfg = model.fit_config(k, seed, ac_mode);
    cfg.solver.tol = tol;
    cfg.max_sweeps = max_sweeps;
    let results = multi_start(&g, &cfg, runs)?;
    let best = &results[0];
    let output = FitOutput {
        graph,
        k,
        mode: cfg.mode,
        tol,
        best: RealReport::from_best(&g, model, runs, best)?,
        labels: best.partition.assignment().to_vec(),
        diagnostics: Diagnostics {
            sweeps: best.sweeps,
            accepted_moves: best.accepted_moves,
            constrained_solves: best.constrained_solves,
            filtered_moves: best.filtered_moves,
            converged: best.converged,
            seed: best.seed,
        },
        all_runs: summarize_runs(&results),
    };
    let mut w = create(&out)?;
    serde_json::to_writer_pretty(&mut w, &output)?;
    w.flush()?;
    println!(
        "{model}: log-likelihood {:.6}, modularity {:.6}, block sizes {:?} -> {}",
        best.log_likelihood,
        best.modularity,
        best.partition.sizes(),
        out.display()
    );
    Ok(())
}

fn bench(kind: BenchKind, plan: Option<PathBuf>, out: PathBuf) -> Result<()> {
    let mut plan = match plan {
        Some(path) => ExperimentPlan::load(&path).with_context(|| format!("loading plan {}", path.display()))?,
        None => ExperimentPlan::default(),
    };
    plan.kind = match kind {
        BenchKind::Ppm => ExperimentKind::PpmSweep,
        BenchKind::Sbm => ExperimentKind::SbmEnsemble,
        BenchKind::Real => ExperimentKind::RealNetwork,
    };
    plan.validate()?;
    run_plan(&plan, &out)?;
    println!("artifacts written to {}", out.display());
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::GeneratePpm { n, k, avg_degree, ratio, seed, out } => {
            let spec = PpmSpec { n, k, avg_degree, ratio, seed };
            write_planted(&generate_ppm(&spec)?, "ppm", spec, &out)
        }
        Command::GenerateSbm { n, k, seed, out, diag_range, offdiag_range } => {
            let spec = SbmSpec { diag_range, offdiag_range, ..SbmSpec::new(n, k, seed) };
            write_planted(&generate_sbm(&spec)?, "sbm", spec, &out)
        }
        Command::Fit { graph, k, model, mode, runs, seed, tol, max_sweeps, one_based, out } => {
            fit(graph, k, model.into(), mode, runs, seed, tol, max_sweeps, one_based, out)
        }
        Command::Eval { pred, truth, one_based } => {
            let (p, t) = (read_partition(&pred, one_based)?, read_partition(&truth, one_based)?);
            println!("{:?}", nmi(&p, &t)?);
            Ok(())
        }
        Command::Bench { kind, plan, out } => bench(kind, plan, out),
    }
}

fn main() -> std::process::ExitCode {
    match run(Cli::parse()) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::ExitCode::FAILURE
        }
    }
}
