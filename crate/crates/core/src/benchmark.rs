//! Experiment orchestration: planted-partition sweeps, general block-model
//! ensembles and multi-start fits on a given network.
//!
//! Every `(instance, model, run)` triple is independent, so the work is
//! mapped through an [`ExecPolicy`]; rows come back in plan order no matter
//! how the pool schedules them. Graph seeds and fit seeds are separate, so
//! all models see the same graphs and the same run seeds.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::ExecPolicy;
use crate::generators::{generate_ppm, generate_sbm, Planted, PpmSpec, SbmSpec};
use crate::graph::Graph;
use crate::io::{parse_edge_list_with, ParseOptions};
use crate::likelihood::{log_likelihood, omega_mle, OmegaMatrix};
use crate::metrics::{assortativity_level, count_assortative_communities, nmi, AssortativityLevel};
use crate::partition::Partition;
use crate::search::{fit, multi_start_with, FitConfig, FitResult};
use crate::solver::{AssortativityMode, SolverConfig};
use crate::stats::BlockStats;

/// Slack used when classifying fitted block matrices.
pub const ASSORTATIVITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "dc-sbm")]
    DcSbm,
    #[serde(rename = "ac-dc-sbm")]
    AcDcSbm,
    #[serde(rename = "modularity")]
    Modularity,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::DcSbm, Model::AcDcSbm, Model::Modularity];

    pub fn name(self) -> &'static str {
        match self {
            Model::DcSbm => "dc-sbm",
            Model::AcDcSbm => "ac-dc-sbm",
            Model::Modularity => "modularity",
        }
    }

    /// Search configuration for this model; `ac_mode` applies to AC-DC-SBM.
    pub fn fit_config(self, k: usize, seed: u64, ac_mode: AssortativityMode) -> FitConfig {
        match self {
            Model::DcSbm => FitConfig::new(k, AssortativityMode::None, seed),
            Model::AcDcSbm => FitConfig::new(k, ac_mode, seed),
            Model::Modularity => FitConfig::modularity(k, seed),
        }
    }
}

impl std::str::FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown model `{s}`")))
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    PpmSweep,
    SbmEnsemble,
    RealNetwork,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentPlan {
    pub kind: ExperimentKind,
    pub models: Vec<Model>,
    pub runs: usize,
    /// Base seed for generated instances (instance `j` uses `instance_seed + j`).
    pub instance_seed: u64,
    /// Base seed for fits (run `r` uses `fit_seed + r` for every model).
    pub fit_seed: u64,
    pub n: usize,
    pub k: usize,
    pub avg_degree: f64,
    pub ratios: Vec<f64>,
    pub datasets: usize,
    pub diag_range: (f64, f64),
    pub offdiag_range: (f64, f64),
    pub quantile: f64,
    pub graph: Option<PathBuf>,
    pub one_based: bool,
    pub ac_mode: AssortativityMode,
    pub max_sweeps: usize,
    pub solver: SolverConfig,
    pub exec: ExecPolicy,
    pub output: Option<PathBuf>,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        Self {
            kind: ExperimentKind::PpmSweep,
            models: vec![Model::DcSbm, Model::AcDcSbm],
            runs: 20,
            instance_seed: 1,
            fit_seed: 1000,
            n: 100,
            k: 4,
            avg_degree: 16.0,
            ratios: (1..=13).map(|i| i as f64 * 0.05).collect(),
            datasets: 10,
            diag_range: (0.45, 0.55),
            offdiag_range: (0.0, 0.4),
            quantile: 0.10,
            graph: None,
            one_based: false,
            ac_mode: AssortativityMode::Strong,
            max_sweeps: 1000,
            solver: SolverConfig::default(),
            exec: ExecPolicy::Parallel,
            output: None,
        }
    }
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::Config("plan needs at least one run".into()));
        }
        if self.models.is_empty() {
            return Err(Error::Config("plan needs at least one model".into()));
        }
        if !(0.0..=1.0).contains(&self.quantile) {
            return Err(Error::Config("quantile must lie in [0, 1]".into()));
        }
        self.solver.validate()
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
    }

    fn fit_config(&self, model: Model, run: usize) -> FitConfig {
        let mut cfg = model.fit_config(self.k, self.fit_seed.wrapping_add(run as u64), self.ac_mode);
        cfg.max_sweeps = self.max_sweeps;
        cfg.solver = self.solver;
        cfg
    }

    fn triples(&self, instances: usize) -> Vec<(usize, Model, usize)> {
        let mut out = Vec::with_capacity(instances * self.models.len() * self.runs);
        for inst in 0..instances {
            for &model in &self.models {
                for run in 0..self.runs {
                    out.push((inst, model, run));
                }
            }
        }
        out
    }
}

/// Assortative blocks of a partition judged by its closed-form rates
/// `m_rs / T_rs`. A constrained fit always has a strong-feasible matrix, so
/// the count is taken on what the partition itself exhibits.
pub fn partition_assortative_count(g: &Graph, p: &Partition) -> Result<usize> {
    let mle = omega_mle(&BlockStats::compute(g, p)?);
    Ok(count_assortative_communities(&mle, ASSORTATIVITY_TOL))
}

/// One fitted run. `instance` is the sweep ratio or dataset index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub instance: f64,
    pub model: Model,
    pub run: usize,
    pub seed: u64,
    pub nmi: f64,
    pub loglik: f64,
    pub score: f64,
    pub assortative_count: usize,
    pub converged: bool,
    /// Space-separated block labels.
    pub partition: String,
    /// Space-separated row-major block matrix.
    pub omega: String,
}

impl RunRow {
    fn new(
        instance: f64,
        model: Model,
        run: usize,
        g: &Graph,
        truth: &Partition,
        result: &FitResult,
    ) -> Result<Self> {
        Ok(Self {
            instance,
            model,
            run,
            seed: result.seed,
            nmi: nmi(truth, &result.partition)?,
            loglik: result.log_likelihood,
            score: result.score,
            assortative_count: partition_assortative_count(g, &result.partition)?,
            converged: result.converged,
            partition: join(result.partition.assignment()),
            omega: join(result.omega.as_slice()),
        })
    }

    pub fn decode_partition(&self, k: usize) -> Result<Partition> {
        let labels = self
            .partition
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| Error::Config(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(k, labels)
    }

    pub fn decode_omega(&self, k: usize) -> Result<OmegaMatrix> {
        let w = self
            .omega
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|e| Error::Config(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if w.len() != k * k {
            return Err(Error::Config(format!("omega has {} entries, expected {}", w.len(), k * k)));
        }
        Ok(OmegaMatrix::from_rows(k, w))
    }

    /// Full log-likelihood recomputed from the persisted partition and matrix.
    pub fn recompute_loglik(&self, g: &Graph, k: usize) -> Result<f64> {
        let p = self.decode_partition(k)?;
        Ok(log_likelihood(&BlockStats::compute(g, &p)?, &self.decode_omega(k)?))
    }
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Per `(instance, model)` aggregate over runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub instance: f64,
    pub model: Model,
    pub runs: usize,
    pub median_nmi: f64,
    pub mean_nmi: f64,
    /// Mean NMI over the best `quantile` share of runs by score.
    pub top_mean_nmi: f64,
    pub top_runs: usize,
    pub mean_assortative: f64,
    pub best_loglik: f64,
}

pub fn median(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Groups rows by `(instance, model)` in first-seen order.
pub fn summarize(rows: &[RunRow], quantile: f64) -> Vec<GroupSummary> {
    let mut keys: Vec<(f64, Model)> = Vec::new();
    for r in rows {
        if !keys.iter().any(|&(i, m)| i == r.instance && m == r.model) {
            keys.push((r.instance, r.model));
        }
    }
    keys.into_iter()
        .map(|(instance, model)| {
            let mut group: Vec<&RunRow> =
                rows.iter().filter(|r| r.instance == instance && r.model == model).collect();
            let nmis: Vec<f64> = group.iter().map(|r| r.nmi).collect();
            let counts: Vec<f64> = group.iter().map(|r| r.assortative_count as f64).collect();
            group.sort_by(|a, b| b.score.total_cmp(&a.score).then(a.seed.cmp(&b.seed)));
            let keep = ((quantile * group.len() as f64).ceil() as usize).clamp(1, group.len());
            let top: Vec<f64> = group[..keep].iter().map(|r| r.nmi).collect();
            GroupSummary {
                instance,
                model,
                runs: nmis.len(),
                median_nmi: median(&nmis),
                mean_nmi: mean(&nmis),
                top_mean_nmi: mean(&top),
                top_runs: keep,
                mean_assortative: mean(&counts),
                best_loglik: group.iter().map(|r| r.loglik).fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect()
}

/// A CSV row together with the fit it summarises.
#[derive(Debug, Clone)]
pub struct Fitted {
    pub row: RunRow,
    pub result: FitResult,
}

fn fit_instances(plan: &ExperimentPlan, instances: &[(f64, Planted)]) -> Result<Vec<Fitted>> {
    let triples = plan.triples(instances.len());
    plan.exec
        .map(triples, |(inst, model, run)| {
            let (label, planted) = &instances[inst];
            let result = fit(&planted.graph, &plan.fit_config(model, run))?;
            let row = RunRow::new(*label, model, run, &planted.graph, &planted.truth, &result)?;
            Ok(Fitted { row, result })
        })
        .into_iter()
        .collect()
}

/// Planted-partition sweep over `plan.ratios`, one graph per ratio.
pub fn run_ppm_sweep(plan: &ExperimentPlan) -> Result<Vec<RunRow>> {
    Ok(ppm_sweep_fits(plan)?.into_iter().map(|f| f.row).collect())
}

/// [`run_ppm_sweep`] keeping the full fit results.
pub fn ppm_sweep_fits(plan: &ExperimentPlan) -> Result<Vec<Fitted>> {
    plan.validate()?;
    let specs: Vec<(f64, PpmSpec)> = plan
        .ratios
        .iter()
        .enumerate()
        .map(|(j, &ratio)| {
            let spec = PpmSpec {
                n: plan.n,
                k: plan.k,
                avg_degree: plan.avg_degree,
                ratio,
                seed: plan.instance_seed.wrapping_add(j as u64),
            };
            (ratio, spec)
        })
        .collect();
    let instances = plan
        .exec
        .map(specs, |(ratio, spec)| generate_ppm(&spec).map(|p| (ratio, p)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    fit_instances(plan, &instances)
}

pub struct EnsembleOutput {
    pub rows: Vec<RunRow>,
    pub summary: Vec<GroupSummary>,
    pub planted: Vec<OmegaMatrix>,
}

/// General block-model ensemble of `plan.datasets` graphs.
pub fn run_sbm_ensemble(plan: &ExperimentPlan) -> Result<EnsembleOutput> {
    let (fits, planted) = sbm_ensemble_fits(plan)?;
    let rows: Vec<RunRow> = fits.into_iter().map(|f| f.row).collect();
    let summary = summarize(&rows, plan.quantile);
    Ok(EnsembleOutput { rows, summary, planted })
}

/// [`run_sbm_ensemble`] keeping the full fit results and planted matrices.
pub fn sbm_ensemble_fits(plan: &ExperimentPlan) -> Result<(Vec<Fitted>, Vec<OmegaMatrix>)> {
    plan.validate()?;
    let specs: Vec<(f64, SbmSpec)> = (0..plan.datasets)
        .map(|j| {
            let spec = SbmSpec {
                n: plan.n,
                k: plan.k,
                diag_range: plan.diag_range,
                offdiag_range: plan.offdiag_range,
                seed: plan.instance_seed.wrapping_add(j as u64),
            };
            (j as f64, spec)
        })
        .collect();
    let instances = plan
        .exec
        .map(specs, |(label, spec)| generate_sbm(&spec).map(|p| (label, p)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let fits = fit_instances(plan, &instances)?;
    Ok((fits, instances.into_iter().map(|(_, p)| p.omega).collect()))
}

/// Best-of-`runs` solution for one model on a given network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealReport {
    pub model: Model,
    pub runs: usize,
    pub log_likelihood: f64,
    pub modularity: f64,
    pub score: f64,
    pub diag_min: f64,
    pub offdiag_max: f64,
    pub lambda: f64,
    /// Classification of the fitted block matrix.
    pub level: AssortativityLevel,
    /// Assortative blocks under the partition's closed-form rates.
    pub assortative_count: usize,
    pub block_sizes: Vec<usize>,
    pub non_empty_blocks: usize,
    pub omega: OmegaMatrix,
    pub partition: Partition,
}

impl RealReport {
    pub fn from_best(g: &Graph, model: Model, runs: usize, best: &FitResult) -> Result<Self> {
        Ok(Self {
            model,
            runs,
            log_likelihood: best.log_likelihood,
            modularity: best.modularity,
            score: best.score,
            diag_min: best.omega.min_diagonal(),
            offdiag_max: best.omega.max_off_diagonal(),
            lambda: best.lambda,
            level: assortativity_level(&best.omega, ASSORTATIVITY_TOL),
            assortative_count: partition_assortative_count(g, &best.partition)?,
            block_sizes: best.partition.sizes().to_vec(),
            non_empty_blocks: best.partition.non_empty_blocks(),
            omega: best.omega.clone(),
            partition: best.partition.clone(),
        })
    }
}

pub fn load_graph(path: &Path, one_based: bool) -> Result<Graph> {
    parse_edge_list_with(BufReader::new(File::open(path)?), ParseOptions { one_based })
}

/// Multi-start every model in the plan on `g` with `k` blocks.
pub fn run_real(plan: &ExperimentPlan, g: &Graph, k: usize) -> Result<Vec<RealReport>> {
    plan.validate()?;
    plan.models
        .iter()
        .map(|&model| {
            let mut cfg = model.fit_config(k, plan.fit_seed, plan.ac_mode);
            cfg.max_sweeps = plan.max_sweeps;
            cfg.solver = plan.solver;
            let results = multi_start_with(g, &cfg, plan.runs, plan.exec)?;
            RealReport::from_best(g, model, plan.runs, &results[0])
        })
        .collect()
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows(path: &Path) -> Result<Vec<RunRow>> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    std::io::Write::write_all(&mut w, b"\n")?;
    Ok(())
}

#[derive(Serialize)]
struct Manifest<'a> {
    plan: &'a ExperimentPlan,
    version: &'static str,
    rows: usize,
    files: Vec<&'static str>,
}

/// Runs a plan and writes its artifacts into `out_dir`:
/// `runs.csv` and `summary.csv` for generated experiments, `report.json`
/// for a real network, plus `manifest.json` in every case.
pub fn run_plan(plan: &ExperimentPlan, out_dir: &Path) -> Result<()> {
    std::fs::create_dir_all(out_dir)?;
    let (rows, files) = match plan.kind {
        ExperimentKind::PpmSweep => {
            let rows = run_ppm_sweep(plan)?;
            write_csv(&out_dir.join("runs.csv"), &rows)?;
            write_csv(&out_dir.join("summary.csv"), &summarize(&rows, plan.quantile))?;
            (rows.len(), vec!["runs.csv", "summary.csv"])
        }
        ExperimentKind::SbmEnsemble => {
            let out = run_sbm_ensemble(plan)?;
            write_csv(&out_dir.join("runs.csv"), &out.rows)?;
            write_csv(&out_dir.join("summary.csv"), &out.summary)?;
            write_json(&out_dir.join("planted.json"), &out.planted)?;
            (out.rows.len(), vec!["runs.csv", "summary.csv", "planted.json"])
        }
        ExperimentKind::RealNetwork => {
            let path = plan
                .graph
                .as_deref()
                .ok_or_else(|| Error::Config("real-network plan needs a `graph` path".into()))?;
            let g = load_graph(path, plan.one_based)?;
            let reports = run_real(plan, &g, plan.k)?;
            write_json(&out_dir.join("report.json"), &reports)?;
            (reports.len(), vec!["report.json"])
        }
    };
    let manifest = Manifest {
        plan,
        version: env!("CARGO_PKG_VERSION"),
        rows,
        files,
    };
    write_json(&out_dir.join("manifest.json"), &manifest)
}
