//! Relocation local search for the (assortativity-constrained) DC-SBM.
//!
//! Each sweep visits every node and every destination block. A candidate
//! is first scored by the unconstrained profile likelihood, updated in
//! `O(K)` from the node's per-block edge counts. That score is an upper
//! bound on the constrained optimum for the same partition, so any
//! candidate whose bound does not beat the incumbent is dropped without a
//! solve. Survivors whose closed-form block matrix already satisfies the
//! constraints are accepted directly; the rest go through
//! [`solve_constrained`] and are kept only if the constrained value still
//! improves.
//!
//! All comparisons happen on the profile scale, which differs from the full
//! log-likelihood by the graph constant [`profile_offset`]. Reported values
//! are full log-likelihoods.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::ExecPolicy;
use crate::graph::Graph;
use crate::likelihood::{
    log_likelihood, modularity, omega_mle, profile_log_likelihood, profile_offset, xlogx,
    OmegaMatrix,
};
use crate::partition::Partition;
use crate::solver::{is_feasible, solve_constrained, AssortativityMode, SolverConfig};
use crate::stats::{check_move, BlockStats, NodeLinks};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    #[default]
    Likelihood,
    Modularity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanOrder {
    Ascending,
    #[default]
    Shuffled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    pub k: usize,
    pub mode: AssortativityMode,
    #[serde(default)]
    pub objective: Objective,
    pub seed: u64,
    #[serde(default = "default_max_sweeps")]
    pub max_sweeps: usize,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub scan: ScanOrder,
}

fn default_max_sweeps() -> usize {
    1000
}

impl FitConfig {
    pub fn new(k: usize, mode: AssortativityMode, seed: u64) -> Self {
        Self {
            k,
            mode,
            objective: Objective::Likelihood,
            seed,
            max_sweeps: default_max_sweeps(),
            solver: SolverConfig::default(),
            scan: ScanOrder::Shuffled,
        }
    }

    pub fn modularity(k: usize, seed: u64) -> Self {
        Self {
            objective: Objective::Modularity,
            ..Self::new(k, AssortativityMode::None, seed)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub partition: Partition,
    pub omega: OmegaMatrix,
    pub lambda: f64,
    /// Full DC-SBM log-likelihood at `(omega, partition)`.
    pub log_likelihood: f64,
    pub modularity: f64,
    /// The maximised objective: `log_likelihood` or `modularity`.
    pub score: f64,
    /// Objective value after initialisation and after every accepted move.
    pub trace: Vec<f64>,
    pub sweeps: usize,
    pub accepted_moves: usize,
    pub constrained_solves: usize,
    pub filtered_moves: usize,
    /// False if `max_sweeps` ran out before a sweep without improvement.
    pub converged: bool,
    pub seed: u64,
    pub mode: AssortativityMode,
    pub objective: Objective,
}

/// Change in the profile log-likelihood when a node with `links` moves
/// from block `a` to block `b`. Only rows/columns `a` and `b` change.
pub(crate) fn profile_delta(stats: &BlockStats, links: &NodeLinks, a: usize, b: usize) -> f64 {
    let d = &links.to_block;
    let s = links.self_term;
    let mut delta = 0.0;
    for (r, &dr) in d.iter().enumerate() {
        if r == a || r == b || dr == 0 {
            continue;
        }
        let (mar, mbr) = (stats.m(a, r), stats.m(b, r));
        delta += xlogx((mar - dr) as f64) + xlogx((mbr + dr) as f64)
            - xlogx(mar as f64)
            - xlogx(mbr as f64);
    }
    let (maa, mbb, mab) = (stats.m(a, a), stats.m(b, b), stats.m(a, b));
    delta += 0.5
        * (xlogx((maa - 2 * d[a] - s) as f64) - xlogx(maa as f64)
            + xlogx((mbb + 2 * d[b] + s) as f64)
            - xlogx(mbb as f64));
    delta += xlogx((mab + d[a] - d[b]) as f64) - xlogx(mab as f64);
    let (ka, kb, ki) = (stats.kappa(a), stats.kappa(b), links.degree);
    delta -= xlogx((ka - ki) as f64) + xlogx((kb + ki) as f64) - xlogx(ka as f64) - xlogx(kb as f64);
    delta
}

/// Change in modularity for the same move.
pub(crate) fn modularity_delta(stats: &BlockStats, links: &NodeLinks, a: usize, b: usize) -> f64 {
    let two_m = stats.two_m() as f64;
    let d = &links.to_block;
    let ki = links.degree as f64;
    let internal = 2.0 * (d[b] as f64 - d[a] as f64) / two_m;
    let null = 2.0 * ki * (stats.kappa(b) as f64 - stats.kappa(a) as f64 + ki) / (two_m * two_m);
    internal - null
}

/// Profile-likelihood change for relocating node `i` to block `b`,
/// computed incrementally.
pub fn delta_relocation(stats: &BlockStats, g: &Graph, p: &Partition, i: usize, b: usize) -> Result<f64> {
    let a = check_move(p, i, b)?;
    Ok(profile_delta(stats, &NodeLinks::new(g, p, i), a, b))
}

// Exact moves (closed-form scores) must beat the incumbent by more than
// rounding noise; moves scored by the barrier solver by more than its
// tolerance.
const EXACT_MARGIN: f64 = 1e-11;

struct SearchState {
    partition: Partition,
    stats: BlockStats,
    omega: OmegaMatrix,
    lambda: f64,
    /// Incumbent on the profile scale (likelihood) or modularity.
    current: f64,
    profile: f64,
    trace: Vec<f64>,
    accepted: usize,
    solves: usize,
    filtered: usize,
}

/// Fits one model from a seeded random start.
pub fn fit(g: &Graph, cfg: &FitConfig) -> Result<FitResult> {
    let n = g.node_count();
    if cfg.k == 0 || cfg.k > n {
        return Err(Error::Config(format!("need 1 <= K <= N, got K={}, N={n}", cfg.k)));
    }
    if g.total_weight() == 0 {
        return Err(Error::NoEdges);
    }
    cfg.solver.validate()?;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let partition = Partition::random(n, cfg.k, &mut rng)?;
    let stats = BlockStats::compute(g, &partition)?;
    let offset = profile_offset(&stats);
    let profile = profile_log_likelihood(&stats);

    let mut state = SearchState {
        omega: omega_mle(&stats),
        lambda: 0.0,
        current: profile,
        profile,
        trace: Vec::new(),
        accepted: 0,
        solves: 0,
        filtered: 0,
        partition,
        stats,
    };
    match cfg.objective {
        Objective::Modularity => {
            state.current = modularity(&state.stats);
            state.trace.push(state.current);
        }
        Objective::Likelihood => {
            state.settle_omega(cfg)?;
            state.trace.push(state.current + offset);
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let mut links = NodeLinks::new(g, &state.partition, 0);
    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < cfg.max_sweeps {
        sweeps += 1;
        if cfg.scan == ScanOrder::Shuffled {
            order.shuffle(&mut rng);
        }
        let mut improved = false;
        for &i in &order {
            links.fill(g, &state.partition, i);
            improved |= match cfg.objective {
                Objective::Likelihood => state.scan_likelihood(&links, i, cfg, offset)?,
                Objective::Modularity => state.scan_modularity(&links, i),
            };
        }
        if !improved {
            converged = true;
            break;
        }
    }

    if cfg.objective == Objective::Modularity || cfg.mode == AssortativityMode::None {
        state.omega = omega_mle(&state.stats);
        state.lambda = state.omega.max_off_diagonal().max(0.0);
    }
    let log_lik = log_likelihood(&state.stats, &state.omega);
    let q = modularity(&state.stats);
    Ok(FitResult {
        score: match cfg.objective {
            Objective::Likelihood => log_lik,
            Objective::Modularity => q,
        },
        partition: state.partition,
        omega: state.omega,
        lambda: state.lambda,
        log_likelihood: log_lik,
        modularity: q,
        trace: state.trace,
        sweeps,
        accepted_moves: state.accepted,
        constrained_solves: state.solves,
        filtered_moves: state.filtered,
        converged,
        seed: cfg.seed,
        mode: cfg.mode,
        objective: cfg.objective,
    })
}

impl SearchState {
    /// Sets `omega`, `lambda` and `current` for the present partition.
    fn settle_omega(&mut self, cfg: &FitConfig) -> Result<()> {
        let offset = profile_offset(&self.stats);
        let mle = omega_mle(&self.stats);
        if is_feasible(&mle, cfg.mode, 0.0) {
            self.lambda = mle.max_off_diagonal().max(0.0);
            self.omega = mle;
            self.current = self.profile;
        } else {
            let sol = solve_constrained(&self.stats, cfg.mode, &cfg.solver)?;
            self.solves += 1;
            self.current = sol.objective - offset;
            self.omega = sol.omega;
            self.lambda = sol.lambda;
        }
        Ok(())
    }

    fn scan_likelihood(&mut self, links: &NodeLinks, i: usize, cfg: &FitConfig, offset: f64) -> Result<bool> {
        let mut moved = false;
        for b in 0..cfg.k {
            let a = self.partition.block_of(i);
            if b == a || self.partition.sizes()[a] == 1 {
                continue;
            }
            let bound = self.profile + profile_delta(&self.stats, links, a, b);
            let margin = EXACT_MARGIN * (1.0 + self.current.abs());
            if !(bound > self.current + margin) {
                self.filtered += 1;
                continue;
            }
            self.stats.relocate(links, a, b);
            let profile = profile_log_likelihood(&self.stats);
            let mle = omega_mle(&self.stats);
            if cfg.mode == AssortativityMode::None || is_feasible(&mle, cfg.mode, 0.0) {
                self.lambda = mle.max_off_diagonal().max(0.0);
                self.omega = mle;
                self.current = profile;
            } else {
                let sol = solve_constrained(&self.stats, cfg.mode, &cfg.solver)?;
                self.solves += 1;
                let value = sol.objective - offset;
                let solver_margin = cfg.solver.tol * (1.0 + self.current.abs());
                if !(value > self.current + solver_margin) {
                    self.stats.relocate(links, b, a);
                    continue;
                }
                self.omega = sol.omega;
                self.lambda = sol.lambda;
                self.current = value;
            }
            self.profile = profile;
            self.partition.move_node(i, b);
            self.accepted += 1;
            self.trace.push(self.current + offset);
            moved = true;
        }
        Ok(moved)
    }

    fn scan_modularity(&mut self, links: &NodeLinks, i: usize) -> bool {
        let mut moved = false;
        for b in 0..self.partition.k() {
            let a = self.partition.block_of(i);
            if b == a {
                continue;
            }
            let delta = modularity_delta(&self.stats, links, a, b);
            if !(delta > EXACT_MARGIN) {
                self.filtered += 1;
                continue;
            }
            self.stats.relocate(links, a, b);
            self.partition.move_node(i, b);
            self.current = modularity(&self.stats);
            self.accepted += 1;
            self.trace.push(self.current);
            moved = true;
        }
        moved
    }
}

/// Independent fits with seeds `cfg.seed + 0 .. runs`, best score first.
pub fn multi_start(g: &Graph, cfg: &FitConfig, runs: usize) -> Result<Vec<FitResult>> {
    multi_start_with(g, cfg, runs, ExecPolicy::default())
}

pub fn multi_start_with(g: &Graph, cfg: &FitConfig, runs: usize, policy: ExecPolicy) -> Result<Vec<FitResult>> {
    if runs == 0 {
        return Err(Error::Config("runs must be at least 1".into()));
    }
    let configs: Vec<FitConfig> = (0..runs as u64)
        .map(|r| FitConfig {
            seed: cfg.seed.wrapping_add(r),
            ..cfg.clone()
        })
        .collect();
    let mut results = policy
        .map(configs, |c| fit(g, &c))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    sort_by_score(&mut results);
    Ok(results)
}

/// Best score first; ties broken by seed so the order is deterministic.
pub fn sort_by_score(results: &mut [FitResult]) {
    results.sort_by(|x, y| y.score.total_cmp(&x.score).then(x.seed.cmp(&y.seed)));
}

/// The best `ceil(q * len)` results (at least one) of a score-sorted slice.
pub fn top_quantile(sorted: &[FitResult], q: f64) -> &[FitResult] {
    let keep = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len().max(1));
    &sorted[..keep.min(sorted.len())]
}
