//! Acceptance suite. Each criterion prints one PASS/FAIL/SKIP line; the
//! process exits nonzero if any criterion fails.
//!
//! The cortex criterion reads an edge list from `ACSBM_CATS_CORTEX` and is
//! skipped when the variable is unset. Set `ACSBM_CATS_ONE_BASED=1` if the
//! file numbers nodes from 1.

mod common;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use acsbm::benchmark::{load_graph, mean, median, ppm_sweep_fits, sbm_ensemble_fits, ExperimentKind, ExperimentPlan, Fitted, Model};
use acsbm::likelihood::{log_likelihood, omega_mle, profile_log_likelihood};
use acsbm::search::delta_relocation;
use acsbm::solver::{is_feasible, lambda_profile_oracle};
use acsbm::{multi_start, solve_constrained, AssortativityMode, BlockStats, FitConfig, Graph, SolverConfig};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FEAS_TOL: f64 = 1e-6;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn random_block_counts(rng: &mut ChaCha8Rng, k: usize) -> BlockStats {
    loop {
        let mut m = vec![0u64; k * k];
        for r in 0..k {
            for s in r..k {
                let v = rng.random_range(0..=20u64);
                // Diagonal counts are twice the internal edge weight.
                let v = if r == s { 2 * (v / 2) } else { v };
                m[r * k + s] = v;
                m[s * k + r] = v;
            }
        }
        let stats = BlockStats::from_block_counts(k, m).unwrap();
        if stats.has_edges() {
            return stats;
        }
    }
}

fn solver_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);
    let cfg = SolverConfig::default();
    let (mut worst, mut bad) = (0.0f64, 0);
    for _ in 0..200 {
        let k = rng.random_range(2..=4);
        let stats = random_block_counts(&mut rng, k);
        let sol = solve_constrained(&stats, AssortativityMode::Strong, &cfg).unwrap();
        let oracle = lambda_profile_oracle(&stats);
        let gap = (sol.objective - oracle.objective).abs() / (1.0 + oracle.objective.abs());
        worst = worst.max(gap);
        let feasible = is_feasible(&sol.omega, AssortativityMode::Strong, FEAS_TOL)
            && is_feasible(&oracle.omega, AssortativityMode::Strong, FEAS_TOL);
        if gap > 1e-6 || !feasible {
            bad += 1;
        }
    }
    check(bad == 0, format!("200 instances, worst relative gap {worst:.2e}, {bad} violations"))
}

fn likelihood_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let n = rng.random_range(4..=14);
        let k = rng.random_range(2..=4);
        let g = random_graph(&mut rng, n, true);
        let (p, q) = (random_partition(&mut rng, n, k), random_partition(&mut rng, n, k));
        let (sp, sq) = (BlockStats::compute(&g, &p).unwrap(), BlockStats::compute(&g, &q).unwrap());
        let d_profile = profile_log_likelihood(&sp) - profile_log_likelihood(&sq);
        let d_full = loglik_by_node_pairs(&g, p.assignment(), &omega_mle(&sp))
            - loglik_by_node_pairs(&g, q.assignment(), &omega_mle(&sq));
        worst = worst.max((d_profile - d_full).abs() / (1.0 + d_full.abs()));
    }
    let mut stationary_failures = 0;
    for _ in 0..100 {
        let n = rng.random_range(4..=14);
        let k = rng.random_range(2..=4);
        let g = random_graph(&mut rng, n, true);
        let s = BlockStats::compute(&g, &random_partition(&mut rng, n, k)).unwrap();
        let mle = omega_mle(&s);
        let best = log_likelihood(&s, &mle);
        for r in 0..k {
            for c in r..k {
                if s.m(r, c) == 0 {
                    continue;
                }
                for eps in [-1e-4, 1e-4] {
                    let mut w = mle.clone();
                    w.set(r, c, mle.get(r, c) * (1.0 + eps));
                    if log_likelihood(&s, &w) >= best {
                        stationary_failures += 1;
                    }
                }
            }
        }
    }
    check(
        worst <= 1e-9 && stationary_failures == 0,
        format!("200 pairs, worst relative gap {worst:.2e}; {stationary_failures} stationarity failures"),
    )
}

fn incremental_moves() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    let (mut tested, mut worst) = (0, 0.0f64);
    while tested < 1000 {
        let n = rng.random_range(3..=16);
        let k = rng.random_range(2..=5);
        let g = random_graph(&mut rng, n, true);
        let p = random_partition(&mut rng, n, k);
        let s = BlockStats::compute(&g, &p).unwrap();
        let i = rng.random_range(0..n);
        let b = rng.random_range(0..k);
        let Ok(delta) = delta_relocation(&s, &g, &p, i, b) else {
            continue;
        };
        let mut q = p.clone();
        q.move_node(i, b);
        let full = brute_profile(&g, q.assignment(), k) - brute_profile(&g, p.assignment(), k);
        worst = worst.max((delta - full).abs());
        tested += 1;
    }
    check(worst <= 1e-9, format!("1000 moves, worst absolute gap {worst:.2e}"))
}

fn small_instance_optimality() -> Outcome {
    let mut graphs = vec![Graph::from_edges(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)]).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    while graphs.len() < 11 {
        let n = rng.random_range(4..=8);
        graphs.push(random_graph(&mut rng, n, false));
    }
    let mut misses = 0;
    for (idx, g) in graphs.iter().enumerate() {
        let cfg = FitConfig::new(2, AssortativityMode::None, 7 + idx as u64 * 100);
        let best = &multi_start(g, &cfg, 20).unwrap()[0];
        let found = brute_profile(g, best.partition.assignment(), 2);
        let optimum = enumerate_best_profile(g, 2);
        if found < optimum - 1e-9 * (1.0 + optimum.abs()) {
            misses += 1;
        }
    }
    check(misses == 0, format!("{} graphs, {misses} missed the enumerated optimum", graphs.len()))
}

fn nmi_of(fits: &[Fitted], instance: f64, model: Model) -> Vec<f64> {
    fits.iter()
        .filter(|f| f.row.model == model && f.row.instance == instance)
        .map(|f| f.row.nmi)
        .collect()
}

fn ppm_reproduction(fits: &[Fitted]) -> Outcome {
    let ac_low = median(&nmi_of(fits, 0.10, Model::AcDcSbm));
    let (ac_mid, dc_mid) = (mean(&nmi_of(fits, 0.25, Model::AcDcSbm)), mean(&nmi_of(fits, 0.25, Model::DcSbm)));
    let (ac_high, dc_high) = (median(&nmi_of(fits, 0.60, Model::AcDcSbm)), median(&nmi_of(fits, 0.60, Model::DcSbm)));
    let ok = ac_low >= 0.9 && ac_mid - dc_mid >= 0.05 && ac_high <= 0.15 && dc_high <= 0.15;
    check(
        ok,
        format!(
            "(a) AC median {ac_low:.3} at 0.10; (b) AC mean {ac_mid:.3} vs DC {dc_mid:.3} at 0.25; (c) medians {ac_high:.3}/{dc_high:.3} at 0.60"
        ),
    )
}

fn sbm_reproduction(fits: &[Fitted], datasets: usize) -> Outcome {
    let mut wins = 0;
    for d in 0..datasets {
        let inst = d as f64;
        if median(&nmi_of(fits, inst, Model::AcDcSbm)) >= median(&nmi_of(fits, inst, Model::DcSbm)) {
            wins += 1;
        }
    }
    let count = |model: Model| {
        let xs: Vec<f64> = fits.iter().filter(|f| f.row.model == model).map(|f| f.row.assortative_count as f64).collect();
        mean(&xs)
    };
    let (ac, dc) = (count(Model::AcDcSbm), count(Model::DcSbm));
    check(
        wins >= 8 && ac - dc >= 0.5,
        format!("AC median >= DC median on {wins}/{datasets}; assortative blocks AC {ac:.2} vs DC {dc:.2}"),
    )
}

fn monotone_termination(fits: &[&Fitted]) -> Outcome {
    let mut bad = 0;
    for f in fits {
        let r = &f.result;
        let increasing = r.trace.windows(2).all(|w| w[1] > w[0]);
        if !increasing || !is_feasible(&r.omega, r.mode, FEAS_TOL) {
            bad += 1;
        }
    }
    check(bad == 0, format!("{} fits, {bad} non-monotone or infeasible", fits.len()))
}

fn cats_cortex() -> Outcome {
    let Some(path) = std::env::var_os("ACSBM_CATS_CORTEX").map(PathBuf::from) else {
        return Outcome::Skip("ACSBM_CATS_CORTEX not set; dataset unavailable".into());
    };
    let one_based = std::env::var("ACSBM_CATS_ONE_BASED").is_ok_and(|v| v == "1");
    let g = match load_graph(&path, one_based) {
        Ok(g) => g,
        Err(e) => return Outcome::Fail(format!("cannot load {}: {e}", path.display())),
    };
    let cfg = FitConfig::new(4, AssortativityMode::Strong, 1);
    let best = &multi_start(&g, &cfg, 100).unwrap()[0];
    check(
        is_feasible(&best.omega, AssortativityMode::Strong, FEAS_TOL),
        format!(
            "{} nodes, best loglik {:.4}, diag min {:.4}, off-diag max {:.4}",
            g.node_count(),
            best.log_likelihood,
            best.omega.min_diagonal(),
            best.omega.max_off_diagonal()
        ),
    )
}

fn main() -> ExitCode {
    let ppm_plan = ExperimentPlan {
        kind: ExperimentKind::PpmSweep,
        models: vec![Model::DcSbm, Model::AcDcSbm],
        runs: 20,
        n: 100,
        k: 4,
        avg_degree: 16.0,
        ratios: vec![0.10, 0.25, 0.60],
        ..ExperimentPlan::default()
    };
    let sbm_plan = ExperimentPlan {
        kind: ExperimentKind::SbmEnsemble,
        datasets: 10,
        ..ppm_plan.clone()
    };

    let mut failed = 0;
    let mut report = |id: u32, name: &str, start: Instant, outcome: Outcome| {
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Outcome::Skip(d) => ("SKIP", d),
        };
        println!("[{tag}] criterion {id} {name}: {detail} ({secs:.1}s)");
    };

    let t = Instant::now();
    report(1, "solver oracle equivalence", t, solver_oracle());
    let t = Instant::now();
    report(2, "likelihood identities", t, likelihood_identities());
    let t = Instant::now();
    report(3, "incremental move exactness", t, incremental_moves());
    let t = Instant::now();
    report(4, "small-instance global optimality", t, small_instance_optimality());

    let t = Instant::now();
    let ppm = ppm_sweep_fits(&ppm_plan).expect("ppm sweep");
    report(5, "planted partition sweep", t, ppm_reproduction(&ppm));
    let t = Instant::now();
    let (sbm, _) = sbm_ensemble_fits(&sbm_plan).expect("sbm ensemble");
    report(6, "random SBM ensemble", t, sbm_reproduction(&sbm, sbm_plan.datasets));
    let t = Instant::now();
    let all: Vec<&Fitted> = ppm.iter().chain(&sbm).collect();
    report(7, "monotonic termination", t, monotone_termination(&all));
    let t = Instant::now();
    report(8, "cats cortex strong feasibility", t, cats_cortex());

    if failed == 0 {
        println!("acceptance: all criteria passed or skipped");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
