//! Fixed-partition maximisation of the block log-likelihood under
//! assortativity constraints.
//!
//! For a fixed partition the objective `1/2 sum_rs (m_rs log w_rs - T_rs w_rs)`
//! is concave and separable in the entries of the block matrix, and both
//! constraint families are linear:
//!
//! * strong: `w_qq >= lambda >= w_rs >= 0` for every `q` and `r != s`,
//! * weak: `w_qq >= w_qs >= 0` for every `q != s`.
//!
//! [`solve_constrained`] runs a primal log-barrier method with damped Newton
//! centering steps. Entries whose optimum is known in closed form are
//! eliminated before the barrier sees them: an off-diagonal entry with no
//! edges sits at zero, and (strong mode) a diagonal entry with no edges is
//! tied to `lambda`.
//!
//! [`lambda_profile_oracle`] solves the strong problem a second way: for a
//! fixed `lambda` every entry has a clamped closed form, and the resulting
//! profile in `lambda` is concave, so a golden-section search finds the
//! optimum. The two routes share nothing but the likelihood kernel.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::likelihood::{log_likelihood, omega_mle, OmegaMatrix};
use crate::stats::BlockStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssortativityMode {
    None,
    Weak,
    Strong,
}

impl std::str::FromStr for AssortativityMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Self::None),
            "weak" => Ok(Self::Weak),
            "strong" => Ok(Self::Strong),
            other => Err(Error::Config(format!("unknown assortativity mode `{other}`"))),
        }
    }
}

impl std::fmt::Display for AssortativityMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::None => "none",
            Self::Weak => "weak",
            Self::Strong => "strong",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    /// Target on the barrier duality-gap bound, relative to `1 + |objective|`.
    pub tol: f64,
    /// Newton step budget for each centering phase.
    pub max_newton_iters: usize,
    /// Initial barrier weight on the objective.
    pub initial_weight: f64,
    /// Factor applied to the weight between centering phases.
    pub weight_growth: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_newton_iters: 200,
            initial_weight: 1.0,
            weight_growth: 10.0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Config("solver tolerance must be positive".into()));
        }
        if !(self.initial_weight > 0.0) || !(self.weight_growth > 1.0) {
            return Err(Error::Config(
                "barrier weight must be positive and grow by a factor > 1".into(),
            ));
        }
        if self.max_newton_iters == 0 {
            return Err(Error::Config("max_newton_iters must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaSolution {
    pub omega: OmegaMatrix,
    /// Diagonal/off-diagonal threshold. Only binding in strong mode; other
    /// modes report the largest off-diagonal entry (0 for `K = 1`).
    pub lambda: f64,
    pub objective: f64,
    pub kkt_residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Checks the assortativity conditions on `omega` with slack `tol`.
pub fn is_feasible(omega: &OmegaMatrix, mode: AssortativityMode, tol: f64) -> bool {
    let k = omega.k();
    if omega.as_slice().iter().any(|&w| w < -tol) {
        return false;
    }
    match mode {
        AssortativityMode::None => true,
        AssortativityMode::Strong => k < 2 || omega.min_diagonal() >= omega.max_off_diagonal() - tol,
        AssortativityMode::Weak => (0..k).all(|q| {
            (0..k).all(|s| s == q || omega.get(q, q) >= omega.get(q, s) - tol)
        }),
    }
}

fn off_diagonal_threshold(omega: &OmegaMatrix) -> f64 {
    omega.max_off_diagonal().max(0.0)
}

/// Maximises the block log-likelihood over `omega` subject to `mode`.
///
/// Non-convergence within the Newton budget is reported through
/// `converged = false`; the returned iterate is still strictly feasible.
pub fn solve_constrained(
    stats: &BlockStats,
    mode: AssortativityMode,
    cfg: &SolverConfig,
) -> Result<OmegaSolution> {
    cfg.validate()?;
    if stats.m_block().iter().all(|&m| m == 0) {
        return Err(Error::NoEdges);
    }
    let k = stats.k();
    if mode == AssortativityMode::None || k == 1 {
        let omega = omega_mle(stats);
        let lambda = if k == 1 { omega.get(0, 0) } else { off_diagonal_threshold(&omega) };
        return Ok(OmegaSolution {
            objective: log_likelihood(stats, &omega),
            omega,
            lambda,
            kkt_residual: 0.0,
            iterations: 0,
            converged: true,
        });
    }

    let layout = Layout::build(stats, mode);
    let outcome = layout.problem.solve(&layout.initial_point(stats), cfg);
    let (omega, lambda) = layout.assemble(&outcome.x);
    let lambda = match mode {
        AssortativityMode::Strong => lambda,
        _ => off_diagonal_threshold(&omega),
    };
    Ok(OmegaSolution {
        objective: log_likelihood(stats, &omega),
        omega,
        lambda,
        kkt_residual: outcome.kkt_residual,
        iterations: outcome.iterations,
        converged: outcome.converged,
    })
}

/// Where each block-matrix entry comes from in the barrier problem.
#[derive(Debug, Clone, Copy)]
enum Slot {
    Var(usize),
    Fixed(f64),
    Lambda,
}

struct Layout {
    k: usize,
    // Upper triangle, row-major, including the diagonal.
    slots: Vec<Slot>,
    lambda: Option<usize>,
    problem: BarrierProblem,
}

impl Layout {
    fn build(stats: &BlockStats, mode: AssortativityMode) -> Self {
        let k = stats.k();
        let mut problem = BarrierProblem::default();
        let mut slots = Vec::with_capacity(k * (k + 1) / 2);
        let tri = |r: usize, s: usize| r * k - r * (r + 1) / 2 + s;

        // Off-diagonals first so diagonal decisions can see which rows are live.
        let mut off_var = vec![None; k * k];
        for r in 0..k {
            for s in (r + 1)..k {
                let m = stats.m(r, s) as f64;
                if m > 0.0 {
                    let v = problem.add_var(m, stats.t(r, s));
                    off_var[r * k + s] = Some(v);
                    off_var[s * k + r] = Some(v);
                }
            }
        }
        let lambda = (mode == AssortativityMode::Strong).then(|| problem.add_var(0.0, 0.0));

        for r in 0..k {
            for s in r..k {
                if r != s {
                    slots.push(off_var[r * k + s].map_or(Slot::Fixed(0.0), Slot::Var));
                    continue;
                }
                let m = stats.m(r, r) as f64;
                let t = stats.t(r, r);
                let row_live = (0..k).any(|c| off_var[r * k + c].is_some());
                let slot = match (mode, lambda) {
                    (AssortativityMode::Strong, Some(l)) if m == 0.0 => {
                        problem.vars[l].b += 0.5 * t;
                        Slot::Lambda
                    }
                    (AssortativityMode::Weak, _) if m == 0.0 && !row_live => Slot::Fixed(0.0),
                    _ => Slot::Var(problem.add_var(0.5 * m, 0.5 * t)),
                };
                slots.push(slot);
            }
        }
        debug_assert_eq!(slots.len(), tri(k - 1, k - 1) + 1);

        for v in 0..problem.vars.len() {
            problem.constraints.push(Constraint::lower(v));
        }
        match (mode, lambda) {
            (AssortativityMode::Strong, Some(l)) => {
                for q in 0..k {
                    if let Slot::Var(d) = slots[tri(q, q)] {
                        problem.constraints.push(Constraint::diff(d, l));
                    }
                }
                for r in 0..k {
                    for s in (r + 1)..k {
                        if let Slot::Var(o) = slots[tri(r, s)] {
                            problem.constraints.push(Constraint::diff(l, o));
                        }
                    }
                }
            }
            _ => {
                for q in 0..k {
                    let Slot::Var(d) = slots[tri(q, q)] else { continue };
                    for s in (0..k).filter(|&s| s != q) {
                        if let Some(o) = off_var[q * k + s] {
                            problem.constraints.push(Constraint::diff(d, o));
                        }
                    }
                }
            }
        }

        Self {
            k,
            slots,
            lambda,
            problem,
        }
    }

    /// Strictly interior start: diagonal `1.5a`, off-diagonal `0.5a`,
    /// threshold `a`, with `a = mean(mle) + 1`.
    fn initial_point(&self, stats: &BlockStats) -> Vec<f64> {
        let mle = omega_mle(stats);
        let a = mle.as_slice().iter().sum::<f64>() / (self.k * self.k) as f64 + 1.0;
        let delta = a / 2.0;
        let mut x = vec![0.0; self.problem.vars.len()];
        let mut idx = 0;
        for r in 0..self.k {
            for s in r..self.k {
                if let Slot::Var(v) = self.slots[idx] {
                    x[v] = if r == s { a + delta } else { a - delta };
                }
                idx += 1;
            }
        }
        if let Some(l) = self.lambda {
            x[l] = a;
        }
        x
    }

    fn assemble(&self, x: &[f64]) -> (OmegaMatrix, f64) {
        let lambda = self.lambda.map_or(0.0, |l| x[l]);
        let mut omega = OmegaMatrix::zeros(self.k);
        let mut idx = 0;
        for r in 0..self.k {
            for s in r..self.k {
                let v = match self.slots[idx] {
                    Slot::Var(v) => x[v],
                    Slot::Fixed(v) => v,
                    Slot::Lambda => lambda,
                };
                omega.set(r, s, v);
                idx += 1;
            }
        }
        (omega, lambda)
    }
}

/// Separable concave term `a ln x - b x`.
#[derive(Debug, Clone, Copy)]
struct VarTerm {
    a: f64,
    b: f64,
}

/// Linear constraint `sum coef * x >= 0` over at most two variables.
#[derive(Debug, Clone, Copy)]
struct Constraint {
    terms: [(usize, f64); 2],
    len: usize,
}

impl Constraint {
    fn lower(v: usize) -> Self {
        Self {
            terms: [(v, 1.0), (0, 0.0)],
            len: 1,
        }
    }

    /// `x[hi] - x[lo] >= 0`.
    fn diff(hi: usize, lo: usize) -> Self {
        Self {
            terms: [(hi, 1.0), (lo, -1.0)],
            len: 2,
        }
    }

    fn terms(&self) -> &[(usize, f64)] {
        &self.terms[..self.len]
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.terms().iter().map(|&(v, c)| c * x[v]).sum()
    }
}

#[derive(Debug, Default)]
struct BarrierProblem {
    vars: Vec<VarTerm>,
    constraints: Vec<Constraint>,
}

struct BarrierOutcome {
    x: Vec<f64>,
    kkt_residual: f64,
    iterations: usize,
    converged: bool,
}

const CENTERING_TOL: f64 = 1e-12;
const MAX_OUTER: usize = 60;

impl BarrierProblem {
    fn add_var(&mut self, a: f64, b: f64) -> usize {
        self.vars.push(VarTerm { a, b });
        self.vars.len() - 1
    }

    fn objective(&self, x: &[f64]) -> f64 {
        self.vars
            .iter()
            .zip(x)
            .map(|(t, &xi)| if t.a > 0.0 { t.a * xi.ln() } else { 0.0 } - t.b * xi)
            .sum()
    }

    /// `-t f(x) - sum ln c_j(x)`, or `+inf` outside the interior.
    fn barrier(&self, x: &[f64], t: f64) -> f64 {
        let mut phi = -t * self.objective(x);
        for c in &self.constraints {
            let v = c.eval(x);
            if v <= 0.0 {
                return f64::INFINITY;
            }
            phi -= v.ln();
        }
        phi
    }

    fn solve(&self, x0: &[f64], cfg: &SolverConfig) -> BarrierOutcome {
        let n = self.vars.len();
        let n_cons = self.constraints.len() as f64;
        let mut x = x0.to_vec();
        let mut t = cfg.initial_weight;
        let mut iterations = 0;
        let mut converged = true;
        let mut reached_gap = false;

        for _ in 0..MAX_OUTER {
            let mut centered = false;
            for _ in 0..cfg.max_newton_iters {
                let (grad, hess) = self.derivatives(&x, t);
                let step = match newton_step(&grad, hess) {
                    Some(s) => s,
                    None => break,
                };
                iterations += 1;
                let decrement = -grad.dot(&step);
                // The barrier value grows with t; its rounding floor does too.
                if decrement / 2.0 <= CENTERING_TOL * (1.0 + self.barrier(&x, t).abs()) {
                    centered = true;
                    break;
                }
                if !self.line_search(&mut x, &step, &grad, t) {
                    // No further progress possible at this precision.
                    centered = true;
                    break;
                }
            }
            if !centered {
                converged = false;
            }
            let gap = n_cons / t;
            if gap <= cfg.tol * (1.0 + self.objective(&x).abs()) {
                reached_gap = true;
                break;
            }
            t *= cfg.weight_growth;
        }

        let kkt_residual = self.stationarity(&x, t).max(n_cons / t);
        debug_assert_eq!(x.len(), n);
        BarrierOutcome {
            x,
            kkt_residual,
            iterations,
            converged: converged && reached_gap,
        }
    }

    fn derivatives(&self, x: &[f64], t: f64) -> (DVector<f64>, DMatrix<f64>) {
        let n = self.vars.len();
        let mut grad = DVector::zeros(n);
        let mut hess = DMatrix::zeros(n, n);
        for (v, term) in self.vars.iter().enumerate() {
            grad[v] = -t * (term.a / x[v] - term.b);
            hess[(v, v)] = t * term.a / (x[v] * x[v]);
        }
        for c in &self.constraints {
            let val = c.eval(x);
            let inv = 1.0 / val;
            let inv2 = inv * inv;
            for &(i, ci) in c.terms() {
                grad[i] -= ci * inv;
                for &(j, cj) in c.terms() {
                    hess[(i, j)] += ci * cj * inv2;
                }
            }
        }
        (grad, hess)
    }

    /// Backtracking along `step`, first pulled inside the feasible region.
    fn line_search(&self, x: &mut [f64], step: &DVector<f64>, grad: &DVector<f64>, t: f64) -> bool {
        let mut s: f64 = 1.0;
        for c in &self.constraints {
            let dc: f64 = c.terms().iter().map(|&(v, coef)| coef * step[v]).sum();
            if dc < 0.0 {
                s = s.min(-0.99 * c.eval(x) / dc);
            }
        }
        let phi0 = self.barrier(x, t);
        let slope = grad.dot(step);
        let mut trial = x.to_vec();
        while s > 1e-14 {
            for (v, xv) in trial.iter_mut().enumerate() {
                *xv = x[v] + s * step[v];
            }
            let phi = self.barrier(&trial, t);
            if phi <= phi0 + 0.25 * s * slope {
                x.copy_from_slice(&trial);
                return true;
            }
            s *= 0.5;
        }
        false
    }

    /// Infinity norm of `grad f + sum u_j grad c_j` with `u_j = 1 / (t c_j)`.
    fn stationarity(&self, x: &[f64], t: f64) -> f64 {
        let mut r: Vec<f64> = self
            .vars
            .iter()
            .zip(x)
            .map(|(term, &xv)| term.a / xv - term.b)
            .collect();
        for c in &self.constraints {
            let u = 1.0 / (t * c.eval(x));
            for &(v, coef) in c.terms() {
                r[v] += u * coef;
            }
        }
        r.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }
}

fn newton_step(grad: &DVector<f64>, hess: DMatrix<f64>) -> Option<DVector<f64>> {
    let rhs = -grad;
    match hess.clone().cholesky() {
        Some(ch) => Some(ch.solve(&rhs)),
        None => hess.lu().solve(&rhs),
    }
}

/// Strong-mode reference solution by golden-section search over `lambda`.
///
/// For fixed `lambda` the optimum is `w_qq = max(mle_qq, lambda)` on the
/// diagonal and `w_rs = clamp(mle_rs, 0, lambda)` off it; the resulting
/// objective is concave in `lambda`.
pub fn lambda_profile_oracle(stats: &BlockStats) -> OmegaSolution {
    const TOL: f64 = 1e-10;
    let mle = omega_mle(stats);
    let k = stats.k();
    let induced = |lambda: f64| {
        let mut omega = OmegaMatrix::zeros(k);
        for r in 0..k {
            for s in r..k {
                let w = mle.get(r, s);
                omega.set(r, s, if r == s { w.max(lambda) } else { w.min(lambda) });
            }
        }
        omega
    };
    let profile = |lambda: f64| log_likelihood(stats, &induced(lambda));

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0, mle.max_entry() + 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (profile(x1), profile(x2));
    let mut iterations = 0;
    while hi - lo > TOL {
        iterations += 1;
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = profile(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = profile(x1);
        }
    }
    let lambda = 0.5 * (lo + hi);
    let omega = induced(lambda);
    OmegaSolution {
        objective: log_likelihood(stats, &omega),
        omega,
        lambda,
        kkt_residual: hi - lo,
        iterations,
        converged: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn skewed() -> BlockStats {
        BlockStats::from_block_counts(2, vec![4, 6, 6, 2]).unwrap()
    }

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn skewed_instance_mle() {
        let mle = omega_mle(&skewed());
        let expect = [0.72, 1.35, 1.35, 0.5625];
        for (a, b) in mle.as_slice().iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn skewed_instance_matches_oracle() {
        let s = skewed();
        let sol = solve_constrained(&s, AssortativityMode::Strong, &SolverConfig::default()).unwrap();
        let oracle = lambda_profile_oracle(&s);
        assert!(sol.converged);
        assert!(rel_close(sol.objective, oracle.objective, 1e-8), "{} vs {}", sol.objective, oracle.objective);
        assert!(sol.lambda > 0.5625 && sol.lambda < 1.35, "lambda {}", sol.lambda);
        assert!(oracle.lambda > 0.5625 && oracle.lambda < 1.35);
        assert!(is_feasible(&sol.omega, AssortativityMode::Strong, 1e-8));
        for (a, b) in sol.omega.as_slice().iter().zip(oracle.omega.as_slice()) {
            assert!((a - b).abs() < 1e-3, "{a} vs {b}");
        }
        let unconstrained = log_likelihood(&s, &omega_mle(&s));
        assert!(sol.objective < unconstrained);
    }

    #[test]
    fn inactive_constraints_return_the_mle() {
        let s = BlockStats::from_block_counts(2, vec![6, 0, 0, 6]).unwrap();
        let sol = solve_constrained(&s, AssortativityMode::Strong, &SolverConfig::default()).unwrap();
        for (a, b) in sol.omega.as_slice().iter().zip([2.0, 0.0, 0.0, 2.0]) {
            assert!((a - b).abs() < 1e-6, "{:?}", sol.omega);
        }
        assert!(sol.lambda >= 0.0 && sol.lambda <= 2.0 + 1e-9);
        let oracle = lambda_profile_oracle(&s);
        assert!(rel_close(oracle.objective, log_likelihood(&s, &omega_mle(&s)), 1e-12));
        assert!(rel_close(sol.objective, oracle.objective, 1e-8));
    }

    #[test]
    fn mode_none_is_the_mle() {
        let s = BlockStats::from_block_counts(2, vec![6, 0, 0, 6]).unwrap();
        let sol = solve_constrained(&s, AssortativityMode::None, &SolverConfig::default()).unwrap();
        assert_eq!(sol.omega.as_slice(), &[2.0, 0.0, 0.0, 2.0]);
    }

    #[test]
    fn weak_equals_strong_for_two_blocks() {
        let s = skewed();
        let cfg = SolverConfig::default();
        let strong = solve_constrained(&s, AssortativityMode::Strong, &cfg).unwrap();
        let weak = solve_constrained(&s, AssortativityMode::Weak, &cfg).unwrap();
        assert!(rel_close(strong.objective, weak.objective, 1e-8));
        assert!(is_feasible(&weak.omega, AssortativityMode::Weak, 1e-8));
    }

    #[test]
    fn zero_diagonal_blocks_are_tied_to_the_threshold() {
        // Block 1 has no internal edges; its rate must not fall below the
        // cross rate to block 0.
        let s = BlockStats::from_block_counts(2, vec![10, 4, 4, 0]).unwrap();
        let cfg = SolverConfig::default();
        let sol = solve_constrained(&s, AssortativityMode::Strong, &cfg).unwrap();
        assert!(is_feasible(&sol.omega, AssortativityMode::Strong, 1e-9));
        assert_eq!(sol.omega.get(1, 1), sol.lambda);
        let oracle = lambda_profile_oracle(&s);
        assert!(rel_close(sol.objective, oracle.objective, 1e-8));
        let weak = solve_constrained(&s, AssortativityMode::Weak, &cfg).unwrap();
        assert!(rel_close(weak.objective, oracle.objective, 1e-8));
    }

    #[test]
    fn no_off_diagonal_edges() {
        let s = BlockStats::from_block_counts(3, vec![4, 0, 0, 0, 2, 0, 0, 0, 8]).unwrap();
        let sol = solve_constrained(&s, AssortativityMode::Strong, &SolverConfig::default()).unwrap();
        let mle = omega_mle(&s);
        for q in 0..3 {
            assert!(rel_close(sol.omega.get(q, q), mle.get(q, q), 1e-5));
        }
        assert!(rel_close(sol.objective, log_likelihood(&s, &mle), 1e-10));
        assert_eq!(sol.omega.max_off_diagonal(), 0.0);
    }

    #[test]
    fn empty_stats_are_rejected() {
        let s = BlockStats::from_block_counts(2, vec![0; 4]).unwrap();
        assert!(matches!(
            solve_constrained(&s, AssortativityMode::Strong, &SolverConfig::default()),
            Err(Error::NoEdges)
        ));
        let bad = SolverConfig { tol: 0.0, ..Default::default() };
        assert!(solve_constrained(&skewed(), AssortativityMode::Strong, &bad).is_err());
    }

    #[test]
    fn feasibility_checks() {
        let diag = OmegaMatrix::from_rows(2, vec![2.0, 0.0, 0.0, 2.0]);
        assert!(is_feasible(&diag, AssortativityMode::Strong, 0.0));
        let hub = OmegaMatrix::from_rows(2, vec![1.5060, 1.9050, 1.9050, 2.5]);
        assert!(!is_feasible(&hub, AssortativityMode::Strong, 1e-9));
        assert!(!is_feasible(&hub, AssortativityMode::Weak, 1e-9));
        assert!(is_feasible(&hub, AssortativityMode::None, 0.0));
        let ok = OmegaMatrix::from_rows(2, vec![2.0196, 1.7152, 1.7152, 2.3]);
        assert!(is_feasible(&ok, AssortativityMode::Strong, 1e-9));
        // Weak but not strong: each row dominated by its own diagonal only.
        let rows = OmegaMatrix::from_rows(3, vec![1.0, 0.9, 0.0, 0.9, 3.0, 2.0, 0.0, 2.0, 2.5]);
        assert!(is_feasible(&rows, AssortativityMode::Weak, 0.0));
        assert!(!is_feasible(&rows, AssortativityMode::Strong, 0.0));
    }
}
