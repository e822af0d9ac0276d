//! Likelihood and objective kernels. Everything here consumes
//! [`BlockStats`], so evaluation is `O(K^2)` regardless of graph size.
//!
//! The convention `0 * log 0 = 0` is used throughout.

use serde::{Deserialize, Serialize};

use crate::stats::BlockStats;

/// Symmetric `K x K` matrix of expected block-pair edge rates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaMatrix {
    k: usize,
    w: Vec<f64>,
}

impl OmegaMatrix {
    pub fn zeros(k: usize) -> Self {
        Self { k, w: vec![0.0; k * k] }
    }

    /// Row-major entries. Panics if the matrix is not square and symmetric.
    pub fn from_rows(k: usize, w: Vec<f64>) -> Self {
        assert_eq!(w.len(), k * k, "omega must have K*K entries");
        for r in 0..k {
            for s in 0..r {
                assert_eq!(w[r * k + s], w[s * k + r], "omega must be symmetric");
            }
        }
        Self { k, w }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, r: usize, s: usize) -> f64 {
        self.w[r * self.k + s]
    }

    /// Sets both `(r, s)` and `(s, r)`.
    pub fn set(&mut self, r: usize, s: usize, v: f64) {
        self.w[r * self.k + s] = v;
        self.w[s * self.k + r] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.w
    }

    pub fn min_diagonal(&self) -> f64 {
        (0..self.k).map(|q| self.get(q, q)).fold(f64::INFINITY, f64::min)
    }

    /// Largest off-diagonal entry, or `-inf` when `K = 1`.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for r in 0..self.k {
            for s in (r + 1)..self.k {
                best = best.max(self.get(r, s));
            }
        }
        best
    }

    pub fn max_entry(&self) -> f64 {
        self.w.iter().copied().fold(0.0, f64::max)
    }
}

pub(crate) fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// Poisson DC-SBM log-likelihood `1/2 sum_rs (m_rs log w_rs - T_rs w_rs)`.
///
/// Returns `-inf` when some `w_rs = 0` carries `m_rs > 0` edges.
pub fn log_likelihood(stats: &BlockStats, omega: &OmegaMatrix) -> f64 {
    assert_eq!(stats.k(), omega.k(), "dimension mismatch");
    let k = stats.k();
    let mut total = 0.0;
    for r in 0..k {
        for s in 0..k {
            let m = stats.m(r, s) as f64;
            let w = omega.get(r, s);
            if m > 0.0 {
                if w <= 0.0 {
                    return f64::NEG_INFINITY;
                }
                total += m * w.ln();
            }
            total -= stats.t(r, s) * w;
        }
    }
    0.5 * total
}

/// Closed-form unconstrained maximiser `w_rs = m_rs / T_rs`, with `0` where
/// `T_rs = 0`.
pub fn omega_mle(stats: &BlockStats) -> OmegaMatrix {
    let k = stats.k();
    let mut omega = OmegaMatrix::zeros(k);
    for r in 0..k {
        for s in r..k {
            let t = stats.t(r, s);
            if t > 0.0 {
                omega.set(r, s, stats.m(r, s) as f64 / t);
            }
        }
    }
    omega
}

/// Profile log-likelihood `1/2 sum_rs m_rs log(m_rs / (kappa_r kappa_s))`.
///
/// Written as `1/2 sum_rs m_rs log m_rs - sum_r kappa_r log kappa_r`, which
/// is the same sum because `sum_s m_rs = kappa_r`.
pub fn profile_log_likelihood(stats: &BlockStats) -> f64 {
    let half_mlogm: f64 = stats.m_block().iter().map(|&m| xlogx(m as f64)).sum::<f64>() * 0.5;
    let klogk: f64 = stats.kappas().iter().map(|&c| xlogx(c as f64)).sum();
    half_mlogm - klogk
}

/// `log_likelihood(s, omega_mle(s)) - profile_log_likelihood(s)`, which
/// depends only on the graph: `m log 2m - m`.
pub fn profile_offset(stats: &BlockStats) -> f64 {
    let two_m = stats.two_m() as f64;
    if two_m == 0.0 {
        return 0.0;
    }
    0.5 * two_m * two_m.ln() - 0.5 * two_m
}

/// Newman modularity `sum_r (m_rr / 2m - (kappa_r / 2m)^2)`.
pub fn modularity(stats: &BlockStats) -> f64 {
    let two_m = stats.two_m() as f64;
    if two_m == 0.0 {
        return 0.0;
    }
    (0..stats.k())
        .map(|r| {
            let frac = stats.kappa(r) as f64 / two_m;
            stats.m(r, r) as f64 / two_m - frac * frac
        })
        .sum()
}
