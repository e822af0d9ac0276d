//! Synthetic Poisson block-model networks with planted labels.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::likelihood::OmegaMatrix;
use crate::partition::Partition;

/// Planted partition model: rate `p_in` inside blocks, `ratio * p_in`
/// across, calibrated so the expected degree is `avg_degree`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PpmSpec {
    pub n: usize,
    pub k: usize,
    pub avg_degree: f64,
    pub ratio: f64,
    pub seed: u64,
}

impl PpmSpec {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > self.n {
            return Err(Error::Config(format!("need 1 <= K <= N, got K={}, N={}", self.k, self.n)));
        }
        if !(self.avg_degree >= 0.0) || self.avg_degree >= self.n as f64 {
            return Err(Error::Config("average degree must lie in [0, N)".into()));
        }
        if !(0.0..=1.0).contains(&self.ratio) {
            return Err(Error::Config("ratio must lie in [0, 1]".into()));
        }
        Ok(())
    }

    /// `(p_in, p_out)` with `p_in = c / ((N/K - 1) + ratio * N (K-1) / K)`.
    pub fn rates(&self) -> (f64, f64) {
        let n = self.n as f64;
        let k = self.k as f64;
        let denom = (n / k - 1.0) + self.ratio * n * (k - 1.0) / k;
        let p_in = if denom > 0.0 { self.avg_degree / denom } else { 0.0 };
        (p_in, self.ratio * p_in)
    }
}

/// General block model with rates drawn uniformly from the given ranges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SbmSpec {
    pub n: usize,
    pub k: usize,
    #[serde(default = "default_diag")]
    pub diag_range: (f64, f64),
    #[serde(default = "default_offdiag")]
    pub offdiag_range: (f64, f64),
    pub seed: u64,
}

fn default_diag() -> (f64, f64) {
    (0.45, 0.55)
}

fn default_offdiag() -> (f64, f64) {
    (0.0, 0.4)
}

impl SbmSpec {
    pub fn new(n: usize, k: usize, seed: u64) -> Self {
        Self {
            n,
            k,
            diag_range: default_diag(),
            offdiag_range: default_offdiag(),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Config("K must be at least 1".into()));
        }
        for (lo, hi) in [self.diag_range, self.offdiag_range] {
            if !(lo >= 0.0 && hi >= lo && hi.is_finite()) {
                return Err(Error::Config(format!("invalid rate range [{lo}, {hi}]")));
            }
        }
        Ok(())
    }
}

pub struct Planted {
    pub graph: Graph,
    pub truth: Partition,
    pub omega: OmegaMatrix,
}

fn uniform<R: Rng>(rng: &mut R, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        rng.random_range(lo..=hi)
    } else {
        lo
    }
}

/// Draws a Poisson edge count for every unordered pair `i < j`.
fn poisson_pairs<R: Rng>(rng: &mut R, truth: &Partition, omega: &OmegaMatrix) -> Result<Graph> {
    let n = truth.len();
    let k = truth.k();
    let mut samplers = Vec::with_capacity(k * k);
    for r in 0..k {
        for s in 0..k {
            let rate = omega.get(r, s);
            samplers.push(if rate > 0.0 { Poisson::new(rate).ok() } else { None });
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        let bi = truth.block_of(i);
        for j in (i + 1)..n {
            if let Some(dist) = &samplers[bi * k + truth.block_of(j)] {
                let count = dist.sample(rng) as u64;
                if count > 0 {
                    edges.push((i, j, count));
                }
            }
        }
    }
    Graph::from_edges(n, edges)
}

pub fn generate_ppm(spec: &PpmSpec) -> Result<Planted> {
    spec.validate()?;
    let (base, extra) = (spec.n / spec.k, spec.n % spec.k);
    let mut assign = Vec::with_capacity(spec.n);
    for b in 0..spec.k {
        let size = base + usize::from(b < extra);
        assign.extend(std::iter::repeat_n(b, size));
    }
    let truth = Partition::new(spec.k, assign)?;
    let (p_in, p_out) = spec.rates();
    let mut omega = OmegaMatrix::zeros(spec.k);
    for r in 0..spec.k {
        for s in r..spec.k {
            omega.set(r, s, if r == s { p_in } else { p_out });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let graph = poisson_pairs(&mut rng, &truth, &omega)?;
    Ok(Planted { graph, truth, omega })
}

pub fn generate_sbm(spec: &SbmSpec) -> Result<Planted> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut omega = OmegaMatrix::zeros(spec.k);
    for r in 0..spec.k {
        for s in r..spec.k {
            let range = if r == s { spec.diag_range } else { spec.offdiag_range };
            omega.set(r, s, uniform(&mut rng, range));
        }
    }
    let assign = (0..spec.n).map(|_| rng.random_range(0..spec.k)).collect();
    let truth = Partition::new(spec.k, assign)?;
    let graph = poisson_pairs(&mut rng, &truth, &omega)?;
    Ok(Planted { graph, truth, omega })
}
