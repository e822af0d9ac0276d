//! Block sufficient statistics.
//!
//! For a partition `z` of a graph with adjacency `A`:
//!
//! * `m_rs = sum_ij A_ij z_ir z_js` (so `m_rr` counts internal edges twice),
//! * `kappa_r = sum_i k_i z_ir`,
//! * `T_rs = kappa_r kappa_s / 2m`.
//!
//! The counts are kept as integers so that incremental updates are exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStats {
    k: usize,
    m_block: Vec<u64>,
    kappa: Vec<u64>,
    two_m: u64,
}

/// Edge weight from one node into each block, computed once per node and
/// shared across all candidate destinations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeLinks {
    /// `d[r] = sum_{j != i} A_ij z_jr`.
    pub to_block: Vec<u64>,
    /// Adjacency diagonal `A_ii = 2 * self-loop weight`.
    pub self_term: u64,
    pub degree: u64,
}

impl NodeLinks {
    pub fn new(g: &Graph, p: &Partition, i: usize) -> Self {
        let mut links = Self {
            to_block: vec![0; p.k()],
            self_term: 0,
            degree: 0,
        };
        links.fill(g, p, i);
        links
    }

    /// Recomputes in place, reusing the buffer.
    pub fn fill(&mut self, g: &Graph, p: &Partition, i: usize) {
        self.to_block.iter_mut().for_each(|d| *d = 0);
        for (j, w) in g.neighbors(i) {
            self.to_block[p.block_of(j)] += w;
        }
        self.self_term = 2 * g.self_loop(i);
        self.degree = g.degree(i);
    }
}

impl BlockStats {
    pub fn compute(g: &Graph, p: &Partition) -> Result<Self> {
        if p.len() != g.node_count() {
            return Err(Error::SizeMismatch {
                expected: g.node_count(),
                got: p.len(),
            });
        }
        let k = p.k();
        let mut m_block = vec![0u64; k * k];
        for &(u, v, w) in g.edges() {
            let (a, b) = (p.block_of(u), p.block_of(v));
            if u == v {
                m_block[a * k + a] += 2 * w;
            } else {
                m_block[a * k + b] += w;
                m_block[b * k + a] += w;
            }
        }
        let mut kappa = vec![0u64; k];
        for (i, &deg) in g.degrees().iter().enumerate() {
            kappa[p.block_of(i)] += deg;
        }
        Ok(Self {
            k,
            m_block,
            kappa,
            two_m: 2 * g.total_weight(),
        })
    }

    /// Builds statistics straight from a symmetric `K x K` block count
    /// matrix (row-major). `kappa` and `2m` follow from the row sums.
    pub fn from_block_counts(k: usize, m_block: Vec<u64>) -> Result<Self> {
        if k == 0 || m_block.len() != k * k {
            return Err(Error::Config(format!(
                "expected {} block counts for K = {k}, got {}",
                k * k,
                m_block.len()
            )));
        }
        for r in 0..k {
            for s in 0..r {
                if m_block[r * k + s] != m_block[s * k + r] {
                    return Err(Error::Config(format!("block counts not symmetric at ({r}, {s})")));
                }
            }
        }
        let kappa: Vec<u64> = m_block.chunks(k).map(|row| row.iter().sum()).collect();
        let two_m = kappa.iter().sum();
        Ok(Self {
            k,
            m_block,
            kappa,
            two_m,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self, r: usize, s: usize) -> u64 {
        self.m_block[r * self.k + s]
    }

    pub fn m_block(&self) -> &[u64] {
        &self.m_block
    }

    pub fn kappa(&self, r: usize) -> u64 {
        self.kappa[r]
    }

    pub fn kappas(&self) -> &[u64] {
        &self.kappa
    }

    /// `2m`, twice the total edge weight.
    pub fn two_m(&self) -> u64 {
        self.two_m
    }

    /// Null-model expectation `T_rs = kappa_r kappa_s / 2m`.
    pub fn t(&self, r: usize, s: usize) -> f64 {
        if self.two_m == 0 {
            return 0.0;
        }
        self.kappa[r] as f64 * self.kappa[s] as f64 / self.two_m as f64
    }

    pub fn has_edges(&self) -> bool {
        self.two_m > 0
    }

    /// Moves a node with the given links from block `from` to block `to`.
    /// Runs in `O(K)`; the caller owns the partition bookkeeping.
    pub fn relocate(&mut self, links: &NodeLinks, from: usize, to: usize) {
        let k = self.k;
        for (r, &d) in links.to_block.iter().enumerate() {
            if d == 0 {
                continue;
            }
            self.m_block[from * k + r] -= d;
            self.m_block[r * k + from] -= d;
            self.m_block[to * k + r] += d;
            self.m_block[r * k + to] += d;
        }
        self.m_block[from * k + from] -= links.self_term;
        self.m_block[to * k + to] += links.self_term;
        self.kappa[from] -= links.degree;
        self.kappa[to] += links.degree;
    }

    /// Statistics after moving node `i` to block `b`, leaving `self`
    /// untouched. Fails if the move is a no-op or would empty the source.
    pub fn apply_relocation(&self, g: &Graph, p: &Partition, i: usize, b: usize) -> Result<Self> {
        let a = check_move(p, i, b)?;
        let mut next = self.clone();
        next.relocate(&NodeLinks::new(g, p, i), a, b);
        Ok(next)
    }
}

/// Validates a relocation and returns the source block.
pub(crate) fn check_move(p: &Partition, i: usize, b: usize) -> Result<usize> {
    if i >= p.len() {
        return Err(Error::NodeOutOfRange { node: i, n: p.len() });
    }
    if b >= p.k() {
        return Err(Error::BlockOutOfRange { block: b, k: p.k() });
    }
    let a = p.block_of(i);
    if a == b {
        return Err(Error::NoOpMove { node: i, block: b });
    }
    if p.sizes()[a] == 1 {
        return Err(Error::EmptiesBlock { node: i, block: a });
    }
    Ok(a)
}
