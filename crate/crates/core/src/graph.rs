//! Immutable weighted undirected multigraph.
//!
//! Edge weights are integer multiplicities. A self-loop of weight `w`
//! contributes `2w` to the degree of its node and `w` to the total weight,
//! so that `sum(degree) == 2 * total_weight` always holds exactly.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
    // CSR adjacency; a self-loop appears once in its node's list.
    offsets: Vec<usize>,
    targets: Vec<(usize, u64)>,
    self_loops: Vec<u64>,
    degree: Vec<u64>,
    total_weight: u64,
}

impl Graph {
    /// Builds a graph on `n` nodes. Duplicate `(u, v)` pairs (in either
    /// orientation) accumulate weight; zero-weight entries are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut merged: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (u, v, w) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if w == 0 {
                continue;
            }
            let key = if u <= v { (u, v) } else { (v, u) };
            *merged.entry(key).or_insert(0) += w;
        }
        let edges: Vec<_> = merged.into_iter().map(|((u, v), w)| (u, v, w)).collect();

        let mut degree = vec![0u64; n];
        let mut self_loops = vec![0u64; n];
        let mut counts = vec![0usize; n];
        let mut total_weight = 0u64;
        for &(u, v, w) in &edges {
            total_weight += w;
            if u == v {
                degree[u] += 2 * w;
                self_loops[u] += w;
                counts[u] += 1;
            } else {
                degree[u] += w;
                degree[v] += w;
                counts[u] += 1;
                counts[v] += 1;
            }
        }

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for c in &counts {
            offsets.push(offsets.last().unwrap() + c);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![(0usize, 0u64); offsets[n]];
        for &(u, v, w) in &edges {
            targets[cursor[u]] = (v, w);
            cursor[u] += 1;
            if u != v {
                targets[cursor[v]] = (u, w);
                cursor[v] += 1;
            }
        }

        Ok(Self {
            n,
            edges,
            offsets,
            targets,
            self_loops,
            degree,
            total_weight,
        })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Canonical edge list, `u <= v`, sorted, no duplicates.
    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    /// Weighted degree `k_i`.
    pub fn degree(&self, i: usize) -> u64 {
        self.degree[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degree
    }

    /// Total edge weight `m` (half the degree sum).
    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    /// Self-loop weight `w` on node `i` (the adjacency entry is `2w`).
    pub fn self_loop(&self, i: usize) -> u64 {
        self.self_loops[i]
    }

    /// Neighbours of `i` with edge weights, excluding the self-loop.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.targets[self.offsets[i]..self.offsets[i + 1]]
            .iter()
            .copied()
            .filter(move |&(j, _)| j != i)
    }
}
