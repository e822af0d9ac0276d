//! Test-only oracles that work from the raw adjacency matrix and never
//! touch `BlockStats`.
#![allow(dead_code)]

use acsbm::{Graph, OmegaMatrix, Partition};
use rand::Rng;

/// Dense adjacency with `A_ii = 2 * self-loop weight`.
pub fn dense_adjacency(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut a = vec![vec![0.0; n]; n];
    for &(u, v, w) in g.edges() {
        if u == v {
            a[u][u] += 2.0 * w as f64;
        } else {
            a[u][v] += w as f64;
            a[v][u] += w as f64;
        }
    }
    a
}

/// The DC-SBM log-likelihood as a double sum over node pairs.
pub fn loglik_by_node_pairs(g: &Graph, z: &[usize], omega: &OmegaMatrix) -> f64 {
    let a = dense_adjacency(g);
    let n = g.node_count();
    let k: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let w = omega.get(z[i], z[j]);
            if a[i][j] > 0.0 {
                total += a[i][j] * w.ln();
            }
            total -= k[i] * k[j] / two_m * w;
        }
    }
    0.5 * total
}

/// Block counts straight from the adjacency: `(m_rs, kappa_r)`.
pub fn brute_block_counts(g: &Graph, z: &[usize], kb: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let a = dense_adjacency(g);
    let mut m = vec![vec![0.0; kb]; kb];
    let mut kappa = vec![0.0; kb];
    for (i, row) in a.iter().enumerate() {
        for (j, &aij) in row.iter().enumerate() {
            m[z[i]][z[j]] += aij;
            kappa[z[i]] += aij;
        }
    }
    (m, kappa)
}

/// Profile log-likelihood from brute-force counts.
pub fn brute_profile(g: &Graph, z: &[usize], kb: usize) -> f64 {
    let (m, kappa) = brute_block_counts(g, z, kb);
    let mut total = 0.0;
    for r in 0..kb {
        for s in 0..kb {
            if m[r][s] > 0.0 {
                total += m[r][s] * (m[r][s] / (kappa[r] * kappa[s])).ln();
            }
        }
    }
    0.5 * total
}

/// Random multigraph with at least one edge; self-loops allowed.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, loops: bool) -> Graph {
    let pairs = rng.random_range(1..=(n * 2).max(2));
    let mut edges = Vec::with_capacity(pairs);
    for _ in 0..pairs {
        let u = rng.random_range(0..n);
        let mut v = rng.random_range(0..n);
        if u == v && !loops {
            v = (u + 1) % n;
            if v == u {
                continue;
            }
        }
        edges.push((u, v, rng.random_range(1..=3)));
    }
    if edges.is_empty() {
        edges.push((0, 0, 1));
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_partition<R: Rng>(rng: &mut R, n: usize, k: usize) -> Partition {
    Partition::new(k, (0..n).map(|_| rng.random_range(0..k)).collect()).unwrap()
}

/// Best profile likelihood over all `K^N` labelings.
pub fn enumerate_best_profile(g: &Graph, kb: usize) -> f64 {
    let n = g.node_count();
    let total = kb.pow(n as u32);
    let mut z = vec![0usize; n];
    let mut best = f64::NEG_INFINITY;
    for code in 0..total {
        let mut c = code;
        for zi in z.iter_mut() {
            *zi = c % kb;
            c /= kb;
        }
        best = best.max(brute_profile(g, &z, kb));
    }
    best
}
