//! Partition comparison and assortativity diagnostics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::likelihood::OmegaMatrix;
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    counts: Vec<Vec<usize>>,
    rows: Vec<usize>,
    cols: Vec<usize>,
    total: usize,
}

impl ContingencyTable {
    pub fn new(truth: &Partition, pred: &Partition) -> Result<Self> {
        if truth.len() != pred.len() {
            return Err(Error::SizeMismatch {
                expected: truth.len(),
                got: pred.len(),
            });
        }
        let mut counts = vec![vec![0; pred.k()]; truth.k()];
        for (&a, &b) in truth.assignment().iter().zip(pred.assignment()) {
            counts[a][b] += 1;
        }
        let rows = counts.iter().map(|r| r.iter().sum()).collect();
        let cols = (0..pred.k()).map(|b| counts.iter().map(|r| r[b]).sum()).collect();
        Ok(Self {
            counts,
            rows,
            cols,
            total: truth.len(),
        })
    }

    pub fn count(&self, a: usize, b: usize) -> usize {
        self.counts[a][b]
    }

    pub fn total(&self) -> usize {
        self.total
    }

    fn entropy(marginal: &[usize], total: f64) -> f64 {
        marginal
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / total;
                -p * p.ln()
            })
            .sum()
    }

    pub fn mutual_information(&self) -> f64 {
        let n = self.total as f64;
        let mut mi = 0.0;
        for (a, row) in self.counts.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let c = c as f64;
                mi += c / n * (c * n / (self.rows[a] as f64 * self.cols[b] as f64)).ln();
            }
        }
        mi.max(0.0)
    }
}

/// Normalised mutual information `2 I / (H_p + H_q)`, natural logarithms.
/// Two single-cluster partitions score 1.
pub fn nmi(p: &Partition, q: &Partition) -> Result<f64> {
    let table = ContingencyTable::new(p, q)?;
    let n = table.total as f64;
    if table.total == 0 {
        return Ok(1.0);
    }
    let h = ContingencyTable::entropy(&table.rows, n) + ContingencyTable::entropy(&table.cols, n);
    if h <= 0.0 {
        return Ok(1.0);
    }
    Ok((2.0 * table.mutual_information() / h).clamp(0.0, 1.0))
}

/// Blocks whose diagonal rate dominates the rest of their row.
pub fn count_assortative_communities(omega: &OmegaMatrix, tol: f64) -> usize {
    let k = omega.k();
    (0..k)
        .filter(|&q| (0..k).all(|s| s == q || omega.get(q, q) >= omega.get(q, s) - tol))
        .count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssortativityLevel {
    None,
    Weak,
    Strong,
}

impl std::fmt::Display for AssortativityLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::None => "none",
            Self::Weak => "weak",
            Self::Strong => "strong",
        })
    }
}

/// Strongest assortativity condition `omega` satisfies.
pub fn assortativity_level(omega: &OmegaMatrix, tol: f64) -> AssortativityLevel {
    use crate::solver::{is_feasible, AssortativityMode};
    if is_feasible(omega, AssortativityMode::Strong, tol) {
        AssortativityLevel::Strong
    } else if is_feasible(omega, AssortativityMode::Weak, tol) {
        AssortativityLevel::Weak
    } else {
        AssortativityLevel::None
    }
}
