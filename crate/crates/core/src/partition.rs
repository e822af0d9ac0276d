//! Node-to-block assignment for a fixed number of blocks.

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPartition", into = "RawPartition")]
pub struct Partition {
    k: usize,
    assign: Vec<usize>,
    sizes: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawPartition {
    k: usize,
    assign: Vec<usize>,
}

impl TryFrom<RawPartition> for Partition {
    type Error = Error;
    fn try_from(raw: RawPartition) -> Result<Self> {
        Partition::new(raw.k, raw.assign)
    }
}

impl From<Partition> for RawPartition {
    fn from(p: Partition) -> Self {
        RawPartition {
            k: p.k,
            assign: p.assign,
        }
    }
}

impl Partition {
    /// Wraps an assignment. Blocks may be empty here; the search keeps them
    /// populated on its own.
    pub fn new(k: usize, assign: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Config("K must be at least 1".into()));
        }
        let mut sizes = vec![0; k];
        for &b in &assign {
            if b >= k {
                return Err(Error::BlockOutOfRange { block: b, k });
            }
            sizes[b] += 1;
        }
        Ok(Self { k, assign, sizes })
    }

    /// Infers K as `max label + 1`.
    pub fn from_labels(assign: Vec<usize>) -> Result<Self> {
        let k = assign.iter().max().map_or(1, |&m| m + 1);
        Self::new(k, assign)
    }

    /// Uniform random assignment, then every empty block receives a node
    /// taken from a block with at least two members.
    pub fn random<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Config(format!("need 1 <= K <= N, got K={k}, N={n}")));
        }
        let assign = (0..n).map(|_| rng.random_range(0..k)).collect();
        let mut p = Self::new(k, assign)?;
        for empty in 0..k {
            if p.sizes[empty] > 0 {
                continue;
            }
            let donors: Vec<usize> = (0..n).filter(|&i| p.sizes[p.assign[i]] > 1).collect();
            let &i = donors.choose(rng).expect("K <= N guarantees a donor");
            p.move_node(i, empty);
        }
        Ok(p)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.assign.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assign.is_empty()
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.assign[i]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assign
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn non_empty_blocks(&self) -> usize {
        self.sizes.iter().filter(|&&s| s > 0).count()
    }

    /// Reassigns node `i` without any validity checks beyond bounds.
    pub fn move_node(&mut self, i: usize, b: usize) {
        let a = self.assign[i];
        self.sizes[a] -= 1;
        self.sizes[b] += 1;
        self.assign[i] = b;
    }
}
