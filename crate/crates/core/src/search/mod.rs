//! Top-k search for subsets maximizing the relaxed corrected score.
//!
//! Attributes are sorted by decreasing entropy and subsets are enumerated
//! alphabetically in that order, so every child only adds attributes with
//! entropy no larger than any current member. Under this enumeration the
//! relaxed correction is monotone along every branch, which makes both
//! bounding functions admissible.

mod bnb;
mod budget;
mod greedy;
mod node;
mod stats;
mod topk;

pub use bnb::{branch_and_bound, branch_and_bound_observed, NoObserver, SearchObserver};
pub use budget::{Budget, Unlimited};
pub use greedy::greedy;
pub use node::{order_attributes, SearchNode, SearchSpace};
pub use stats::{prune_percent, SearchStats};
pub use topk::{TopKEntry, TopKStore};

use alloc::vec::Vec;

use crate::estimators::{score_subset, Estimator};
use crate::{EncodedDataset, Error, Result};

/// Default cap on partition storage held by queued nodes.
pub const DEFAULT_PARTITION_MEMORY: usize = 1 << 30;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub k: usize,
    /// Approximation factor in `(0, 1]`; 1 is exact.
    pub alpha: f64,
    /// Bytes of row partitions that queued nodes may keep; beyond this,
    /// partitions are dropped and rebuilt on expansion.
    pub partition_memory: usize,
    /// Disabling pruning turns branch-and-bound into a full enumeration.
    pub pruning: bool,
}

impl SearchConfig {
    pub fn new(k: usize, alpha: f64) -> Self {
        Self { k, alpha, partition_memory: DEFAULT_PARTITION_MEMORY, pruning: true }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidK);
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidAlpha(self.alpha));
        }
        Ok(())
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self::new(1, 1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub top: TopKStore,
    pub stats: SearchStats,
}

/// Scores every subset of at least two attributes from scratch and keeps the
/// best `k`. Exponential in `d`; meant for small inputs and as a reference.
pub fn exhaustive(dataset: &EncodedDataset, k: usize, estimator: Estimator) -> Result<TopKStore> {
    let d = dataset.d();
    if d > 24 {
        return Err(Error::OracleCap { estimator: "exhaustive", max: 24, got: d });
    }
    let mut top = TopKStore::new(k)?;
    let mut members = Vec::with_capacity(d);
    for mask in 1u32..(1 << d) {
        if mask.count_ones() < 2 {
            continue;
        }
        members.clear();
        members.extend((0..d).filter(|i| mask & (1 << i) != 0));
        top.offer(score_subset(dataset, &members, estimator)?);
    }
    Ok(top)
}
