use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::estimators::SubsetScore;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TopKEntry {
    /// Member attribute indices, ascending.
    pub key: Vec<usize>,
    pub score: SubsetScore,
}

impl TopKEntry {
    pub fn value(&self) -> f64 {
        self.score.w_corrected
    }
}

/// The `k` best subsets seen so far, by corrected score descending and then
/// by ascending member tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct TopKStore {
    capacity: usize,
    entries: Vec<TopKEntry>,
}

fn rank(a: &TopKEntry, b: &TopKEntry) -> Ordering {
    b.value().total_cmp(&a.value()).then_with(|| a.key.cmp(&b.key))
}

impl TopKStore {
    pub fn new(k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidK);
        }
        Ok(Self { capacity: k, entries: Vec::with_capacity(k + 1) })
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn entries(&self) -> &[TopKEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn best(&self) -> Option<&TopKEntry> {
        self.entries.first()
    }

    /// Score a candidate must beat to enter a full store; `-inf` until `k`
    /// entries have been collected.
    pub fn threshold(&self) -> f64 {
        if self.entries.len() < self.capacity {
            f64::NEG_INFINITY
        } else {
            self.entries[self.capacity - 1].value()
        }
    }

    /// Offers a scored subset. Subsets with fewer than two members are
    /// ignored. Returns whether the subset was kept.
    pub fn offer(&mut self, score: SubsetScore) -> bool {
        if score.members.len() < 2 {
            return false;
        }
        let mut key = score.members.clone();
        key.sort_unstable();
        let entry = TopKEntry { key, score };
        if self.entries.len() == self.capacity
            && rank(&entry, &self.entries[self.capacity - 1]) != Ordering::Less
        {
            return false;
        }
        let pos = self.entries.partition_point(|e| rank(e, &entry) == Ordering::Less);
        if self.entries.get(pos).is_some_and(|e| e.key == entry.key) {
            return false;
        }
        self.entries.insert(pos, entry);
        self.entries.truncate(self.capacity);
        true
    }

    pub fn scores(&self) -> Vec<f64> {
        self.entries.iter().map(TopKEntry::value).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::Estimator;
    use alloc::vec;

    fn score(members: Vec<usize>, w: f64) -> SubsetScore {
        SubsetScore {
            members,
            entropy_sum: 0.0,
            entropy_max: 0.0,
            joint_entropy: 0.0,
            joint_cells: 0,
            total_correlation: 0.0,
            normalizer: 1.0,
            w_plugin: w,
            estimator: Estimator::Relaxed,
            correction: 0.0,
            w_corrected: w,
        }
    }

    #[test]
    fn keeps_k_best_with_tie_break() {
        let mut top = TopKStore::new(2).unwrap();
        assert_eq!(top.threshold(), f64::NEG_INFINITY);
        assert!(top.offer(score(vec![3, 1], 0.5)));
        assert!(top.offer(score(vec![0, 2], 0.5)));
        assert_eq!(top.threshold(), 0.5);
        assert!(!top.offer(score(vec![4, 5], 0.5)));
        assert!(top.offer(score(vec![0, 9], 0.7)));
        let keys: Vec<_> = top.entries().iter().map(|e| e.key.clone()).collect();
        assert_eq!(keys, vec![vec![0, 9], vec![0, 2]]);
    }

    #[test]
    fn singletons_rejected() {
        let mut top = TopKStore::new(1).unwrap();
        assert!(!top.offer(score(vec![1], 0.9)));
        assert!(top.is_empty());
        assert_eq!(TopKStore::new(0), Err(Error::InvalidK));
    }
}
