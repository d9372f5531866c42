use alloc::vec;
use alloc::vec::Vec;

use crate::estimators::score::assemble_relaxed;
use crate::estimators::{canonical_order, RowPartition, SubsetScore};
use crate::EncodedDataset;

/// Attribute indices sorted by entropy descending, ties by index ascending.
pub fn order_attributes(dataset: &EncodedDataset) -> Vec<usize> {
    let mut order: Vec<usize> = (0..dataset.d()).collect();
    canonical_order(dataset, &mut order);
    order
}

/// The dataset seen through the decreasing-entropy order. Search nodes refer
/// to attributes by their position in this order.
#[derive(Debug, Clone)]
pub struct SearchSpace<'a> {
    dataset: &'a EncodedDataset,
    order: Vec<usize>,
    /// `suffix_entropy[p]` is the entropy sum of positions `p..d`.
    suffix_entropy: Vec<f64>,
}

impl<'a> SearchSpace<'a> {
    pub fn new(dataset: &'a EncodedDataset) -> Self {
        let order = order_attributes(dataset);
        let mut suffix_entropy = vec![0.0; order.len() + 1];
        for p in (0..order.len()).rev() {
            suffix_entropy[p] = suffix_entropy[p + 1] + dataset.attribute(order[p]).entropy();
        }
        Self { dataset, order, suffix_entropy }
    }

    pub fn dataset(&self) -> &'a EncodedDataset {
        self.dataset
    }

    pub fn d(&self) -> usize {
        self.order.len()
    }

    /// Attribute index at a search position.
    pub fn attribute_at(&self, position: usize) -> usize {
        self.order[position]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Entropy sum of all attributes after `position`.
    pub fn refinement_entropy(&self, position: Option<usize>) -> f64 {
        self.suffix_entropy[position.map_or(0, |p| p + 1)]
    }

    pub fn root(&self) -> SearchNode {
        SearchNode {
            positions: Vec::new(),
            score: None,
            entropy_sum: 0.0,
            partition: Some(RowPartition::single(self.dataset.n())),
            potential: 1.0,
        }
    }

    /// Rebuilds a node's partition from scratch.
    pub fn materialize(&self, node: &mut SearchNode) {
        if node.partition.is_none() {
            let mut p = RowPartition::single(self.dataset.n());
            for &pos in &node.positions {
                p = p.refine(self.dataset.attribute(self.order[pos]));
            }
            node.partition = Some(p);
        }
    }

    /// Children under the decreasing-entropy branching operator: one per
    /// position after the node's last. Scores are computed incrementally from
    /// the parent's partition; potentials are left at 1 for the caller.
    pub fn expand(&self, node: &mut SearchNode) -> Vec<SearchNode> {
        self.materialize(node);
        let parent = node.partition.as_ref().expect("materialized above");
        let start = node.last_position().map_or(0, |p| p + 1);
        (start..self.d())
            .map(|pos| {
                let attr = self.dataset.attribute(self.order[pos]);
                let partition = parent.refine(attr);
                let entropy_sum = node.entropy_sum + attr.entropy();
                let mut positions = node.positions.clone();
                positions.push(pos);
                let score = (positions.len() >= 2).then(|| {
                    let members = positions.iter().map(|&p| self.order[p]).collect();
                    assemble_relaxed(self.dataset, members, entropy_sum, &partition)
                });
                SearchNode { positions, score, entropy_sum, partition: Some(partition), potential: 1.0 }
            })
            .collect()
    }

    /// Refinement bound: the plug-in score with the entropies of all
    /// remaining lower-entropy attributes added to numerator and denominator,
    /// minus the node's correction.
    pub fn bound_ref(&self, node: &SearchNode) -> f64 {
        let Some(score) = &node.score else {
            return 1.0;
        };
        let rest = self.refinement_entropy(node.last_position());
        let denominator = score.normalizer + rest;
        if denominator <= 0.0 {
            return 0.0;
        }
        (score.total_correlation + rest) / denominator - score.correction
    }
}

/// Monotone bound `1 - t`: no low-entropy extension can score above it.
pub fn bound_mon(node: &SearchNode) -> f64 {
    node.score.as_ref().map_or(1.0, |s| 1.0 - s.correction)
}

#[derive(Debug, Clone)]
pub struct SearchNode {
    /// Positions in the search order, strictly increasing.
    pub positions: Vec<usize>,
    /// Present for two or more members.
    pub score: Option<SubsetScore>,
    pub entropy_sum: f64,
    pub partition: Option<RowPartition>,
    pub potential: f64,
}

impl SearchNode {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn last_position(&self) -> Option<usize> {
        self.positions.last().copied()
    }

    /// Corrected score; 0 for fewer than two members.
    pub fn value(&self) -> f64 {
        self.score.as_ref().map_or(0.0, |s| s.w_corrected)
    }

    pub fn has_refinements(&self, d: usize) -> bool {
        self.last_position().map_or(d > 0, |p| p + 1 < d)
    }

    pub fn bound_mon(&self) -> f64 {
        bound_mon(self)
    }
}
