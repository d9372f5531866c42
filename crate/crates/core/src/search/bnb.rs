use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

use super::node::{SearchNode, SearchSpace};
use super::stats::prune_percent;
use super::{Budget, SearchConfig, SearchOutcome, SearchStats, TopKStore};
use crate::{EncodedDataset, Error, Result};

/// Hooks into the traversal, used to instrument admissibility and
/// enumeration order. All methods default to no-ops.
pub trait SearchObserver {
    /// A node was taken from the queue and is about to be expanded.
    fn expanded(&mut self, _node: &SearchNode) {}

    /// A child was generated and scored.
    fn generated(&mut self, _parent: &SearchNode, _child: &SearchNode) {}

    /// A child with refinements was discarded by its bound.
    fn pruned(&mut self, _node: &SearchNode) {}
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NoObserver;

impl SearchObserver for NoObserver {}

/// Heap entry: larger potential first, then the smaller position tuple.
struct Queued(SearchNode);

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Queued {}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Queued {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .potential
            .total_cmp(&other.0.potential)
            .then_with(|| other.0.positions.cmp(&self.0.positions))
    }
}

/// Best-first branch-and-bound for the top-k subsets under the relaxed
/// corrected score.
///
/// With `alpha = 1` and a budget that never runs out the result equals full
/// enumeration. With `alpha < 1` every returned entry is within a factor
/// `alpha` of the best score it could have been displaced by.
pub fn branch_and_bound(
    dataset: &EncodedDataset,
    config: &SearchConfig,
    budget: &mut impl Budget,
) -> Result<SearchOutcome> {
    branch_and_bound_observed(dataset, config, budget, &mut NoObserver)
}

pub fn branch_and_bound_observed(
    dataset: &EncodedDataset,
    config: &SearchConfig,
    budget: &mut impl Budget,
    observer: &mut impl SearchObserver,
) -> Result<SearchOutcome> {
    config.validate()?;
    if dataset.d() < 2 {
        return Err(Error::TooFewAttributes(dataset.d()));
    }
    let space = SearchSpace::new(dataset);
    let d = space.d();
    let alpha = config.alpha;
    let mut top = TopKStore::new(config.k)?;
    let mut stats = SearchStats { nodes_explored: 1, complete: true, ..SearchStats::default() };

    let mut queue = BinaryHeap::new();
    let root = space.root();
    let mut held_bytes = root.partition.as_ref().map_or(0, |p| p.byte_size());
    queue.push(Queued(root));

    while let Some(Queued(mut node)) = queue.pop() {
        if let Some(p) = &node.partition {
            held_bytes -= p.byte_size();
        }
        if budget.exhausted() {
            stats.complete = false;
            break;
        }
        // the threshold may have risen since the node was queued
        if config.pruning && !(alpha * node.potential > top.threshold()) {
            observer.pruned(&node);
            stats.nodes_pruned += 1 + queue.len() as u64;
            for Queued(rest) in queue.drain() {
                observer.pruned(&rest);
            }
            break;
        }
        observer.expanded(&node);
        stats.nodes_expanded += 1;
        let children = space.expand(&mut node);

        for child in &children {
            stats.nodes_explored += 1;
            stats.max_depth_reached = stats.max_depth_reached.max(child.len());
            observer.generated(&node, child);
            if let Some(score) = &child.score {
                top.offer(score.clone());
            }
        }

        for mut child in children {
            if !child.has_refinements(d) {
                continue;
            }
            if config.pruning {
                let threshold = top.threshold();
                if child.score.is_some() {
                    let mon = child.bound_mon();
                    child.potential = mon;
                    if alpha * mon > threshold {
                        child.potential = mon.min(space.bound_ref(&child));
                    }
                }
                if !(alpha * child.potential > threshold) {
                    observer.pruned(&child);
                    stats.nodes_pruned += 1;
                    continue;
                }
            }
            let bytes = child.partition.as_ref().map_or(0, |p| p.byte_size());
            if held_bytes + bytes > config.partition_memory {
                child.partition = None;
            } else {
                held_bytes += bytes;
            }
            queue.push(Queued(child));
        }
    }

    stats.prune_percent = prune_percent(stats.nodes_explored, d);
    stats.solution_depth = top.best().map_or(0, |e| e.key.len());
    stats.wall_time = budget.elapsed();
    Ok(SearchOutcome { top, stats })
}
