use alloc::vec::Vec;
use core::cmp::Ordering;

use super::node::{SearchNode, SearchSpace};
use super::stats::prune_percent;
use super::{Budget, SearchOutcome, SearchStats, TopKStore};
use crate::{EncodedDataset, Error, Result};

/// Higher value first, then the smaller position tuple.
fn better(a: &SearchNode, b: &SearchNode) -> Ordering {
    b.value().total_cmp(&a.value()).then_with(|| a.positions.cmp(&b.positions))
}

/// Index of the best node among `nodes`.
fn argmax(nodes: &[SearchNode]) -> Option<usize> {
    (0..nodes.len()).min_by(|&i, &j| better(&nodes[i], &nodes[j]))
}

/// Level-wise greedy search. Every pair is scored, then only the best node of
/// each level is refined under the decreasing-entropy branching operator.
/// Refinement stops when the chosen node has no refinements or its
/// refinement bound cannot beat the current k-th best score.
pub fn greedy(dataset: &EncodedDataset, k: usize, budget: &mut impl Budget) -> Result<SearchOutcome> {
    let mut top = TopKStore::new(k)?;
    if dataset.d() < 2 {
        return Err(Error::TooFewAttributes(dataset.d()));
    }
    let space = SearchSpace::new(dataset);
    let d = space.d();
    let mut stats = SearchStats { nodes_explored: 1, complete: true, ..SearchStats::default() };

    let mut root = space.root();
    let singletons = space.expand(&mut root);
    stats.nodes_explored += singletons.len() as u64;
    stats.nodes_expanded += 1;
    let mut pairs = Vec::new();
    for mut s in singletons {
        if budget.exhausted() {
            stats.complete = false;
            break;
        }
        stats.nodes_expanded += 1;
        pairs.extend(space.expand(&mut s));
    }
    stats.nodes_explored += pairs.len() as u64;

    let mut level = pairs;
    loop {
        for node in &level {
            stats.max_depth_reached = stats.max_depth_reached.max(node.len());
            if let Some(score) = &node.score {
                top.offer(score.clone());
            }
        }
        let Some(best) = argmax(&level) else { break };
        let mut chosen = level.swap_remove(best);
        if !stats.complete || !chosen.has_refinements(d) {
            break;
        }
        if space.bound_ref(&chosen) <= top.threshold() {
            break;
        }
        if budget.exhausted() {
            stats.complete = false;
            break;
        }
        stats.nodes_expanded += 1;
        level = space.expand(&mut chosen);
        stats.nodes_explored += level.len() as u64;
    }

    stats.prune_percent = prune_percent(stats.nodes_explored, d);
    stats.solution_depth = top.best().map_or(0, |e| e.key.len());
    stats.wall_time = budget.elapsed();
    Ok(SearchOutcome { top, stats })
}
