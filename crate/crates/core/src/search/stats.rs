use core::time::Duration;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SearchStats {
    /// Subsets generated, counting the empty root.
    pub nodes_explored: u64,
    /// Nodes with refinements that were discarded by the bound.
    pub nodes_pruned: u64,
    pub prune_percent: f64,
    /// Largest cardinality among generated subsets.
    pub max_depth_reached: usize,
    /// Cardinality of the best subset found.
    pub solution_depth: usize,
    /// Nodes taken from the queue and expanded.
    pub nodes_expanded: u64,
    /// False when the budget ran out before the search finished.
    pub complete: bool,
    pub wall_time: Duration,
}

/// Share of the `2^d` subset lattice that was never generated:
/// `100 - 100 q / 2^d`.
pub fn prune_percent(explored: u64, d: usize) -> f64 {
    let share = libm::ldexp(explored as f64, -(d.min(i32::MAX as usize) as i32));
    100.0 - 100.0 * share
}
