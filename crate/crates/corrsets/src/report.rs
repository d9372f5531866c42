//! Machine-readable reports. Everything outside the `timing` member is a
//! deterministic function of the command line and its inputs.

use std::fmt::Write as _;

use serde::Serialize;

use corrsets_core::search::SearchStats;
use corrsets_core::synth::{ChancePoint, RegretCurve};
use corrsets_core::{EncodedDataset, SubsetScore};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttributeSummary {
    pub name: String,
    pub domain_size: u32,
    pub entropy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetSummary {
    pub n: usize,
    pub d: usize,
    pub attributes: Vec<AttributeSummary>,
    /// Input rows skipped because a field was empty.
    pub dropped_rows: usize,
    /// Constant attributes removed by `--drop-constant`.
    pub dropped_constant: Vec<String>,
}

impl DatasetSummary {
    pub fn new(dataset: &EncodedDataset, dropped_rows: usize, dropped_constant: Vec<String>) -> Self {
        let attributes = dataset
            .attributes()
            .iter()
            .map(|a| AttributeSummary { name: a.name().to_string(), domain_size: a.domain_size(), entropy: a.entropy() })
            .collect();
        Self { n: dataset.n(), d: dataset.d(), attributes, dropped_rows, dropped_constant }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRecord {
    pub rank: usize,
    /// Member names in decreasing-entropy order.
    pub members: Vec<String>,
    pub w_corrected: f64,
    pub w_plugin: f64,
    pub correction: f64,
    pub depth: usize,
}

impl ResultRecord {
    pub fn new(rank: usize, dataset: &EncodedDataset, score: &SubsetScore) -> Self {
        Self {
            rank,
            members: names(dataset, &score.members),
            w_corrected: score.w_corrected,
            w_plugin: score.w_plugin,
            correction: score.correction,
            depth: score.members.len(),
        }
    }
}

fn names(dataset: &EncodedDataset, members: &[usize]) -> Vec<String> {
    members.iter().map(|&i| dataset.attribute(i).name().to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsRecord {
    pub nodes_explored: u64,
    pub nodes_pruned: u64,
    pub nodes_expanded: u64,
    pub prune_percent: f64,
    pub max_depth_reached: usize,
    pub solution_depth: usize,
    pub complete: bool,
}

impl From<&SearchStats> for StatsRecord {
    fn from(s: &SearchStats) -> Self {
        Self {
            nodes_explored: s.nodes_explored,
            nodes_pruned: s.nodes_pruned,
            nodes_expanded: s.nodes_expanded,
            prune_percent: s.prune_percent,
            max_depth_reached: s.max_depth_reached,
            solution_depth: s.solution_depth,
            complete: s.complete,
        }
    }
}

/// Wall-clock measurements; excluded from the determinism contract.
#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct Timing {
    pub wall_seconds_mean: f64,
    pub wall_seconds: Vec<f64>,
}

impl Timing {
    pub fn from_runs(runs: Vec<f64>) -> Self {
        let mean = if runs.is_empty() { 0.0 } else { runs.iter().sum::<f64>() / runs.len() as f64 };
        Self { wall_seconds_mean: mean, wall_seconds: runs }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscoverConfig {
    pub input: String,
    pub has_header: bool,
    pub bins: usize,
    pub numeric_cols: String,
    pub drop_constant: bool,
    pub k: usize,
    pub alpha: f64,
    pub algo: String,
    pub budget_seconds: Option<f64>,
    pub repeats: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub config: DiscoverConfig,
    pub dataset: DatasetSummary,
    pub results: Vec<ResultRecord>,
    pub stats: StatsRecord,
    pub timing: Timing,
}

impl RunReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} on {} (n={}, d={}), k={}, alpha={}",
            self.config.algo, self.config.input, self.dataset.n, self.dataset.d, self.config.k, self.config.alpha
        );
        let _ = writeln!(out, "{:>4}  {:>9}  {:>9}  {:>9}  {:>5}  members", "rank", "w_corr", "w_plugin", "t", "size");
        for r in &self.results {
            let _ = writeln!(
                out,
                "{:>4}  {:>9.5}  {:>9.5}  {:>9.5}  {:>5}  {}",
                r.rank,
                r.w_corrected,
                r.w_plugin,
                r.correction,
                r.depth,
                r.members.join(", ")
            );
        }
        let s = &self.stats;
        let _ = writeln!(
            out,
            "max depth {} / solution depth {} / prune {:.2}% / explored {} / time {:.3}s{}",
            s.max_depth_reached,
            s.solution_depth,
            s.prune_percent,
            s.nodes_explored,
            self.timing.wall_seconds_mean,
            if s.complete { "" } else { " / INCOMPLETE (budget exhausted)" }
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub input: String,
    pub members: Vec<String>,
    pub estimator: String,
    pub n: usize,
    pub entropy_sum: f64,
    pub entropy_max: f64,
    pub joint_entropy: f64,
    pub joint_cells: usize,
    pub total_correlation: f64,
    pub normalizer: f64,
    pub w_plugin: f64,
    pub correction: f64,
    pub w_corrected: f64,
}

impl ScoreReport {
    pub fn new(command: Vec<String>, input: String, dataset: &EncodedDataset, s: &SubsetScore) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            input,
            members: names(dataset, &s.members),
            estimator: s.estimator.label().to_string(),
            n: dataset.n(),
            entropy_sum: s.entropy_sum,
            entropy_max: s.entropy_max,
            joint_entropy: s.joint_entropy,
            joint_cells: s.joint_cells,
            total_correlation: s.total_correlation,
            normalizer: s.normalizer,
            w_plugin: s.w_plugin,
            correction: s.correction,
            w_corrected: s.w_corrected,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "members            {}", self.members.join(", "));
        let _ = writeln!(out, "estimator          {}", self.estimator);
        let _ = writeln!(out, "n                  {}", self.n);
        for (label, v) in [
            ("entropy_sum", self.entropy_sum),
            ("entropy_max", self.entropy_max),
            ("joint_entropy", self.joint_entropy),
            ("total_correlation", self.total_correlation),
            ("normalizer", self.normalizer),
            ("w_plugin", self.w_plugin),
            ("correction", self.correction),
            ("w_corrected", self.w_corrected),
        ] {
            let _ = writeln!(out, "{label:<18} {v:.6}");
        }
        let _ = writeln!(out, "joint_cells        {}", self.joint_cells);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChanceRow {
    pub cardinality: usize,
    pub plugin: f64,
    pub corrected: f64,
    pub plugin_normalized: f64,
    pub corrected_normalized: f64,
}

impl From<&ChancePoint> for ChanceRow {
    fn from(p: &ChancePoint) -> Self {
        Self {
            cardinality: p.cardinality,
            plugin: p.plugin,
            corrected: p.corrected,
            plugin_normalized: p.plugin_normalized,
            corrected_normalized: p.corrected_normalized,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChanceReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub d: usize,
    pub domain: u32,
    pub n: usize,
    pub seed: u64,
    pub rows: Vec<ChanceRow>,
    pub timing: Timing,
}

impl ChanceReport {
    pub fn tsv(&self) -> String {
        let mut out = String::from("cardinality\tplugin\tcorrected\tplugin_normalized\tcorrected_normalized\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}",
                r.cardinality, r.plugin, r.corrected, r.plugin_normalized, r.corrected_normalized
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRecord {
    pub estimator: String,
    pub n: Vec<usize>,
    pub mean_regret: Vec<f64>,
    pub stderr: Vec<f64>,
}

impl From<&RegretCurve> for CurveRecord {
    fn from(c: &RegretCurve) -> Self {
        Self {
            estimator: c.scorer.label().to_string(),
            n: c.n.clone(),
            mean_regret: c.mean_regret.clone(),
            stderr: c.stderr.clone(),
        }
    }
}

/// One sampled population and its curves.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegretCell {
    pub d: usize,
    pub band: [f64; 2],
    /// Exact score of the dependent variables.
    pub population_w: f64,
    pub curves: Vec<CurveRecord>,
}

/// A grid cell whose band could not be reached.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedCell {
    pub d: usize,
    pub band: [f64; 2],
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegretReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub trials: usize,
    pub seed: u64,
    pub cells: Vec<RegretCell>,
    pub skipped: Vec<SkippedCell>,
    /// Curves averaged over all sampled cells.
    pub average: Vec<CurveRecord>,
    pub timing: Timing,
}

impl RegretReport {
    /// `estimator, n, mean_regret, stderr` rows for the given curves.
    pub fn tsv(curves: &[CurveRecord]) -> String {
        let mut out = String::from("estimator\tn\tmean_regret\tstderr\n");
        for c in curves {
            for i in 0..c.n.len() {
                let _ = writeln!(out, "{}\t{}\t{:.6}\t{:.6}", c.estimator, c.n[i], c.mean_regret[i], c.stderr[i]);
            }
        }
        out
    }
}
