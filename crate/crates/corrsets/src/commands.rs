//! The subcommands as library functions returning their reports.

use std::path::PathBuf;
use std::time::Duration;

use corrsets_core::data::{encode, NumericColumns};
use corrsets_core::search::{Budget, SearchOutcome};
use corrsets_core::synth::{
    chance_demo, run_regret, sample_joint_in_band, population_w, Scorer, SyntheticSpec,
};
use corrsets_core::{branch_and_bound, greedy, score_subset, EncodedDataset, Estimator, SearchConfig};

use crate::budget::Deadline;
use crate::error::CliError;
use crate::io::read_csv_file;
use crate::report::*;

/// Where and how to read a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct InputOptions {
    pub path: PathBuf,
    pub has_header: bool,
    pub bins: usize,
    pub numeric: NumericColumns,
    pub drop_constant: bool,
}

impl InputOptions {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into(), has_header: true, bins: 5, numeric: NumericColumns::None, drop_constant: false }
    }
}

pub struct LoadedDataset {
    pub dataset: EncodedDataset,
    pub summary: DatasetSummary,
}

pub fn load(input: &InputOptions) -> Result<LoadedDataset, CliError> {
    let loaded = read_csv_file(&input.path, input.has_header)?;
    let mut dataset = encode(&loaded.table, &input.numeric, input.bins)?;
    let mut dropped_constant = Vec::new();
    if input.drop_constant {
        dropped_constant =
            dataset.attributes().iter().filter(|a| a.is_constant()).map(|a| a.name().to_string()).collect();
        dataset = dataset.without_constant()?;
    }
    let summary = DatasetSummary::new(&dataset, loaded.dropped_rows, dropped_constant);
    Ok(LoadedDataset { dataset, summary })
}

fn numeric_label(numeric: &NumericColumns) -> String {
    match numeric {
        NumericColumns::None => "none".into(),
        NumericColumns::Auto => "auto".into(),
        NumericColumns::Named(names) => names.join(","),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Bnb,
    Greedy,
}

impl Algo {
    pub fn label(self) -> &'static str {
        match self {
            Algo::Bnb => "bnb",
            Algo::Greedy => "greedy",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscoverOptions {
    pub input: InputOptions,
    pub k: usize,
    pub alpha: f64,
    pub algo: Algo,
    pub budget: Option<Duration>,
    pub repeats: usize,
}

pub fn discover(opts: &DiscoverOptions, command: Vec<String>) -> Result<RunReport, CliError> {
    let LoadedDataset { dataset, summary } = load(&opts.input)?;
    let config = SearchConfig::new(opts.k, opts.alpha);
    let mut times = Vec::with_capacity(opts.repeats.max(1));
    let mut outcome: Option<SearchOutcome> = None;
    for _ in 0..opts.repeats.max(1) {
        let mut budget = Deadline::new(opts.budget);
        let run = match opts.algo {
            Algo::Bnb => branch_and_bound(&dataset, &config, &mut budget)?,
            Algo::Greedy => greedy(&dataset, opts.k, &mut budget)?,
        };
        times.push(budget.elapsed().as_secs_f64());
        outcome = Some(run);
    }
    let outcome = outcome.expect("at least one repeat");
    let results = outcome
        .top
        .entries()
        .iter()
        .enumerate()
        .map(|(i, e)| ResultRecord::new(i + 1, &dataset, &e.score))
        .collect();
    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        command,
        config: DiscoverConfig {
            input: opts.input.path.display().to_string(),
            has_header: opts.input.has_header,
            bins: opts.input.bins,
            numeric_cols: numeric_label(&opts.input.numeric),
            drop_constant: opts.input.drop_constant,
            k: opts.k,
            alpha: opts.alpha,
            algo: opts.algo.label().into(),
            budget_seconds: opts.budget.map(|b| b.as_secs_f64()),
            repeats: opts.repeats.max(1),
        },
        dataset: summary,
        results,
        stats: StatsRecord::from(&outcome.stats),
        timing: Timing::from_runs(times),
    })
}

pub fn score(
    input: &InputOptions,
    set: &[String],
    estimator: Estimator,
    command: Vec<String>,
) -> Result<ScoreReport, CliError> {
    let LoadedDataset { dataset, .. } = load(input)?;
    let mut members = Vec::with_capacity(set.len());
    for name in set {
        let index = dataset.index_of(name).ok_or_else(|| CliError::UnknownAttribute {
            name: name.clone(),
            candidates: dataset.attributes().iter().map(|a| a.name().to_string()).collect(),
        })?;
        members.push(index);
    }
    let s = score_subset(&dataset, &members, estimator)?;
    Ok(ScoreReport::new(command, input.path.display().to_string(), &dataset, &s))
}

pub fn chance(d: usize, domain: u32, n: usize, seed: u64, command: Vec<String>) -> Result<ChanceReport, CliError> {
    let budget = Deadline::new(None);
    let points = chance_demo(d, domain, n, seed)?;
    Ok(ChanceReport {
        schema_version: SCHEMA_VERSION,
        command,
        d,
        domain,
        n,
        seed,
        rows: points.iter().map(ChanceRow::from).collect(),
        timing: Timing::from_runs(vec![budget.elapsed().as_secs_f64()]),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegretOptions {
    pub dims: Vec<usize>,
    pub bands: Vec<(f64, f64)>,
    pub n_grid: Vec<usize>,
    pub trials: usize,
    pub scorers: Vec<Scorer>,
    pub seed: u64,
    pub max_attempts: usize,
}

impl Default for RegretOptions {
    fn default() -> Self {
        Self {
            dims: vec![2, 3, 4],
            bands: vec![(0.1, 0.2), (0.2, 0.3), (0.3, 0.4), (0.4, 0.5)],
            n_grid: (1..=10).map(|i| 10 * i).collect(),
            trials: 500,
            scorers: Estimator::ALL.into_iter().map(Scorer::Estimator).collect(),
            seed: 0,
            max_attempts: 200_000,
        }
    }
}

/// Runs the regret grid. Cells whose band cannot be reached are reported in
/// `skipped` rather than failing the run.
pub fn regret(opts: &RegretOptions, command: Vec<String>) -> Result<RegretReport, CliError> {
    let budget = Deadline::new(None);
    let mut cells = Vec::new();
    let mut skipped = Vec::new();
    let mut cell_index = 0u64;
    for &d in &opts.dims {
        for &(lo, hi) in &opts.bands {
            let cell_seed = opts.seed.wrapping_add(cell_index);
            cell_index += 1;
            let joint = match sample_joint_in_band(d, lo, hi, cell_seed, opts.max_attempts) {
                Ok(j) => j,
                Err(e @ corrsets_core::Error::BandNotReached { .. }) => {
                    skipped.push(SkippedCell { d, band: [lo, hi], reason: e.to_string() });
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            let w = population_w(&joint, (1 << d) - 1);
            let spec = SyntheticSpec::new(joint)?;
            let curves = run_regret(&spec, &opts.scorers, &opts.n_grid, opts.trials, cell_seed)?;
            cells.push(RegretCell {
                d,
                band: [lo, hi],
                population_w: w,
                curves: curves.iter().map(CurveRecord::from).collect(),
            });
        }
    }
    let average = average_curves(&cells, opts);
    Ok(RegretReport {
        schema_version: SCHEMA_VERSION,
        command,
        trials: opts.trials,
        seed: opts.seed,
        cells,
        skipped,
        average,
        timing: Timing::from_runs(vec![budget.elapsed().as_secs_f64()]),
    })
}

/// Mean over cells of each estimator's curve; the standard error combines the
/// per-cell errors of independent trials.
fn average_curves(cells: &[RegretCell], opts: &RegretOptions) -> Vec<CurveRecord> {
    if cells.is_empty() {
        return Vec::new();
    }
    let c = cells.len() as f64;
    (0..opts.scorers.len())
        .map(|si| {
            let len = opts.n_grid.len();
            let mut mean = vec![0.0; len];
            let mut var = vec![0.0; len];
            for cell in cells {
                let curve = &cell.curves[si];
                for i in 0..len {
                    mean[i] += curve.mean_regret[i] / c;
                    var[i] += curve.stderr[i] * curve.stderr[i];
                }
            }
            CurveRecord {
                estimator: opts.scorers[si].label().to_string(),
                n: opts.n_grid.clone(),
                mean_regret: mean,
                stderr: var.into_iter().map(|v| v.sqrt() / c).collect(),
            }
        })
        .collect()
}
