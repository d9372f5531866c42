use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::sampling::{sample_dataset, trial_rng};
use super::{argmax_masks, SyntheticSpec};
use crate::estimators::correction::m0_upper;
use crate::estimators::permutation::{expected_mi_with, LogFactorials};
use crate::estimators::score::assemble_relaxed;
use crate::estimators::{canonical_order, RowPartition, ORACLE_MAX_MEMBERS};
use crate::{EncodedDataset, Error, Estimator, Result};

/// Largest number of variables the exhaustive maximizer accepts.
pub const REGRET_MAX_VARIABLES: usize = 12;

/// Objective maximized on each sampled dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scorer {
    Estimator(Estimator),
    /// The population score itself; always finds the true maximizer.
    Population,
}

impl Scorer {
    pub fn label(self) -> &'static str {
        match self {
            Scorer::Estimator(e) => e.label(),
            Scorer::Population => "population",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        if label == "population" {
            Some(Scorer::Population)
        } else {
            Estimator::from_label(label).map(Scorer::Estimator)
        }
    }
}

impl fmt::Display for Scorer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegretCurve {
    pub scorer: Scorer,
    pub n: Vec<usize>,
    pub mean_regret: Vec<f64>,
    /// Standard error of each mean.
    pub stderr: Vec<f64>,
    pub trials: usize,
}

/// Scores of every subset of a small dataset under each estimator, sharing
/// the row partitions of the whole subset lattice.
pub(crate) struct Lattice<'a> {
    dataset: &'a EncodedDataset,
    partitions: Vec<RowPartition>,
    order: Vec<usize>,
    log_factorials: LogFactorials,
}

impl<'a> Lattice<'a> {
    pub(crate) fn new(dataset: &'a EncodedDataset) -> Self {
        let m = dataset.d();
        let mut partitions = Vec::with_capacity(1 << m);
        partitions.push(RowPartition::single(dataset.n()));
        for mask in 1usize..(1 << m) {
            let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
            let refined = partitions[mask & !(1 << top)].refine(dataset.attribute(top));
            partitions.push(refined);
        }
        let mut order: Vec<usize> = (0..m).collect();
        canonical_order(dataset, &mut order);
        let log_factorials = LogFactorials::new(dataset.n() as u64);
        Self { dataset, partitions, order, log_factorials }
    }

    /// Corrected score of every mask; entries for fewer than two members are 0.
    pub(crate) fn scores(&self, estimator: Estimator) -> Vec<f64> {
        let m = self.dataset.d();
        let chains = match estimator {
            Estimator::Exact => Some(self.chains(|prefix, next| self.emi(prefix, next))),
            Estimator::Upper => Some(self.chains(|prefix, next| {
                let dx = self.partitions[prefix].cell_count() as u64;
                let dy = u64::from(self.dataset.attribute(next).domain_size());
                m0_upper(dx, dy, self.dataset.n() as u64).unwrap_or(0.0)
            })),
            _ => None,
        };
        let mut out = vec![0.0; 1 << m];
        for mask in 1usize..(1 << m) {
            if mask.count_ones() < 2 {
                continue;
            }
            let members: Vec<usize> = self.order.iter().copied().filter(|&i| mask & (1 << i) != 0).collect();
            let sum = members.iter().fold(0.0, |acc, &i| acc + self.dataset.attribute(i).entropy());
            let s = assemble_relaxed(self.dataset, members, sum, &self.partitions[mask]);
            out[mask] = match (estimator, &chains) {
                (Estimator::Plugin, _) => s.w_plugin,
                (Estimator::Relaxed, _) => s.w_corrected,
                (_, Some(chain)) if !s.is_degenerate() => s.w_plugin - chain[mask] / s.normalizer,
                _ => 0.0,
            };
        }
        out
    }

    fn emi(&self, prefix: usize, next: usize) -> f64 {
        let n = self.dataset.n() as u64;
        let attr = self.dataset.attribute(next);
        expected_mi_with(&self.log_factorials, self.partitions[prefix].cell_counts(), attr.counts(), n)
    }

    /// Best ordering sum of `step` for every mask simultaneously.
    fn chains(&self, mut step: impl FnMut(usize, usize) -> f64) -> Vec<f64> {
        let m = self.dataset.d();
        let mut best = vec![f64::NEG_INFINITY; 1 << m];
        best[0] = 0.0;
        for i in 0..m {
            best[1 << i] = 0.0;
        }
        for mask in 1usize..(1 << m) {
            if mask.count_ones() < 2 {
                continue;
            }
            let mut value = f64::NEG_INFINITY;
            for last in 0..m {
                if mask & (1 << last) == 0 {
                    continue;
                }
                let prefix = mask & !(1 << last);
                let candidate = best[prefix] + step(prefix, last);
                if candidate > value {
                    value = candidate;
                }
            }
            best[mask] = value;
        }
        best
    }
}

/// Regret curves for each scorer: for every sample size and trial a dataset
/// is drawn, the scorer is maximized exhaustively over subsets of at least two
/// variables, and the population score of the winner is compared with the
/// population optimum.
pub fn run_regret(
    spec: &SyntheticSpec,
    scorers: &[Scorer],
    n_grid: &[usize],
    trials: usize,
    seed: u64,
) -> Result<Vec<RegretCurve>> {
    let m = spec.variables();
    if m > REGRET_MAX_VARIABLES {
        return Err(Error::OracleCap { estimator: "regret", max: REGRET_MAX_VARIABLES, got: m });
    }
    if trials == 0 {
        return Err(Error::InvalidSynthetic("trials must be at least 1".into()));
    }
    for s in scorers {
        if matches!(s, Scorer::Estimator(Estimator::Exact | Estimator::Upper)) && m > ORACLE_MAX_MEMBERS {
            return Err(Error::OracleCap { estimator: s.label(), max: ORACLE_MAX_MEMBERS, got: m });
        }
    }
    if let Some(&n) = n_grid.iter().find(|&&n| n < 2) {
        return Err(Error::TooFewRows(n));
    }

    let (_, optimum) = spec.true_maximizer();
    let mut regrets = vec![vec![Vec::with_capacity(trials); n_grid.len()]; scorers.len()];
    for (ni, &n) in n_grid.iter().enumerate() {
        for trial in 0..trials {
            let stream = ((n as u64) << 32) | trial as u64;
            let dataset = sample_dataset(spec, n, &mut trial_rng(seed, stream))?;
            let lattice = Lattice::new(&dataset);
            for (si, scorer) in scorers.iter().enumerate() {
                let winner = match scorer {
                    Scorer::Population => spec.true_maximizer().0,
                    Scorer::Estimator(e) => {
                        let scores = lattice.scores(*e);
                        argmax_masks(m, |mask| scores[mask as usize]).0
                    }
                };
                regrets[si][ni].push(optimum - spec.population_w(winner));
            }
        }
    }

    Ok(scorers
        .iter()
        .zip(regrets)
        .map(|(&scorer, per_n)| {
            let (mean_regret, stderr) = per_n.iter().map(|r| mean_and_stderr(r)).unzip();
            RegretCurve { scorer, n: n_grid.to_vec(), mean_regret, stderr, trials }
        })
        .collect())
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (k - 1.0);
    (mean, libm::sqrt(var / k))
}
