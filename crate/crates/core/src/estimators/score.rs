use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::correction::{correction_exact, correction_upper, sorted_relaxed_sum};
use super::RowPartition;
use crate::{EncodedDataset, Error, Result};

/// Which correction is subtracted from the plug-in score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Estimator {
    /// No correction.
    Plugin,
    /// Exact permutation-model expectation (at most 8 members).
    Exact,
    /// Closed-form bound with observed joint domains (at most 8 members).
    Upper,
    /// Product-of-domains relaxation; the production estimator.
    Relaxed,
}

impl Estimator {
    pub const ALL: [Estimator; 4] =
        [Estimator::Plugin, Estimator::Exact, Estimator::Upper, Estimator::Relaxed];

    pub fn label(self) -> &'static str {
        match self {
            Estimator::Plugin => "plugin",
            Estimator::Exact => "exact",
            Estimator::Upper => "upper",
            Estimator::Relaxed => "relaxed",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.label() == label)
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Plug-in and corrected score components of one attribute subset.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetScore {
    /// Attribute indices in decreasing-entropy order.
    pub members: Vec<usize>,
    /// Sum of marginal entropies.
    pub entropy_sum: f64,
    /// Largest marginal entropy.
    pub entropy_max: f64,
    /// Joint entropy of the members.
    pub joint_entropy: f64,
    /// Number of observed joint value combinations.
    pub joint_cells: usize,
    /// Plug-in total correlation `entropy_sum - joint_entropy`.
    pub total_correlation: f64,
    /// `entropy_sum - entropy_max`.
    pub normalizer: f64,
    /// Plug-in normalized total correlation.
    pub w_plugin: f64,
    pub estimator: Estimator,
    /// Correction term of `estimator`; zero for the plug-in.
    pub correction: f64,
    /// `w_plugin - correction`.
    pub w_corrected: f64,
}

impl SubsetScore {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        self.normalizer <= 0.0
    }
}

fn entropy_order(dataset: &EncodedDataset, a: usize, b: usize) -> Ordering {
    let (ha, hb) = (dataset.attribute(a).entropy(), dataset.attribute(b).entropy());
    hb.total_cmp(&ha).then(a.cmp(&b))
}

/// Sorts attribute indices by entropy descending, ties by index ascending.
pub fn canonical_order(dataset: &EncodedDataset, members: &mut [usize]) {
    members.sort_unstable_by(|&a, &b| entropy_order(dataset, a, b));
}

/// Scores an attribute subset.
///
/// Fewer than two distinct members is an error; callers treat such sets as
/// scoring 0. When the normalizer is zero every score component is 0.
pub fn score_subset(
    dataset: &EncodedDataset,
    members: &[usize],
    estimator: Estimator,
) -> Result<SubsetScore> {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    if let Some(&bad) = members.iter().find(|&&i| i >= dataset.d()) {
        return Err(Error::AttributeIndex(bad));
    }
    if members.len() < 2 {
        return Err(Error::SubsetTooSmall { min: 2, got: members.len() });
    }
    canonical_order(dataset, &mut members);

    let mut partition = RowPartition::single(dataset.n());
    let mut entropy_sum = 0.0;
    for &i in &members {
        partition = partition.refine(dataset.attribute(i));
        entropy_sum += dataset.attribute(i).entropy();
    }
    let mut score = assemble_relaxed(dataset, members, entropy_sum, &partition);
    match estimator {
        Estimator::Relaxed => {}
        Estimator::Plugin => {
            score.estimator = Estimator::Plugin;
            score.correction = 0.0;
            score.w_corrected = score.w_plugin;
        }
        Estimator::Exact | Estimator::Upper => {
            let result = if estimator == Estimator::Exact {
                correction_exact(dataset, &score.members)
            } else {
                correction_upper(dataset, &score.members)
            };
            score.estimator = estimator;
            match result {
                Ok(correction) => {
                    score.correction = correction;
                    score.w_corrected = score.w_plugin - correction;
                }
                Err(Error::DegenerateNormalizer) => {
                    score.correction = 0.0;
                    score.w_corrected = 0.0;
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(score)
}

/// Builds the relaxed-estimator score from precomputed parts. `members` must
/// be in canonical order and `entropy_sum` their left-to-right sum, so that
/// incremental and from-scratch evaluation agree bit for bit.
pub(crate) fn assemble_relaxed(
    dataset: &EncodedDataset,
    members: Vec<usize>,
    entropy_sum: f64,
    joint: &RowPartition,
) -> SubsetScore {
    let entropy_max = dataset.attribute(members[0]).entropy();
    let joint_entropy = joint.entropy();
    let normalizer = entropy_sum - entropy_max;
    let mut score = SubsetScore {
        members,
        entropy_sum,
        entropy_max,
        joint_entropy,
        joint_cells: joint.cell_count(),
        total_correlation: 0.0,
        normalizer,
        w_plugin: 0.0,
        estimator: Estimator::Relaxed,
        correction: 0.0,
        w_corrected: 0.0,
    };
    if normalizer <= 0.0 {
        score.total_correlation = 0.0;
        return score;
    }
    let total = (entropy_sum - joint_entropy).clamp(0.0, normalizer);
    score.total_correlation = total;
    score.w_plugin = total / normalizer;

    let mut sizes: Vec<u32> =
        score.members.iter().map(|&i| dataset.attribute(i).domain_size()).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    score.correction = sorted_relaxed_sum(&sizes, dataset.n() as u64) / normalizer;
    score.w_corrected = score.w_plugin - score.correction;
    score
}
