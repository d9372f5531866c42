//! Synthetic populations with known correlation structure.
//!
//! A [`JointTable`] is an exact categorical distribution. Population scores
//! are computed by exact marginalization, so experiments can compare the
//! subset picked by an estimator on a finite sample against the true optimum.

mod chance;
mod regret;
mod sampling;

pub use chance::{chance_demo, ChancePoint};
pub use regret::{run_regret, RegretCurve, Scorer};
pub use sampling::{sample_dataset, sample_joint_in_band, trial_rng};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Domain size of every synthetic variable.
pub const SYNTH_DOMAIN: usize = 3;
/// Independent uniform variables appended to each population.
pub const SYNTH_INDEPENDENT: usize = 3;

/// Exact joint distribution over categorical variables, stored row-major with
/// the last variable varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable {
    dims: Vec<usize>,
    probs: Vec<f64>,
}

impl JointTable {
    pub fn new(dims: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        let cells = dims.iter().try_fold(1usize, |acc, &k| acc.checked_mul(k));
        if dims.is_empty() || dims.contains(&0) || cells != Some(probs.len()) {
            return Err(Error::InvalidSynthetic(format!(
                "{} probabilities do not fill dimensions {dims:?}",
                probs.len()
            )));
        }
        if probs.iter().any(|p| !(*p >= 0.0)) {
            return Err(Error::InvalidSynthetic("negative or NaN probability in table".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidSynthetic(format!("probabilities sum to {total}")));
        }
        Ok(Self { dims, probs })
    }

    /// Product of independent marginals.
    pub fn independent(marginals: &[Vec<f64>]) -> Result<Self> {
        let dims: Vec<usize> = marginals.iter().map(Vec::len).collect();
        let mut probs = vec![1.0];
        for m in marginals {
            probs = probs.iter().flat_map(|&p| m.iter().map(move |&q| p * q)).collect();
        }
        Self::new(dims, probs)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn variables(&self) -> usize {
        self.dims.len()
    }

    /// Cell probabilities of the marginal over the variables in `mask`
    /// (bit `i` is variable `i`), in the same row-major layout.
    pub fn marginal(&self, mask: u32) -> Vec<f64> {
        let m = self.variables();
        let size: usize = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| self.dims[i]).product();
        let mut out = vec![0.0; size];
        let mut digits = vec![0usize; m];
        for &p in &self.probs {
            let mut index = 0;
            for i in 0..m {
                if mask & (1 << i) != 0 {
                    index = index * self.dims[i] + digits[i];
                }
            }
            out[index] += p;
            // odometer, last variable fastest
            for i in (0..m).rev() {
                digits[i] += 1;
                if digits[i] < self.dims[i] {
                    break;
                }
                digits[i] = 0;
            }
        }
        out
    }

    /// Entropy in bits of the marginal over `mask`.
    pub fn entropy(&self, mask: u32) -> f64 {
        entropy_of(&self.marginal(mask))
    }

    /// Cumulative distribution over cells, for inverse-CDF sampling.
    pub(crate) fn cdf(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect()
    }

    /// Per-variable values of a flat cell index.
    pub(crate) fn decode(&self, mut cell: usize, out: &mut [u32]) {
        for i in (0..self.variables()).rev() {
            out[i] = (cell % self.dims[i]) as u32;
            cell /= self.dims[i];
        }
    }
}

fn entropy_of(probs: &[f64]) -> f64 {
    let h: f64 = probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * libm::log2(p)).sum();
    h.max(0.0)
}

/// Normalized total correlation of the variables in `mask` under `joint`.
///
/// Zero whenever `sum H - max H` vanishes, which includes every singleton.
pub fn population_w(joint: &JointTable, mask: u32) -> f64 {
    let members: Vec<u32> = (0..joint.variables() as u32).filter(|i| mask & (1 << i) != 0).collect();
    let hs: Vec<f64> = members.iter().map(|&i| joint.entropy(1 << i)).collect();
    w_from_parts(&hs, joint.entropy(mask))
}

fn w_from_parts(marginals: &[f64], joint: f64) -> f64 {
    let sum: f64 = marginals.iter().sum();
    let max = marginals.iter().copied().fold(0.0, f64::max);
    let normalizer = sum - max;
    if normalizer <= 1e-12 {
        return 0.0;
    }
    ((sum - joint) / normalizer).clamp(0.0, 1.0)
}

/// A dependent population extended by independent uniform variables, with
/// the exact score of every subset.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    dependent: JointTable,
    n_independent: usize,
    /// Indexed by bit mask over all variables, dependents first.
    population_w: Vec<f64>,
}

impl SyntheticSpec {
    pub fn new(dependent: JointTable) -> Result<Self> {
        Self::with_independent(dependent, SYNTH_INDEPENDENT)
    }

    pub fn with_independent(dependent: JointTable, n_independent: usize) -> Result<Self> {
        let d = dependent.variables();
        let total = d + n_independent;
        if total > 20 {
            return Err(Error::InvalidSynthetic(format!("{total} variables is too many to tabulate")));
        }
        let dep_mask = (1u32 << d) - 1;
        let dep_entropy: Vec<f64> = (0..1u32 << d).map(|m| dependent.entropy(m)).collect();
        let single_dep: Vec<f64> = (0..d).map(|i| dep_entropy[1 << i]).collect();
        let h_uniform = libm::log2(SYNTH_DOMAIN as f64);

        let mut population_w = vec![0.0; 1 << total];
        for mask in 1u32..(1 << total) {
            let dep = mask & dep_mask;
            let extra = (mask >> d).count_ones() as usize;
            let mut marginals: Vec<f64> =
                (0..d).filter(|i| dep & (1 << i) != 0).map(|i| single_dep[i]).collect();
            marginals.extend(core::iter::repeat_n(h_uniform, extra));
            let joint = dep_entropy[dep as usize] + extra as f64 * h_uniform;
            population_w[mask as usize] = w_from_parts(&marginals, joint);
        }
        Ok(Self { dependent, n_independent, population_w })
    }

    pub fn dependent(&self) -> &JointTable {
        &self.dependent
    }

    pub fn n_independent(&self) -> usize {
        self.n_independent
    }

    pub fn variables(&self) -> usize {
        self.dependent.variables() + self.n_independent
    }

    /// Exact score of a subset given as a bit mask over all variables.
    pub fn population_w(&self, mask: u32) -> f64 {
        self.population_w[mask as usize]
    }

    /// Best subset of at least two variables; ties go to the lexicographically
    /// smallest member tuple.
    pub fn true_maximizer(&self) -> (u32, f64) {
        argmax_masks(self.variables(), |m| self.population_w(m))
    }
}

/// Mask of at least two variables maximizing `score`, ties broken towards the
/// lexicographically smallest ascending member tuple.
pub(crate) fn argmax_masks(m: usize, mut score: impl FnMut(u32) -> f64) -> (u32, f64) {
    let mut best: Option<(u32, f64)> = None;
    for mask in 1u32..(1 << m) {
        if mask.count_ones() < 2 {
            continue;
        }
        let s = score(mask);
        let better = match best {
            None => true,
            Some((b, bs)) => s > bs || (s == bs && lex_less(mask, b)),
        };
        if better {
            best = Some((mask, s));
        }
    }
    best.unwrap_or((0, 0.0))
}

/// Whether the ascending member tuple of `a` is lexicographically smaller
/// than that of `b`.
pub(crate) fn lex_less(a: u32, b: u32) -> bool {
    let (mut a, mut b) = (a, b);
    loop {
        match (a, b) {
            (0, 0) => return false,
            (0, _) => return true,
            (_, 0) => return false,
            _ => {}
        }
        let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
        if la != lb {
            return la < lb;
        }
        a &= a - 1;
        b &= b - 1;
    }
}
