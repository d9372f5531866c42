//! Chance-correction terms.
//!
//! Each correction is a sum of per-step expected mutual information terms
//! along an ordering of the members, maximized over orderings and divided by
//! the normalizer `sum H - max H`:
//!
//! * exact: permutation-model expectation of each step,
//! * upper: closed-form bound using observed joint domain sizes,
//! * relaxed: the upper bound with joint domains replaced by products of
//!   marginal domain sizes; maximized by sorting domain sizes descending.

use alloc::vec;
use alloc::vec::Vec;

use super::permutation::{expected_mi_with, LogFactorials};
use super::{canonical_order, RowPartition, ORACLE_MAX_MEMBERS};
use crate::{EncodedDataset, Error, Result};

const LN_2: f64 = core::f64::consts::LN_2;

fn check_n(n: u64) -> Result<()> {
    if n < 2 {
        Err(Error::SampleTooSmall(n))
    } else {
        Ok(())
    }
}

/// Upper bound on the permutation-model expected mutual information between
/// variables with `dx` and `dy` observed values:
/// `log2((n + dx*dy - dx - dy) / (n - 1))`.
pub fn m0_upper(dx: u64, dy: u64, n: u64) -> Result<f64> {
    check_n(n)?;
    let dx = dx.max(1) as f64;
    let dy = dy.max(1) as f64;
    // (n + dx dy - dx - dy) / (n - 1) = 1 + (dx - 1)(dy - 1) / (n - 1)
    Ok(libm::log1p((dx - 1.0) * (dy - 1.0) / (n as f64 - 1.0)) / LN_2)
}

/// Relaxed bound `log2((n + P * dnext) / (n - 1))` where `P` is the product of
/// the prefix domain sizes, given as `log2 P`.
///
/// Above 63 bits of product the value is evaluated as
/// `L + log2(1 + n 2^-L) - log2(n - 1)`.
pub fn m0_relaxed(log2_prefix_product: f64, dnext: u64, n: u64) -> Result<f64> {
    check_n(n)?;
    let bits = log2_prefix_product + libm::log2(dnext.max(1) as f64);
    Ok(relaxed_term(bits, n as f64))
}

#[inline]
fn relaxed_term(bits: f64, n: f64) -> f64 {
    if bits > 63.0 {
        bits + libm::log1p(n * libm::exp2(-bits)) / LN_2 - libm::log2(n - 1.0)
    } else {
        // (n + P) / (n - 1) = 1 + (P + 1) / (n - 1)
        libm::log1p((libm::exp2(bits) + 1.0) / (n - 1.0)) / LN_2
    }
}

/// Maximum over orderings of the summed relaxed terms; attained by visiting
/// domain sizes in descending order.
pub fn relaxed_correction_sum(domain_sizes: &[u32], n: u64) -> Result<f64> {
    check_n(n)?;
    let mut sizes: Vec<u32> = domain_sizes.to_vec();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(sorted_relaxed_sum(&sizes, n))
}

/// `sizes` must already be sorted descending.
pub(crate) fn sorted_relaxed_sum(sizes: &[u32], n: u64) -> f64 {
    let n = n as f64;
    let mut prefix_bits = match sizes.first() {
        Some(&d) => libm::log2(f64::from(d.max(1))),
        None => return 0.0,
    };
    let mut sum = 0.0;
    for &d in &sizes[1..] {
        let bits = prefix_bits + libm::log2(f64::from(d.max(1)));
        sum += relaxed_term(bits, n);
        prefix_bits = bits;
    }
    sum
}

/// Relaxed correction term: [`relaxed_correction_sum`] divided by the
/// normalizer. A non-positive normalizer is reported as
/// [`Error::DegenerateNormalizer`]; scoring maps that case to zero.
pub fn correction_relaxed(domain_sizes: &[u32], n: u64, normalizer: f64) -> Result<f64> {
    if domain_sizes.len() < 2 {
        return Err(Error::SubsetTooSmall { min: 2, got: domain_sizes.len() });
    }
    if normalizer <= 0.0 {
        return Err(Error::DegenerateNormalizer);
    }
    Ok(relaxed_correction_sum(domain_sizes, n)? / normalizer)
}

/// Partitions of every sub-mask of `members`, indexed by bit mask.
fn subset_partitions(dataset: &EncodedDataset, members: &[usize]) -> Vec<RowPartition> {
    let m = members.len();
    let mut parts = Vec::with_capacity(1 << m);
    parts.push(RowPartition::single(dataset.n()));
    for mask in 1usize..(1 << m) {
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << top);
        let refined = parts[rest].refine(dataset.attribute(members[top]));
        parts.push(refined);
    }
    parts
}

/// Maximum over orderings of `sum_{i>=2} step(prefix mask, next member)`.
///
/// Each step depends only on the prefix *set*, so the maximum over all `m!`
/// orderings equals the best chain through the subset lattice.
fn best_chain(m: usize, mut step: impl FnMut(usize, usize) -> f64) -> f64 {
    let full = (1usize << m) - 1;
    let mut best = vec![f64::NEG_INFINITY; 1 << m];
    for i in 0..m {
        best[1 << i] = 0.0;
    }
    for mask in 1..=full {
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
    best[full]
}

fn oracle_setup(
    dataset: &EncodedDataset,
    members: &[usize],
    estimator: &'static str,
) -> Result<(Vec<usize>, f64)> {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    if let Some(&bad) = members.iter().find(|&&i| i >= dataset.d()) {
        return Err(Error::AttributeIndex(bad));
    }
    if members.len() < 2 {
        return Err(Error::SubsetTooSmall { min: 2, got: members.len() });
    }
    if members.len() > ORACLE_MAX_MEMBERS {
        return Err(Error::OracleCap { estimator, max: ORACLE_MAX_MEMBERS, got: members.len() });
    }
    check_n(dataset.n() as u64)?;
    // same summation order as subset scoring
    canonical_order(dataset, &mut members);
    let sum: f64 = members.iter().fold(0.0, |acc, &i| acc + dataset.attribute(i).entropy());
    let max = dataset.attribute(members[0]).entropy();
    Ok((members, sum - max))
}

/// Exact permutation-model correction, maximized over orderings. The joint
/// prefix variable's cells are the observed joint value combinations.
pub fn correction_exact(dataset: &EncodedDataset, members: &[usize]) -> Result<f64> {
    let (members, normalizer) = oracle_setup(dataset, members, "exact")?;
    if normalizer <= 0.0 {
        return Err(Error::DegenerateNormalizer);
    }
    let n = dataset.n() as u64;
    let lf = LogFactorials::new(n);
    let parts = subset_partitions(dataset, &members);
    let sum = best_chain(members.len(), |prefix, next| {
        let attr = dataset.attribute(members[next]);
        expected_mi_with(&lf, parts[prefix].cell_counts(), attr.counts(), n)
    });
    Ok(sum / normalizer)
}

/// Upper-bound correction, maximized over orderings, using observed joint
/// domain sizes of each prefix.
pub fn correction_upper(dataset: &EncodedDataset, members: &[usize]) -> Result<f64> {
    let (members, normalizer) = oracle_setup(dataset, members, "upper")?;
    if normalizer <= 0.0 {
        return Err(Error::DegenerateNormalizer);
    }
    let n = dataset.n() as u64;
    let parts = subset_partitions(dataset, &members);
    let sum = best_chain(members.len(), |prefix, next| {
        let dx = parts[prefix].cell_count() as u64;
        let dy = u64::from(dataset.attribute(members[next]).domain_size());
        // n >= 2 was checked above
        m0_upper(dx, dy, n).unwrap_or(0.0)
    });
    Ok(sum / normalizer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m0_upper_values() {
        assert_eq!(m0_upper(1, 7, 100).unwrap(), 0.0);
        assert!((m0_upper(2, 2, 4).unwrap() - 0.41503749927884376).abs() < 1e-12);
        assert!((m0_upper(2, 2, 100).unwrap() - 0.014499569695115169).abs() < 1e-12);
        assert_eq!(m0_upper(2, 2, 1), Err(Error::SampleTooSmall(1)));
    }

    #[test]
    fn m0_relaxed_values() {
        let v = m0_relaxed(libm::log2(3.0), 3, 100).unwrap();
        assert!((v - 0.13882770469731673).abs() < 1e-12);
        let v = m0_relaxed(1.0, 2, 4).unwrap();
        assert!((v - 1.4150374992788437).abs() < 1e-12);
        assert!(v >= m0_upper(2, 2, 4).unwrap());
    }

    #[test]
    fn m0_relaxed_saturates() {
        let v = m0_relaxed(199.0, 2, 1000).unwrap();
        let want = 190.03565913220757;
        assert!(((v - want) / want).abs() < 1e-12);
        // continuity across the switch
        let below = relaxed_term(63.0, 1000.0);
        let above = relaxed_term(63.0 + 1e-12, 1000.0);
        assert!((below - above).abs() < 1e-9);
    }

    #[test]
    fn relaxed_two_ternary() {
        let t = correction_relaxed(&[3, 3], 100, libm::log2(3.0)).unwrap();
        assert!((t - 0.08759052951356912).abs() < 1e-12);
    }

    #[test]
    fn relaxed_degenerate_normalizer() {
        assert_eq!(correction_relaxed(&[3, 3], 100, 0.0), Err(Error::DegenerateNormalizer));
    }

    #[test]
    fn relaxed_vanishes_with_n() {
        let small = relaxed_correction_sum(&[4, 3, 5, 2], 100).unwrap();
        let large = relaxed_correction_sum(&[4, 3, 5, 2], 100_000_000).unwrap();
        assert!(large < small * 1e-5);
        assert!(large < 1e-5);
    }

    #[test]
    fn best_chain_two_members() {
        let v = best_chain(2, |prefix, next| (prefix * 10 + next) as f64);
        // orderings: (0 then 1) -> step(1, 1) = 11; (1 then 0) -> step(2, 0) = 20
        assert_eq!(v, 20.0);
    }

    #[test]
    fn oracle_cap() {
        let cols: Vec<Vec<u32>> = (0..9).map(|i| (0..20).map(|r| (r * (i + 1)) % 3).collect()).collect();
        let ds = EncodedDataset::from_columns(&cols).unwrap();
        let all: Vec<usize> = (0..9).collect();
        assert!(matches!(correction_exact(&ds, &all), Err(Error::OracleCap { .. })));
        assert!(matches!(correction_upper(&ds, &all), Err(Error::OracleCap { .. })));
    }
}
