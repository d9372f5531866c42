//! Expected plug-in mutual information under the permutation model, i.e. the
//! mean of `I(X; Y_sigma)` over all row permutations `sigma` with both
//! marginals held fixed.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Table of `ln k!` for `k = 0..=n`.
#[derive(Debug, Clone)]
pub struct LogFactorials {
    table: Vec<f64>,
}

impl LogFactorials {
    pub fn new(n: u64) -> Self {
        let table = (0..=n).map(|k| libm::lgamma(k as f64 + 1.0)).collect();
        Self { table }
    }

    pub fn max(&self) -> u64 {
        self.table.len() as u64 - 1
    }

    #[inline]
    pub fn ln_factorial(&self, k: u64) -> f64 {
        self.table[k as usize]
    }
}

/// Sorted distinct positive values with their multiplicities.
fn grouped(counts: &[u32]) -> Vec<(u64, u64)> {
    let mut sorted: Vec<u32> = counts.iter().copied().filter(|&c| c > 0).collect();
    sorted.sort_unstable();
    let mut out: Vec<(u64, u64)> = Vec::new();
    for c in sorted {
        match out.last_mut() {
            Some((v, m)) if *v == u64::from(c) => *m += 1,
            _ => out.push((u64::from(c), 1)),
        }
    }
    out
}

/// `E[I(X;Y)]` in bits for row marginals `a`, column marginals `b` and `n`
/// rows. Each cell's hypergeometric pmf is anchored at its mode in log space
/// and extended in both directions by the ratio recurrence, which avoids
/// underflow at either tail.
pub fn expected_mi_permutation(a: &[u32], b: &[u32], n: u64) -> Result<f64> {
    let sa: u64 = a.iter().map(|&c| u64::from(c)).sum();
    let sb: u64 = b.iter().map(|&c| u64::from(c)).sum();
    if sa != n || sb != n || n == 0 {
        return Err(Error::MarginalMismatch { rows: sa, cols: sb, n });
    }
    let lf = LogFactorials::new(n);
    Ok(expected_mi_with(&lf, a, b, n))
}

/// As [`expected_mi_permutation`] with a caller-provided factorial table and
/// without marginal validation.
pub(crate) fn expected_mi_with(lf: &LogFactorials, a: &[u32], b: &[u32], n: u64) -> f64 {
    debug_assert!(lf.max() >= n);
    let ga = grouped(a);
    let gb = grouped(b);
    let mut total = 0.0;
    for &(ai, ma) in &ga {
        for &(bj, mb) in &gb {
            total += (ma * mb) as f64 * cell_expectation(lf, ai, bj, n);
        }
    }
    let emi = total / n as f64;
    if emi < 0.0 {
        0.0
    } else {
        emi
    }
}

/// `sum_c c * log2(n c / (a b)) * P(c)` for one contingency cell.
fn cell_expectation(lf: &LogFactorials, a: u64, b: u64, n: u64) -> f64 {
    let floor = (a + b).saturating_sub(n);
    let lo = floor.max(1);
    let hi = a.min(b);
    if lo > hi {
        return 0.0;
    }
    let log_nab = libm::log2(n as f64) - libm::log2(a as f64) - libm::log2(b as f64);
    let term = |c: u64| c as f64 * (libm::log2(c as f64) + log_nab);

    let ln_const = lf.ln_factorial(a) + lf.ln_factorial(b) + lf.ln_factorial(n - a)
        + lf.ln_factorial(n - b)
        - lf.ln_factorial(n);
    let pmf = |c: u64| {
        libm::exp(
            ln_const
                - lf.ln_factorial(c)
                - lf.ln_factorial(a - c)
                - lf.ln_factorial(b - c)
                - lf.ln_factorial(n + c - a - b),
        )
    };

    let mode = ((u128::from(a + 1) * u128::from(b + 1) / u128::from(n + 2)) as u64).clamp(lo, hi);
    let p_mode = pmf(mode);
    let mut sum = term(mode) * p_mode;

    let mut p = p_mode;
    for c in mode..hi {
        // P(c+1) / P(c)
        p *= ((a - c) as f64 * (b - c) as f64) / ((c + 1) as f64 * (n + c + 1 - a - b) as f64);
        if p == 0.0 {
            break;
        }
        sum += term(c + 1) * p;
    }

    let mut p = p_mode;
    for c in (lo + 1..=mode).rev() {
        // P(c-1) / P(c)
        p *= (c as f64 * (n + c - a - b) as f64) / ((a - c + 1) as f64 * (b - c + 1) as f64);
        if p == 0.0 {
            break;
        }
        sum += term(c - 1) * p;
    }
    sum
}
