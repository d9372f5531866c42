use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Dirichlet, Distribution};

use super::{population_w, JointTable, SyntheticSpec, SYNTH_DOMAIN};
use crate::{EncodedDataset, Error, Result};

/// Generator for one unit of work: `stream` separates independent draws made
/// under the same seed, so results do not depend on evaluation order.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn in_band(w: f64, lo: f64, hi: f64) -> bool {
    w >= lo && (w < hi || (hi >= 1.0 && w <= 1.0))
}

/// Draws distributions over `d` ternary variables uniformly from the simplex
/// until one has normalized total correlation in `[lo, hi)`. An upper end of
/// 1 is inclusive.
pub fn sample_joint_in_band(
    d: usize,
    lo: f64,
    hi: f64,
    seed: u64,
    max_attempts: usize,
) -> Result<JointTable> {
    if !(0.0 <= lo && lo < hi && hi <= 1.0) {
        return Err(Error::InvalidBand(lo, hi));
    }
    if !(2..=12).contains(&d) {
        return Err(Error::InvalidSynthetic(alloc::format!("need 2 to 12 dependent variables, got {d}")));
    }
    let cells = SYNTH_DOMAIN.pow(d as u32);
    let dirichlet = Dirichlet::new(&vec![1.0; cells])
        .map_err(|e| Error::InvalidSynthetic(alloc::format!("{e}")))?;
    let mut rng = trial_rng(seed, 0);
    let all = (1u32 << d) - 1;
    let mut histogram = [0usize; 10];
    for _ in 0..max_attempts {
        let mut probs: Vec<f64> = dirichlet.sample(&mut rng);
        // renormalize so the table sum check holds to rounding
        let total: f64 = probs.iter().sum();
        probs.iter_mut().for_each(|p| *p /= total);
        let table = JointTable::new(vec![SYNTH_DOMAIN; d], probs)?;
        let w = population_w(&table, all);
        if in_band(w, lo, hi) {
            return Ok(table);
        }
        histogram[((w * 10.0) as usize).min(9)] += 1;
    }
    Err(Error::BandNotReached { lo, hi, attempts: max_attempts, histogram })
}

/// Samples `n` rows from the population: dependent variables by inverse CDF,
/// independent ones uniformly.
pub fn sample_dataset(spec: &SyntheticSpec, n: usize, rng: &mut impl Rng) -> Result<EncodedDataset> {
    let dep = spec.dependent();
    let d = dep.variables();
    let m = spec.variables();
    let cdf = dep.cdf();
    let last = cdf.len() - 1;
    let mut columns = vec![Vec::with_capacity(n); m];
    let mut cell = vec![0u32; d];
    for _ in 0..n {
        let u: f64 = rng.gen::<f64>() * cdf[last];
        let index = cdf.partition_point(|&c| c <= u).min(last);
        dep.decode(index, &mut cell);
        for (col, &v) in columns.iter_mut().zip(&cell) {
            col.push(v);
        }
        for col in &mut columns[d..] {
            col.push(rng.gen_range(0..SYNTH_DOMAIN as u32));
        }
    }
    EncodedDataset::from_columns(&columns)
}
