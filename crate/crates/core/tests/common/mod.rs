#![allow(dead_code)]

use corrsets_core::EncodedDataset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random categorical data with planted structure: some columns are
/// independent, some are noisy functions of earlier columns.
pub fn random_dataset(seed: u64, d: usize, n: usize, max_domain: u32) -> EncodedDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut columns: Vec<Vec<u32>> = Vec::with_capacity(d);
    for j in 0..d {
        let domain = rng.gen_range(1..=max_domain);
        let col: Vec<u32> = if j > 0 && rng.gen_bool(0.5) {
            let a = rng.gen_range(0..j);
            let b = rng.gen_range(0..j);
            let noise = rng.gen_range(0.0..0.6);
            (0..n)
                .map(|r| {
                    if rng.gen_bool(noise) {
                        rng.gen_range(0..domain)
                    } else {
                        (columns[a][r] + 2 * columns[b][r]) % domain
                    }
                })
                .collect()
        } else {
            (0..n).map(|_| rng.gen_range(0..domain)).collect()
        };
        columns.push(col);
    }
    EncodedDataset::from_columns(&columns).unwrap()
}

/// Members of a bit mask, ascending.
pub fn members(mask: u32, d: usize) -> Vec<usize> {
    (0..d).filter(|i| mask & (1 << i) != 0).collect()
}
