use alloc::vec::Vec;

use rand::Rng;

use super::sampling::trial_rng;
use crate::estimators::{m0_relaxed, RowPartition};
use crate::{EncodedDataset, Error, Result};

/// Chain estimates for the first `cardinality` variables of an independent
/// sample.
#[derive(Debug, Clone, PartialEq)]
pub struct ChancePoint {
    pub cardinality: usize,
    /// Plug-in total correlation in bits: the sum of plug-in chain terms.
    pub plugin: f64,
    /// Plug-in total minus the relaxed expected-chance term of each step.
    pub corrected: f64,
    /// `plugin` divided by the normalizer.
    pub plugin_normalized: f64,
    /// `corrected` divided by the normalizer.
    pub corrected_normalized: f64,
}

/// Samples `d` independent uniform variables with `domain` values each and
/// reports, for every prefix `X1..Xk` with `k >= 2`, the plug-in and
/// chance-corrected total correlation. The population value is 0 for every
/// prefix.
pub fn chance_demo(d: usize, domain: u32, n: usize, seed: u64) -> Result<Vec<ChancePoint>> {
    if d < 2 {
        return Err(Error::TooFewAttributes(d));
    }
    if domain < 1 {
        return Err(Error::InvalidSynthetic("domain must be at least 1".into()));
    }
    let mut rng = trial_rng(seed, 0);
    let columns: Vec<Vec<u32>> =
        (0..d).map(|_| (0..n).map(|_| rng.gen_range(0..domain)).collect()).collect();
    let dataset = EncodedDataset::from_columns(&columns)?;

    let mut points = Vec::with_capacity(d - 1);
    let first = dataset.attribute(0);
    let mut joint = RowPartition::single(n).refine(first);
    let mut entropy_sum = first.entropy();
    let mut entropy_max = first.entropy();
    let mut log2_prefix = libm::log2(f64::from(first.domain_size().max(1)));
    let mut chance = 0.0;
    for k in 1..d {
        let attr = dataset.attribute(k);
        chance += m0_relaxed(log2_prefix, u64::from(attr.domain_size()), n as u64)?;
        log2_prefix += libm::log2(f64::from(attr.domain_size().max(1)));
        joint = joint.refine(attr);
        entropy_sum += attr.entropy();
        entropy_max = entropy_max.max(attr.entropy());

        let plugin = (entropy_sum - joint.entropy()).max(0.0);
        let corrected = plugin - chance;
        let normalizer = entropy_sum - entropy_max;
        let (plugin_normalized, corrected_normalized) =
            if normalizer > 0.0 { (plugin / normalizer, corrected / normalizer) } else { (0.0, 0.0) };
        points.push(ChancePoint { cardinality: k + 1, plugin, corrected, plugin_normalized, corrected_normalized });
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plugin_grows_and_correction_removes_it() {
        let points = chance_demo(10, 4, 1000, 0).unwrap();
        assert_eq!(points.len(), 9);
        assert_eq!(points[0].cardinality, 2);
        assert!(points[8].plugin > points[1].plugin);
        assert!(points.iter().all(|p| p.plugin > 0.0));
        for p in &points {
            assert!(p.corrected <= p.plugin);
            assert!(p.corrected_normalized <= 0.05);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(chance_demo(5, 3, 200, 1).unwrap(), chance_demo(5, 3, 200, 1).unwrap());
        assert_ne!(chance_demo(5, 3, 200, 1).unwrap(), chance_demo(5, 3, 200, 2).unwrap());
    }
}
