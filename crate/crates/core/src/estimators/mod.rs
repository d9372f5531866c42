//! Plug-in information quantities and chance-corrected estimators of
//! normalized total correlation. All logarithms are base 2.

pub(crate) mod correction;
mod entropy;
mod partition;
pub(crate) mod permutation;
pub(crate) mod score;

pub use correction::{
    correction_exact, correction_relaxed, correction_upper, m0_relaxed, m0_upper,
    relaxed_correction_sum,
};
pub use entropy::{entropy, mutual_information};
pub use partition::RowPartition;
pub use permutation::{expected_mi_permutation, LogFactorials};
pub use score::{canonical_order, score_subset, Estimator, SubsetScore};

/// Largest subset the ordering-enumerating corrections accept.
pub const ORACLE_MAX_MEMBERS: usize = 8;
