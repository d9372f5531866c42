//! Chance-corrected normalized total correlation for categorical data, and
//! search for the top-k most reliably correlated attribute subsets.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of in-memory data; file formats, wall-clock budgets and the
//! command-line front end live in the `corrsets` companion crate.
//!
//! Layout:
//!
//! * [`data`]: categorical encoding, equal-frequency discretization and
//!   per-attribute statistics.
//! * [`estimators`]: plug-in entropies, row partitions, the permutation-model
//!   expected mutual information, its upper bounds and the corrected scores.
//! * [`search`]: best-first branch-and-bound and greedy top-k search.
//! * [`synth`]: synthetic joint distributions, regret experiments and the
//!   correlation-by-chance demonstration.

#![no_std]

extern crate alloc;

pub mod data;
mod error;
pub mod estimators;
pub mod search;
pub mod synth;

pub use data::{Attribute, EncodedDataset, RawTable};
pub use error::Error;
pub use estimators::{score_subset, Estimator, RowPartition, SubsetScore};
pub use search::{branch_and_bound, greedy, SearchConfig, SearchOutcome, SearchStats, TopKStore};

pub type Result<T, E = Error> = core::result::Result<T, E>;
