use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dataset has {0} rows; at least 2 are required (correction terms divide by n-1)")]
    TooFewRows(usize),
    #[error("column {column} has {len} values, expected {expected}")]
    ColumnLength { column: String, len: usize, expected: usize },
    #[error("duplicate column name {0:?}")]
    DuplicateColumn(String),
    #[error("column {column}: value {value:?} is not a finite number")]
    NonFinite { column: String, value: String },
    #[error("discretization needs at least one value and one bin")]
    EmptyDiscretization,
    #[error("marginal counts sum to {rows} and {cols}, expected {n}")]
    MarginalMismatch { rows: u64, cols: u64, n: u64 },
    #[error("sample size {0} is too small; need n >= 2")]
    SampleTooSmall(u64),
    #[error("normalizer is zero: at most one member has non-zero entropy")]
    DegenerateNormalizer,
    #[error("attribute index {0} out of range")]
    AttributeIndex(usize),
    #[error("subset must contain at least {min} distinct attributes, got {got}")]
    SubsetTooSmall { min: usize, got: usize },
    #[error("{estimator} correction enumerates orderings and is limited to {max} attributes, got {got}")]
    OracleCap { estimator: &'static str, max: usize, got: usize },
    #[error("k must be at least 1")]
    InvalidK,
    #[error("alpha must lie in (0, 1], got {0}")]
    InvalidAlpha(f64),
    #[error("search needs at least 2 attributes, got {0}")]
    TooFewAttributes(usize),
    #[error("band [{0}, {1}) is not a valid sub-interval of [0, 1]")]
    InvalidBand(f64, f64),
    #[error("no distribution with w in [{lo}, {hi}) after {attempts} draws (achieved w histogram in tenths: {histogram:?})")]
    BandNotReached { lo: f64, hi: f64, attempts: usize, histogram: [usize; 10] },
    #[error("invalid synthetic setup: {0}")]
    InvalidSynthetic(String),
}
