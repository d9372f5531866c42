use std::path::PathBuf;

/// Failures of the file-facing layer. All of them are data errors from the
/// command line's point of view.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{}, line {line}: expected {expected} fields, found {found}", path.display())]
    Ragged { path: PathBuf, line: u64, expected: usize, found: usize },
    #[error("{}: no data rows", path.display())]
    Empty { path: PathBuf },
    #[error("unknown attribute {name:?}; available: {}", candidates.join(", "))]
    UnknownAttribute { name: String, candidates: Vec<String> },
    #[error("could not write JSON report: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] corrsets_core::Error),
}
