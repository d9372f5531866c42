//! CSV input.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use corrsets_core::RawTable;

use crate::error::CliError;

/// A parsed table together with how many rows were skipped for having empty
/// fields.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedTable {
    pub table: RawTable,
    pub dropped_rows: usize,
}

pub fn read_csv_file(path: &Path, has_header: bool) -> Result<LoadedTable, CliError> {
    let file = File::open(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    read_csv(file, has_header, path)
}

/// Reads comma-separated text. Fields are trimmed. Without a header the
/// columns are named `X1..Xd`. Rows with any empty field are dropped.
pub fn read_csv(reader: impl Read, has_header: bool, path: &Path) -> Result<LoadedTable, CliError> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let csv_err = |source| CliError::Csv { path: path.into(), source };

    let mut records = csv.records();
    let mut names: Option<Vec<String>> = None;
    if has_header {
        match records.next() {
            Some(r) => names = Some(r.map_err(csv_err)?.iter().map(String::from).collect()),
            None => return Err(CliError::Empty { path: path.into() }),
        }
    }

    let mut rows = Vec::new();
    let mut dropped_rows = 0;
    for record in records {
        let record = record.map_err(csv_err)?;
        let expected = names.as_ref().map_or(record.len(), Vec::len);
        if record.len() != expected {
            let line = record.position().map_or(0, |p| p.line());
            return Err(CliError::Ragged { path: path.into(), line, expected, found: record.len() });
        }
        if names.is_none() {
            names = Some((1..=record.len()).map(|i| format!("X{i}")).collect());
        }
        if record.iter().any(str::is_empty) {
            dropped_rows += 1;
            continue;
        }
        rows.push(record.iter().map(String::from).collect::<Vec<String>>());
    }
    let names = names.unwrap_or_default();
    if rows.is_empty() {
        return Err(CliError::Empty { path: path.into() });
    }
    Ok(LoadedTable { table: RawTable::from_rows(names, &rows)?, dropped_rows })
}
