//! Categorical encoding of tabular data.
//!
//! Every attribute is stored as dense integer codes `0..domain_size`, where the
//! domain size is the number of distinct values actually observed. Codes are
//! handed out in first-occurrence order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::estimators::entropy;
use crate::{Error, Result};

/// Text table as read from a file, before any encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTable {
    column_names: Vec<String>,
    columns: Vec<Vec<String>>,
    row_count: usize,
}

impl RawTable {
    pub fn new(column_names: Vec<String>, columns: Vec<Vec<String>>) -> Result<Self> {
        if column_names.len() != columns.len() {
            return Err(Error::ColumnLength {
                column: String::from("<header>"),
                len: column_names.len(),
                expected: columns.len(),
            });
        }
        let row_count = columns.first().map_or(0, Vec::len);
        for (name, col) in column_names.iter().zip(&columns) {
            if col.len() != row_count {
                return Err(Error::ColumnLength {
                    column: name.clone(),
                    len: col.len(),
                    expected: row_count,
                });
            }
        }
        for (i, name) in column_names.iter().enumerate() {
            if column_names[..i].contains(name) {
                return Err(Error::DuplicateColumn(name.clone()));
            }
        }
        Ok(Self { column_names, columns, row_count })
    }

    /// Builds a table from row-major records.
    pub fn from_rows(column_names: Vec<String>, rows: &[Vec<String>]) -> Result<Self> {
        let mut columns = vec![Vec::with_capacity(rows.len()); column_names.len()];
        for row in rows {
            if row.len() != column_names.len() {
                return Err(Error::ColumnLength {
                    column: String::from("<row>"),
                    len: row.len(),
                    expected: column_names.len(),
                });
            }
            for (col, value) in columns.iter_mut().zip(row) {
                col.push(value.clone());
            }
        }
        Self::new(column_names, columns)
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn columns(&self) -> &[Vec<String>] {
        &self.columns
    }

    pub fn row_count(&self) -> usize {
        self.row_count
    }

    /// True when every value of the column parses as a finite number.
    pub fn is_numeric(&self, column: usize) -> bool {
        let col = &self.columns[column];
        !col.is_empty() && col.iter().all(|v| v.trim().parse::<f64>().is_ok_and(f64::is_finite))
    }
}

/// A single categorical attribute with its plug-in statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Attribute {
    name: String,
    codes: Vec<u32>,
    domain_size: u32,
    counts: Vec<u32>,
    entropy: f64,
}

impl Attribute {
    /// Creates an attribute from arbitrary integer labels; labels are relabeled
    /// densely in first-occurrence order.
    pub fn new(name: impl Into<String>, labels: &[u32]) -> Self {
        let mut relabel: BTreeMap<u32, u32> = BTreeMap::new();
        let mut codes = Vec::with_capacity(labels.len());
        let mut counts: Vec<u32> = Vec::new();
        for &label in labels {
            let next = relabel.len() as u32;
            let code = *relabel.entry(label).or_insert(next);
            if code as usize == counts.len() {
                counts.push(0);
            }
            counts[code as usize] += 1;
            codes.push(code);
        }
        let entropy = entropy(&counts, labels.len() as u64);
        Self {
            name: name.into(),
            codes,
            domain_size: counts.len() as u32,
            counts,
            entropy,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn codes(&self) -> &[u32] {
        &self.codes
    }

    /// Number of distinct observed values.
    pub fn domain_size(&self) -> u32 {
        self.domain_size
    }

    /// Occurrences of each code.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Plug-in entropy in bits.
    pub fn entropy(&self) -> f64 {
        self.entropy
    }

    pub fn is_constant(&self) -> bool {
        self.domain_size <= 1
    }
}

/// `n` rows of `d` categorical attributes.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedDataset {
    attributes: Vec<Attribute>,
    n: usize,
}

impl EncodedDataset {
    pub fn new(attributes: Vec<Attribute>) -> Result<Self> {
        let n = attributes.first().map_or(0, |a| a.codes.len());
        for a in &attributes {
            if a.codes.len() != n {
                return Err(Error::ColumnLength {
                    column: a.name.clone(),
                    len: a.codes.len(),
                    expected: n,
                });
            }
        }
        if n < 2 {
            return Err(Error::TooFewRows(n));
        }
        Ok(Self { attributes, n })
    }

    /// Convenience constructor from column-major labels, named `X1..Xd`.
    pub fn from_columns(columns: &[Vec<u32>]) -> Result<Self> {
        let attrs = columns
            .iter()
            .enumerate()
            .map(|(i, c)| Attribute::new(format!("X{}", i + 1), c))
            .collect();
        Self::new(attrs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.attributes.len()
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }

    pub fn attribute(&self, index: usize) -> &Attribute {
        &self.attributes[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a.name == name)
    }

    /// Keeps the given columns, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let mut attrs = Vec::with_capacity(indices.len());
        for &i in indices {
            attrs.push(self.attributes.get(i).ok_or(Error::AttributeIndex(i))?.clone());
        }
        Ok(Self { attributes: attrs, n: self.n })
    }

    /// Drops attributes with a single observed value.
    pub fn without_constant(&self) -> Result<Self> {
        let keep: Vec<usize> = (0..self.d()).filter(|&i| !self.attributes[i].is_constant()).collect();
        self.select(&keep)
    }
}

/// Which raw columns are treated as numeric and binned.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum NumericColumns {
    /// Every column is a categorical token column.
    #[default]
    None,
    /// Columns whose values all parse as finite numbers.
    Auto,
    /// Exactly the named columns.
    Named(Vec<String>),
}

/// Equal-frequency discretization.
///
/// Values are ranked with a stable sort and rank `r` goes to bin
/// `floor(r * bins / n)`, so bin sizes differ by at most one. Equal values are
/// always kept together: every value takes the bin of its lowest rank. Unused
/// bins are removed and codes renumbered from 0 in increasing value order.
pub fn discretize_equal_frequency(values: &[f64], bins: usize) -> Result<Vec<u32>> {
    if values.is_empty() || bins == 0 {
        return Err(Error::EmptyDiscretization);
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFinite { column: String::new(), value: v.to_string() });
    }
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));

    let mut raw_bin = vec![0usize; n];
    let mut run_bin = 0usize;
    for (rank, &row) in order.iter().enumerate() {
        if rank == 0 || values[row] != values[order[rank - 1]] {
            run_bin = rank * bins / n;
        }
        raw_bin[row] = run_bin;
    }

    let mut compact = vec![u32::MAX; bins];
    let mut next = 0u32;
    for &row in &order {
        let b = raw_bin[row];
        if compact[b] == u32::MAX {
            compact[b] = next;
            next += 1;
        }
    }
    Ok(raw_bin.into_iter().map(|b| compact[b]).collect())
}

/// Encodes a raw table into integer codes.
pub fn encode(table: &RawTable, numeric: &NumericColumns, bins: usize) -> Result<EncodedDataset> {
    if table.row_count() < 2 {
        return Err(Error::TooFewRows(table.row_count()));
    }
    let mut attrs = Vec::with_capacity(table.columns.len());
    for (i, (name, col)) in table.column_names.iter().zip(&table.columns).enumerate() {
        let binned = match numeric {
            NumericColumns::None => false,
            NumericColumns::Auto => table.is_numeric(i),
            NumericColumns::Named(names) => names.iter().any(|n| n == name),
        };
        let attr = if binned {
            let mut values = Vec::with_capacity(col.len());
            for raw in col {
                match raw.trim().parse::<f64>() {
                    Ok(v) if v.is_finite() => values.push(v),
                    _ => {
                        return Err(Error::NonFinite { column: name.clone(), value: raw.clone() });
                    }
                }
            }
            Attribute::new(name.clone(), &discretize_equal_frequency(&values, bins)?)
        } else {
            let mut dict: BTreeMap<&str, u32> = BTreeMap::new();
            let labels: Vec<u32> = col
                .iter()
                .map(|v| {
                    let next = dict.len() as u32;
                    *dict.entry(v.as_str()).or_insert(next)
                })
                .collect();
            Attribute::new(name.clone(), &labels)
        };
        attrs.push(attr);
    }
    EncodedDataset::new(attrs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| String::from(*s)).collect()
    }

    fn group_sizes(codes: &[u32]) -> Vec<usize> {
        let k = codes.iter().max().map_or(0, |m| *m as usize + 1);
        let mut sizes = vec![0; k];
        for &c in codes {
            sizes[c as usize] += 1;
        }
        sizes
    }

    #[test]
    fn equal_frequency_exact_division() {
        let values: Vec<f64> = (1..=10).map(f64::from).collect();
        let codes = discretize_equal_frequency(&values, 5).unwrap();
        assert_eq!(codes, vec![0, 0, 1, 1, 2, 2, 3, 3, 4, 4]);
    }

    #[test]
    fn equal_frequency_constant_is_single_bin() {
        let codes = discretize_equal_frequency(&[7.0; 4], 5).unwrap();
        assert_eq!(codes, vec![0; 4]);
    }

    #[test]
    fn equal_frequency_uneven_split() {
        let codes = discretize_equal_frequency(&[1.0, 2.0, 3.0], 2).unwrap();
        assert_eq!(group_sizes(&codes), vec![2, 1]);
        assert_eq!(codes, vec![0, 0, 1]);
    }

    #[test]
    fn equal_frequency_ties_go_to_lower_bin() {
        // ranks 0..6 cut in pairs; the run of 2.0 starts at rank 1 (bin 0), so bin 1 is empty
        let codes = discretize_equal_frequency(&[1.0, 2.0, 2.0, 2.0, 3.0, 4.0], 3).unwrap();
        assert_eq!(codes, vec![0, 0, 0, 0, 1, 1]);
    }

    #[test]
    fn equal_frequency_rejects_non_finite() {
        assert!(discretize_equal_frequency(&[1.0, f64::NAN], 2).is_err());
        assert!(discretize_equal_frequency(&[], 2).is_err());
        assert!(discretize_equal_frequency(&[1.0], 0).is_err());
    }

    #[test]
    fn text_codes_in_first_occurrence_order() {
        let table = RawTable::new(strings(&["c"]), vec![strings(&["a", "b", "a"])]).unwrap();
        let ds = encode(&table, &NumericColumns::None, 5).unwrap();
        let a = ds.attribute(0);
        assert_eq!(a.codes(), &[0, 1, 0]);
        assert_eq!(a.domain_size(), 2);
    }

    #[test]
    fn numerals_are_tokens_unless_binned() {
        let col = strings(&["1", "2", "3", "4", "5", "6", "7", "8", "9", "10"]);
        let table = RawTable::new(strings(&["v"]), vec![col]).unwrap();
        let tokens = encode(&table, &NumericColumns::None, 5).unwrap();
        assert_eq!(tokens.attribute(0).domain_size(), 10);
        let binned = encode(&table, &NumericColumns::Auto, 5).unwrap();
        assert_eq!(binned.attribute(0).domain_size(), 5);
        let named = encode(&table, &NumericColumns::Named(strings(&["v"])), 2).unwrap();
        assert_eq!(named.attribute(0).domain_size(), 2);
    }

    #[test]
    fn encode_requires_two_rows() {
        let table = RawTable::new(strings(&["a"]), vec![strings(&["x"])]).unwrap();
        assert_eq!(encode(&table, &NumericColumns::None, 5), Err(Error::TooFewRows(1)));
    }

    #[test]
    fn raw_table_rejects_duplicates_and_ragged_columns() {
        assert!(matches!(
            RawTable::new(strings(&["a", "a"]), vec![strings(&["1"]), strings(&["2"])]),
            Err(Error::DuplicateColumn(_))
        ));
        assert!(matches!(
            RawTable::new(strings(&["a", "b"]), vec![strings(&["1"]), strings(&["2", "3"])]),
            Err(Error::ColumnLength { .. })
        ));
    }

    #[test]
    fn attribute_statistics() {
        let a = Attribute::new("x", &[5, 9, 5, 9]);
        assert_eq!(a.codes(), &[0, 1, 0, 1]);
        assert_eq!(a.counts(), &[2, 2]);
        assert_eq!(a.entropy(), 1.0);
        assert!(Attribute::new("c", &[3, 3, 3]).is_constant());
    }

    #[test]
    fn without_constant_drops_single_valued() {
        let ds = EncodedDataset::from_columns(&[vec![0, 1, 0], vec![4, 4, 4]]).unwrap();
        let kept = ds.without_constant().unwrap();
        assert_eq!(kept.d(), 1);
        assert_eq!(kept.attribute(0).name(), "X1");
    }
}
