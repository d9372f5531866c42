use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::entropy;
use crate::Attribute;

/// Grouping of rows into the distinct joint-value cells of an attribute set.
///
/// Cells are numbered densely in order of their first row, so refining the
/// same partition by the same attributes always gives the same numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowPartition {
    cell_of_row: Vec<u32>,
    cell_counts: Vec<u32>,
}

impl RowPartition {
    /// The partition of the empty attribute set: one cell holding every row.
    pub fn single(n: usize) -> Self {
        Self {
            cell_of_row: vec![0; n],
            cell_counts: if n == 0 { Vec::new() } else { vec![n as u32] },
        }
    }

    pub fn from_codes(codes: &[u32]) -> Self {
        Self::single(codes.len()).refine_codes(codes)
    }

    pub fn n(&self) -> usize {
        self.cell_of_row.len()
    }

    pub fn cell_of_row(&self) -> &[u32] {
        &self.cell_of_row
    }

    pub fn cell_counts(&self) -> &[u32] {
        &self.cell_counts
    }

    pub fn cell_count(&self) -> usize {
        self.cell_counts.len()
    }

    /// Joint plug-in entropy of the attributes behind this partition.
    pub fn entropy(&self) -> f64 {
        entropy(&self.cell_counts, self.n() as u64)
    }

    /// Heap bytes held by this partition.
    pub fn byte_size(&self) -> usize {
        (self.cell_of_row.len() + self.cell_counts.len()) * core::mem::size_of::<u32>()
    }

    pub fn refine(&self, attr: &Attribute) -> Self {
        self.refine_with_domain(attr.codes(), attr.domain_size())
    }

    /// Refines by raw codes (any `u32` labels).
    pub fn refine_codes(&self, codes: &[u32]) -> Self {
        let domain = codes.iter().max().map_or(1, |m| m + 1);
        self.refine_with_domain(codes, domain)
    }

    fn refine_with_domain(&self, codes: &[u32], domain: u32) -> Self {
        debug_assert_eq!(codes.len(), self.n());
        let n = self.n();
        let slots = self.cell_count() as u64 * u64::from(domain);
        let mut cell_of_row = Vec::with_capacity(n);
        let mut cell_counts: Vec<u32> = Vec::new();

        let mut assign = |slot: &mut u32| {
            if *slot == u32::MAX {
                *slot = cell_counts.len() as u32;
                cell_counts.push(0);
            }
            cell_counts[*slot as usize] += 1;
            *slot
        };

        if slots <= (4 * n as u64).max(1 << 16) {
            let mut table = vec![u32::MAX; slots as usize];
            for (&parent, &code) in self.cell_of_row.iter().zip(codes) {
                let key = parent as usize * domain as usize + code as usize;
                cell_of_row.push(assign(&mut table[key]));
            }
        } else {
            let mut table: BTreeMap<u64, u32> = BTreeMap::new();
            for (&parent, &code) in self.cell_of_row.iter().zip(codes) {
                let key = u64::from(parent) * u64::from(domain) + u64::from(code);
                cell_of_row.push(assign(table.entry(key).or_insert(u32::MAX)));
            }
        }
        Self { cell_of_row, cell_counts }
    }
}
