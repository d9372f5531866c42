use alloc::vec::Vec;

/// Plug-in Shannon entropy, in bits, of a count vector summing to `n`.
///
/// The result depends only on the multiset of counts: terms are summed in
/// ascending count order, so two partitions with the same cell sizes yield
/// bit-identical entropies regardless of cell numbering.
pub fn entropy(counts: &[u32], n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let mut sorted: Vec<u32> = counts.iter().copied().filter(|&c| c > 1).collect();
    sorted.sort_unstable();
    let weighted: f64 = sorted.iter().map(|&c| f64::from(c) * libm::log2(f64::from(c))).sum();
    let h = libm::log2(n as f64) - weighted / n as f64;
    if h < 0.0 {
        0.0
    } else {
        h
    }
}

/// Plug-in mutual information of two code vectors of equal length.
pub fn mutual_information(x: &[u32], y: &[u32]) -> f64 {
    use super::RowPartition;
    let n = x.len() as u64;
    let px = RowPartition::from_codes(x);
    let py = RowPartition::from_codes(y);
    let joint = px.refine_codes(y);
    let mi = entropy(px.cell_counts(), n) + entropy(py.cell_counts(), n)
        - entropy(joint.cell_counts(), n);
    if mi < 0.0 {
        0.0
    } else {
        mi
    }
}
