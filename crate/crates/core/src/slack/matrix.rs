use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{enumerate_trees, pruefer_encode, Node, Tree};
use crate::protocol::{enumerate_facets, FacetId};

/// Largest `n` for which the full matrix is built (`n = 7` already has
/// 16807 columns).
pub const MAX_MATRIX_N: Node = 7;

/// A dense 0/1 matrix packed 64 entries per word, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitGrid {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitGrid {
    pub fn new(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        BitGrid {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.words[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.words[r * self.stride + c / 64];
        if value {
            *w |= 1u64 << (c % 64);
        } else {
            *w &= !(1u64 << (c % 64));
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn row_count_ones(&self, r: usize) -> u64 {
        self.words[r * self.stride..(r + 1) * self.stride]
            .iter()
            .map(|w| w.count_ones() as u64)
            .sum()
    }

    /// Positions of all 1-entries, row-major.
    pub fn iter_ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |r| {
            (0..self.cols).filter_map(move |c| self.get(r, c).then_some((r, c)))
        })
    }

    /// Merges another grid of identical shape with bitwise or.
    pub fn or_assign(&mut self, other: &BitGrid) {
        assert!(self.rows == other.rows && self.cols == other.cols);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }
}

/// The slack of a tree against one facet row. Cycle rows count the tree
/// edges inside the set: slack is `(|S| - 1)` minus that count. Edge rows
/// have slack 1 exactly when the tree uses the edge.
pub fn slack_value(fa: &FacetId, tree: &Tree) -> u32 {
    match fa {
        FacetId::Cycle(s) => {
            let inside = tree
                .edges()
                .iter()
                .filter(|&&(a, b)| s.contains(a) && s.contains(b))
                .count() as u32;
            // The induced subgraph of a tree is a forest, so inside <= |S| - 1.
            (s.size() - 1) - inside
        }
        FacetId::Nonneg(a, b) => tree.contains_edge(*a, *b) as u32,
    }
}

/// The full slack structure for one `n`: facet rows, tree columns in code
/// order, integer slacks, and the 0/1 support.
#[derive(Clone, Debug)]
pub struct SupportMatrix {
    n: Node,
    facets: Vec<FacetId>,
    trees: Vec<Tree>,
    support: BitGrid,
    slacks: Vec<u8>,
    row_lookup: HashMap<FacetId, usize>,
}

impl SupportMatrix {
    pub fn n(&self) -> Node {
        self.n
    }

    pub fn facets(&self) -> &[FacetId] {
        &self.facets
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn support(&self) -> &BitGrid {
        &self.support
    }

    pub fn entry(&self, r: usize, c: usize) -> bool {
        self.support.get(r, c)
    }

    pub fn slack(&self, r: usize, c: usize) -> u32 {
        self.slacks[r * self.trees.len() + c] as u32
    }

    pub fn row_of(&self, fa: &FacetId) -> Option<usize> {
        self.row_lookup.get(fa).copied()
    }
}

/// Builds the matrix by evaluating every slack. Support is `slack >= 1`.
/// Tree columns follow lexicographic code order; cycle rows follow set
/// enumeration order, with edge rows appended when requested.
pub fn build_support_matrix(n: Node, include_nonneg: bool) -> Result<SupportMatrix> {
    if n < 3 {
        return Err(Error::InvalidNodeSet(format!(
            "no facet rows exist for n = {n}; need n >= 3"
        )));
    }
    if n > MAX_MATRIX_N {
        return Err(Error::CapExceeded {
            what: "build_support_matrix",
            actual: n as u64,
            limit: MAX_MATRIX_N as u64,
        });
    }
    let facets = enumerate_facets(n, include_nonneg)?;
    let trees: Vec<Tree> = enumerate_trees(n)?.collect();

    // Columns are independent; compute them in parallel, then pack.
    let columns: Vec<Vec<u8>> = trees
        .par_iter()
        .map(|t| facets.iter().map(|fa| slack_value(fa, t) as u8).collect())
        .collect();

    let mut support = BitGrid::new(facets.len(), trees.len());
    let mut slacks = vec![0u8; facets.len() * trees.len()];
    for (c, col) in columns.iter().enumerate() {
        for (r, &s) in col.iter().enumerate() {
            slacks[r * trees.len() + c] = s;
            if s >= 1 {
                support.set(r, c, true);
            }
        }
    }

    let row_lookup = facets
        .iter()
        .enumerate()
        .map(|(i, fa)| (fa.clone(), i))
        .collect();

    Ok(SupportMatrix {
        n,
        facets,
        trees,
        support,
        slacks,
        row_lookup,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Binary,
}

const MAGIC: &[u8; 4] = b"STSM";
const FORMAT_VERSION: u8 = 1;

/// Serializes the support. CSV carries a header row of tree codes and one
/// descriptor-prefixed row per facet. The binary layout is the magic
/// `STSM`, a version byte, then `n`, row count, and column count as
/// little-endian u32, then the support bits row-major, least significant
/// bit first, each row padded to a byte boundary.
pub fn export_matrix(m: &SupportMatrix, format: ExportFormat) -> Vec<u8> {
    match format {
        ExportFormat::Csv => {
            let mut out = String::new();
            out.push_str("facet");
            for t in m.trees() {
                out.push(',');
                out.push_str(&pruefer_encode(t).to_string());
            }
            out.push('\n');
            for (r, fa) in m.facets().iter().enumerate() {
                out.push_str(&fa.descriptor());
                for c in 0..m.trees().len() {
                    out.push(',');
                    out.push(if m.entry(r, c) { '1' } else { '0' });
                }
                out.push('\n');
            }
            out.into_bytes()
        }
        ExportFormat::Binary => {
            let rows = m.facets().len();
            let cols = m.trees().len();
            let row_bytes = cols.div_ceil(8);
            let mut out = Vec::with_capacity(17 + rows * row_bytes);
            out.extend_from_slice(MAGIC);
            out.push(FORMAT_VERSION);
            out.extend_from_slice(&m.n().to_le_bytes());
            out.extend_from_slice(&(rows as u32).to_le_bytes());
            out.extend_from_slice(&(cols as u32).to_le_bytes());
            for r in 0..rows {
                let mut row = vec![0u8; row_bytes];
                for c in 0..cols {
                    if m.entry(r, c) {
                        row[c / 8] |= 1 << (c % 8);
                    }
                }
                out.extend_from_slice(&row);
            }
            out
        }
    }
}

/// Parses the binary layout back into `(n, support bits)`.
pub fn import_binary(bytes: &[u8]) -> Result<(Node, BitGrid)> {
    if bytes.len() < 17 {
        return Err(Error::BadMatrixData("truncated header".to_string()));
    }
    if &bytes[0..4] != MAGIC {
        return Err(Error::BadMatrixData("bad magic".to_string()));
    }
    if bytes[4] != FORMAT_VERSION {
        return Err(Error::BadMatrixData(format!(
            "unsupported version {}",
            bytes[4]
        )));
    }
    let word = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap());
    let n = word(5);
    let rows = word(9) as usize;
    let cols = word(13) as usize;
    let row_bytes = cols.div_ceil(8);
    let expected = 17 + rows * row_bytes;
    if bytes.len() != expected {
        return Err(Error::BadMatrixData(format!(
            "expected {expected} bytes for {rows}x{cols}, got {}",
            bytes.len()
        )));
    }
    let mut grid = BitGrid::new(rows, cols);
    for r in 0..rows {
        let base = 17 + r * row_bytes;
        for c in 0..cols {
            if bytes[base + c / 8] >> (c % 8) & 1 == 1 {
                grid.set(r, c, true);
            }
        }
    }
    Ok((n, grid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_cut_sets, f_oracle, induced_components, NodeSet};

    #[test]
    fn slack_on_known_instances() {
        let path = Tree::from_edges(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let star = Tree::from_edges(4, [(1, 2), (1, 3), (1, 4)]).unwrap();
        let s123 = FacetId::Cycle(NodeSet::new(4, [1, 2, 3]).unwrap());
        let s13 = FacetId::Cycle(NodeSet::new(4, [1, 3]).unwrap());
        assert_eq!(slack_value(&s123, &path), 0);
        assert_eq!(slack_value(&s13, &path), 1);
        assert_eq!(slack_value(&FacetId::nonneg(1, 2).unwrap(), &star), 1);
        assert_eq!(slack_value(&FacetId::nonneg(2, 3).unwrap(), &star), 0);
    }

    #[test]
    fn cycle_slack_equals_component_count_minus_one() {
        for n in 3..=5 {
            for t in enumerate_trees(n).unwrap() {
                for s in enumerate_cut_sets(n).unwrap() {
                    let fa = FacetId::Cycle(s.clone());
                    assert_eq!(slack_value(&fa, &t), induced_components(&t, &s) - 1);
                }
            }
        }
    }

    #[test]
    fn three_node_matrix_is_the_identity_pattern() {
        // Row {i,j} has its single 1 at the star centered on the third node,
        // and column k is the code [k].
        let m = build_support_matrix(3, false).unwrap();
        assert_eq!(m.facets().len(), 3);
        assert_eq!(m.trees().len(), 3);
        let complement = [2usize, 1, 0]; // {1,2} -> center 3, {1,3} -> 2, {2,3} -> 1
        for (r, &hot) in complement.iter().enumerate() {
            for c in 0..3 {
                assert_eq!(m.entry(r, c), c == hot, "({r},{c})");
            }
            assert_eq!(m.support().row_count_ones(r), 1);
        }
    }

    #[test]
    fn four_node_dimensions_and_pair_row_sums() {
        let m = build_support_matrix(4, false).unwrap();
        assert_eq!(m.facets().len(), 10);
        assert_eq!(m.trees().len(), 16);
        // Rows for 2-element sets miss exactly the trees containing that
        // edge: n^(n-2) - 2n^(n-3) = 8 of 16.
        for (r, fa) in m.facets().iter().enumerate() {
            if let FacetId::Cycle(s) = fa {
                if s.size() == 2 {
                    assert_eq!(m.support().row_count_ones(r), 8, "row {}", fa.descriptor());
                }
            }
        }
    }

    #[test]
    fn support_matches_the_oracle_pointwise() {
        for n in 3..=5 {
            let m = build_support_matrix(n, true).unwrap();
            for (r, fa) in m.facets().iter().enumerate() {
                for (c, t) in m.trees().iter().enumerate() {
                    let expect = match fa {
                        FacetId::Cycle(s) => f_oracle(s, t),
                        FacetId::Nonneg(a, b) => t.contains_edge(*a, *b),
                    };
                    assert_eq!(m.entry(r, c), expect);
                    assert_eq!(m.entry(r, c), m.slack(r, c) >= 1);
                }
            }
        }
    }

    #[test]
    fn nonneg_rows_extend_the_cycle_rows() {
        let without = build_support_matrix(5, false).unwrap();
        let with = build_support_matrix(5, true).unwrap();
        assert_eq!(with.facets().len() - without.facets().len(), 10);
        assert_eq!(with.row_of(&FacetId::nonneg(1, 2).unwrap()), Some(25));
    }

    #[test]
    fn csv_layout_for_three_nodes() {
        let m = build_support_matrix(3, false).unwrap();
        let csv = String::from_utf8(export_matrix(&m, ExportFormat::Csv)).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "facet,1,2,3");
        assert_eq!(lines[1], "S:{1,2},0,0,1");
        assert_eq!(lines[2], "S:{1,3},0,1,0");
        assert_eq!(lines[3], "S:{2,3},1,0,0");
    }

    #[test]
    fn binary_round_trips() {
        for include_nonneg in [false, true] {
            let m = build_support_matrix(4, include_nonneg).unwrap();
            let bytes = export_matrix(&m, ExportFormat::Binary);
            let (n, grid) = import_binary(&bytes).unwrap();
            assert_eq!(n, 4);
            assert_eq!(&grid, m.support());
        }
    }

    #[test]
    fn binary_rejects_corrupt_data() {
        let m = build_support_matrix(3, false).unwrap();
        let mut bytes = export_matrix(&m, ExportFormat::Binary);
        assert!(import_binary(&bytes[..10]).is_err());
        bytes[0] = b'X';
        assert!(import_binary(&bytes).is_err());
        let mut bytes = export_matrix(&m, ExportFormat::Binary);
        bytes.push(0);
        assert!(import_binary(&bytes).is_err());
        let mut bytes = export_matrix(&m, ExportFormat::Binary);
        bytes[4] = 9;
        assert!(import_binary(&bytes).is_err());
    }

    #[test]
    fn build_caps_are_enforced() {
        assert!(build_support_matrix(2, false).is_err());
        assert!(build_support_matrix(MAX_MATRIX_N + 1, false).is_err());
    }
}
