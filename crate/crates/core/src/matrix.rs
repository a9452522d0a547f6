//! Exponent matrices, sparse binary matrices and the operations that connect
//! them: circulant expansion and the two masking operators.
//!
//! An exponent matrix describes an `m x n` array of `P x P` blocks. A finite
//! entry `e` stands for the identity with its rows cyclically shifted right by
//! `e`, and [`INF`] (`None`) stands for the all-zero block.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

/// An exponent matrix entry. `None` is the zero block.
pub type Entry = Option<u32>;

/// The zero-block symbol.
pub const INF: Entry = None;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentMatrix {
    rows: usize,
    cols: usize,
    lift: u32,
    entries: Vec<Entry>,
}

impl ExponentMatrix {
    /// Builds a matrix from row-major entries, validating every finite shift
    /// against the lift size.
    pub fn new(rows: usize, cols: usize, lift: u32, entries: Vec<Entry>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimensions(format!(
                "exponent matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if lift == 0 {
            return Err(Error::InvalidDimensions("lift size must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries", rows * cols),
                got: format!("{} entries", entries.len()),
            });
        }
        for (k, e) in entries.iter().enumerate() {
            if let Some(v) = *e {
                if v >= lift {
                    return Err(Error::ExponentOutOfRange {
                        row: k / cols,
                        col: k % cols,
                        value: v as i64,
                        max: lift - 1,
                    });
                }
            }
        }
        Ok(Self {
            rows,
            cols,
            lift,
            entries,
        })
    }

    /// Builds a matrix from rows of signed integers where `-1` is the zero block.
    pub fn from_signed_rows(lift: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(m * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::ShapeMismatch {
                    expected: format!("{n} columns"),
                    got: format!("{} columns in row {i}", row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                entries.push(match v {
                    -1 => INF,
                    v if v >= 0 && v < lift as i64 => Some(v as u32),
                    v => {
                        return Err(Error::ExponentOutOfRange {
                            row: i,
                            col: j,
                            value: v,
                            max: lift.saturating_sub(1),
                        })
                    }
                });
            }
        }
        Self::new(m, n, lift, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn lift(&self) -> u32 {
        self.lift
    }

    pub fn get(&self, row: usize, col: usize) -> Entry {
        self.entries[row * self.cols + col]
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Same entries interpreted with a different lift size.
    pub fn with_lift(&self, lift: u32) -> Result<Self> {
        Self::new(self.rows, self.cols, lift, self.entries.clone())
    }

    /// Positions of finite entries in row-major order.
    pub fn finite_positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_some())
            .map(move |(k, _)| (k / self.cols, k % self.cols))
    }

    pub fn finite_count(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }

    /// Entries as signed integers, `-1` for the zero block.
    pub fn to_signed_rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.cols)
            .map(|r| r.iter().map(|e| e.map_or(-1, i64::from)).collect())
            .collect()
    }

    /// Recovers the exponent matrix of a binary matrix made of `P x P`
    /// circulant permutation or zero blocks. Any other block (including sums
    /// of distinct permutations) is rejected.
    pub fn from_binary(h: &SparseBinaryMatrix, lift: u32) -> Result<Self> {
        let p = lift as usize;
        let (m, n) = block_shape(h, lift)?;
        let mut entries = vec![INF; m * n];
        let mut seen = vec![0usize; m * n];
        for r in 0..h.rows() {
            for &c in h.row(r) {
                let (bi, bj) = (r / p, c / p);
                let shift = ((c % p + p - r % p) % p) as u32;
                let slot = &mut entries[bi * n + bj];
                match *slot {
                    None if seen[bi * n + bj] == 0 => *slot = Some(shift),
                    Some(s) if s == shift => {}
                    _ => {
                        return Err(Error::NotCirculantPermutation {
                            block_row: bi,
                            block_col: bj,
                        })
                    }
                }
                seen[bi * n + bj] += 1;
            }
        }
        for (k, &count) in seen.iter().enumerate() {
            if count != 0 && count != p {
                return Err(Error::NotCirculantPermutation {
                    block_row: k / n,
                    block_col: k % n,
                });
            }
        }
        Self::new(m, n, lift, entries)
    }
}

impl fmt::Debug for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExponentMatrix {}x{} P={}", self.rows, self.cols, self.lift)?;
        for row in self.entries.chunks(self.cols) {
            let cells: Vec<String> = row
                .iter()
                .map(|e| e.map_or_else(|| "-".to_string(), |v| v.to_string()))
                .collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A binary `m x n` matrix used to select blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl BinaryMask {
    pub fn new(rows: usize, cols: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{} cells", rows * cols),
                got: format!("{} cells", bits.len()),
            });
        }
        Ok(Self { rows, cols, bits })
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        let mut bits = Vec::with_capacity(m * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::ShapeMismatch {
                    expected: format!("{n} columns"),
                    got: format!("{} columns in row {i}", row.len()),
                });
            }
            for &b in row {
                match b {
                    0 => bits.push(false),
                    1 => bits.push(true),
                    _ => {
                        return Err(Error::InvalidArgument(format!(
                            "mask entries must be 0 or 1, found {b}"
                        )))
                    }
                }
            }
        }
        Self::new(m, n, bits)
    }

    pub fn filled(rows: usize, cols: usize, value: bool) -> Self {
        Self {
            rows,
            cols,
            bits: vec![value; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let bits = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, bits }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.cols + col]
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn complement(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.bits
            .chunks(self.cols.max(1))
            .map(|r| r.iter().map(|&b| b as u8).collect())
            .collect()
    }
}

impl fmt::Debug for BinaryMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMask {}x{}", self.rows, self.cols)?;
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(u8::to_string).collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Sparse binary matrix with sorted adjacency in both directions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseBinaryMatrix {
    rows: usize,
    cols: usize,
    row_adj: Vec<Vec<usize>>,
    col_adj: Vec<Vec<usize>>,
}

impl SparseBinaryMatrix {
    pub fn empty(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            row_adj: vec![Vec::new(); rows],
            col_adj: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from one-positions; out-of-range and duplicate
    /// positions are rejected.
    pub fn from_positions(
        rows: usize,
        cols: usize,
        positions: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut row_adj = vec![Vec::new(); rows];
        for (r, c) in positions {
            if r >= rows || c >= cols {
                return Err(Error::PositionOutOfRange {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            row_adj[r].push(c);
        }
        for (r, list) in row_adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicatePosition { row: r, col: w[0] });
            }
        }
        Ok(Self::from_sorted_rows(rows, cols, row_adj))
    }

    fn from_sorted_rows(rows: usize, cols: usize, row_adj: Vec<Vec<usize>>) -> Self {
        let mut col_adj = vec![Vec::new(); cols];
        for (r, list) in row_adj.iter().enumerate() {
            for &c in list {
                col_adj[c].push(r);
            }
        }
        Self {
            rows,
            cols,
            row_adj,
            col_adj,
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_sorted_rows(size, size, (0..size).map(|i| vec![i]).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Sorted column indices of the ones in row `r`.
    pub fn row(&self, r: usize) -> &[usize] {
        &self.row_adj[r]
    }

    /// Sorted row indices of the ones in column `c`.
    pub fn col(&self, c: usize) -> &[usize] {
        &self.col_adj[c]
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        self.row_adj[r].binary_search(&c).is_ok()
    }

    pub fn nnz(&self) -> usize {
        self.row_adj.iter().map(Vec::len).sum()
    }

    /// All one-positions in row-major order.
    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.row_adj
            .iter()
            .enumerate()
            .flat_map(|(r, list)| list.iter().map(move |&c| (r, c)))
    }

    /// `H * word` over GF(2) is zero.
    pub fn is_codeword(&self, word: &[u8]) -> bool {
        word.len() == self.cols
            && self
                .row_adj
                .iter()
                .all(|list| list.iter().fold(0u8, |acc, &c| acc ^ (word[c] & 1)) == 0)
    }
}

impl fmt::Debug for SparseBinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SparseBinaryMatrix {}x{} nnz={}",
            self.rows,
            self.cols,
            self.nnz()
        )
    }
}

fn block_shape(h: &SparseBinaryMatrix, lift: u32) -> Result<(usize, usize)> {
    let p = lift as usize;
    if p == 0 || !h.rows().is_multiple_of(p) || !h.cols().is_multiple_of(p) {
        return Err(Error::InvalidDimensions(format!(
            "{}x{} matrix is not an array of {lift}x{lift} blocks",
            h.rows(),
            h.cols()
        )));
    }
    Ok((h.rows() / p, h.cols() / p))
}

/// Replaces every entry by its `P x P` circulant permutation or zero block.
pub fn expand(e: &ExponentMatrix) -> SparseBinaryMatrix {
    let p = e.lift() as usize;
    let mut row_adj = vec![Vec::new(); e.rows() * p];
    for bi in 0..e.rows() {
        for r in 0..p {
            let list = &mut row_adj[bi * p + r];
            for bj in 0..e.cols() {
                if let Some(shift) = e.get(bi, bj) {
                    list.push(bj * p + (r + shift as usize) % p);
                }
            }
        }
    }
    SparseBinaryMatrix::from_sorted_rows(e.rows() * p, e.cols() * p, row_adj)
}

/// Keeps entries where the mask is 1 and replaces the rest by [`INF`].
pub fn mask_exponent(e: &ExponentMatrix, mask: &BinaryMask) -> Result<ExponentMatrix> {
    if (mask.rows(), mask.cols()) != (e.rows(), e.cols()) {
        return Err(Error::ShapeMismatch {
            expected: format!("{}x{} mask", e.rows(), e.cols()),
            got: format!("{}x{} mask", mask.rows(), mask.cols()),
        });
    }
    let entries = e
        .entries()
        .iter()
        .zip(&mask.bits)
        .map(|(&x, &keep)| if keep { x } else { INF })
        .collect();
    Ok(ExponentMatrix {
        entries,
        ..e.clone()
    })
}

/// Keeps the ones of `h` lying in `P x P` blocks selected by the mask.
pub fn mask_binary(
    h: &SparseBinaryMatrix,
    lift: u32,
    mask: &BinaryMask,
) -> Result<SparseBinaryMatrix> {
    let (m, n) = block_shape(h, lift)?;
    if (mask.rows(), mask.cols()) != (m, n) {
        return Err(Error::ShapeMismatch {
            expected: format!("{m}x{n} mask"),
            got: format!("{}x{} mask", mask.rows(), mask.cols()),
        });
    }
    let p = lift as usize;
    let row_adj = (0..h.rows())
        .map(|r| {
            h.row(r)
                .iter()
                .copied()
                .filter(|&c| mask.get(r / p, c / p))
                .collect()
        })
        .collect();
    Ok(SparseBinaryMatrix::from_sorted_rows(h.rows(), h.cols(), row_adj))
}

/// Row and column weight distribution plus the designed rate `1 - rows/cols`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeProfile {
    pub rows: usize,
    pub cols: usize,
    pub column_weights: BTreeMap<usize, usize>,
    pub row_weights: BTreeMap<usize, usize>,
    #[serde(serialize_with = "serialize_rate")]
    pub designed_rate: Option<Ratio<i64>>,
}

fn serialize_rate<S: serde::Serializer>(
    rate: &Option<Ratio<i64>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match rate {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

impl CodeProfile {
    /// `(J, L)` when every column has weight `J` and every row weight `L`.
    pub fn regular_weights(&self) -> Option<(usize, usize)> {
        match (self.column_weights.len(), self.row_weights.len()) {
            (1, 1) => Some((
                *self.column_weights.keys().next()?,
                *self.row_weights.keys().next()?,
            )),
            _ => None,
        }
    }

    pub fn designed_rate_f64(&self) -> Option<f64> {
        self.designed_rate
            .map(|r| *r.numer() as f64 / *r.denom() as f64)
    }
}

pub fn profile(h: &SparseBinaryMatrix) -> CodeProfile {
    let mut column_weights = BTreeMap::new();
    for c in 0..h.cols() {
        *column_weights.entry(h.col(c).len()).or_insert(0) += 1;
    }
    let mut row_weights = BTreeMap::new();
    for r in 0..h.rows() {
        *row_weights.entry(h.row(r).len()).or_insert(0) += 1;
    }
    let designed_rate = (h.cols() > 0)
        .then(|| Ratio::new(h.cols() as i64 - h.rows() as i64, h.cols() as i64));
    CodeProfile {
        rows: h.rows(),
        cols: h.cols(),
        column_weights,
        row_weights,
        designed_rate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{example1_base, example1_mask0};
    use proptest::prelude::*;

    fn single(e: u32, p: u32) -> ExponentMatrix {
        ExponentMatrix::new(1, 1, p, vec![Some(e)]).unwrap()
    }

    #[test]
    fn zero_shift_is_identity() {
        let h = expand(&single(0, 3));
        assert_eq!(h.positions().collect::<Vec<_>>(), vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn unit_shift_moves_right() {
        let h = expand(&single(1, 3));
        let mut got: Vec<_> = h.positions().collect();
        got.sort();
        assert_eq!(got, vec![(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn example1_base_expands_regular() {
        let h = expand(&example1_base(7));
        assert_eq!((h.rows(), h.cols()), (21, 28));
        assert!((0..28).all(|c| h.col(c).len() == 3));
        assert!((0..21).all(|r| h.row(r).len() == 4));
    }

    #[test]
    fn rejects_out_of_range_shift() {
        let err = ExponentMatrix::new(1, 2, 4, vec![Some(1), Some(4)]).unwrap_err();
        assert!(matches!(err, Error::ExponentOutOfRange { col: 1, .. }));
        assert!(ExponentMatrix::from_signed_rows(4, &[vec![-2]]).is_err());
    }

    #[test]
    fn rejects_duplicate_positions() {
        let err = SparseBinaryMatrix::from_positions(2, 2, [(0, 1), (0, 1)]).unwrap_err();
        assert_eq!(err, Error::DuplicatePosition { row: 0, col: 1 });
        assert!(SparseBinaryMatrix::from_positions(2, 2, [(2, 0)]).is_err());
    }

    #[test]
    fn mask_exponent_operator() {
        let e = ExponentMatrix::new(1, 3, 7, vec![Some(5), Some(5), INF]).unwrap();
        let m = BinaryMask::from_rows(&[vec![1, 0, 1]]).unwrap();
        let out = mask_exponent(&e, &m).unwrap();
        assert_eq!(out.get(0, 0), Some(5));
        assert_eq!(out.get(0, 1), INF);
        assert_eq!(out.get(0, 2), INF);
        assert_eq!(out.lift(), 7);

        let wrong = BinaryMask::filled(2, 3, true);
        assert!(matches!(mask_exponent(&e, &wrong), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn mask_binary_selects_blocks() {
        let h = SparseBinaryMatrix::from_positions(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let m = BinaryMask::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let out = mask_binary(&h, 1, &m).unwrap();
        assert_eq!(out.positions().collect::<Vec<_>>(), vec![(0, 0), (1, 1)]);

        let all = BinaryMask::filled(2, 2, true);
        assert_eq!(mask_binary(&h, 1, &all).unwrap(), h);

        assert!(matches!(
            mask_binary(&h, 3, &all),
            Err(Error::InvalidDimensions(_))
        ));
        assert!(matches!(
            mask_binary(&h, 2, &all),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn masking_commutes_with_expansion_on_example1() {
        let e0 = example1_base(7);
        let m0 = example1_mask0();
        let a = expand(&mask_exponent(&e0, &m0).unwrap());
        let b = mask_binary(&expand(&e0), 7, &m0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn profile_of_empty_matrix() {
        let p = profile(&SparseBinaryMatrix::empty(0, 0));
        assert!(p.column_weights.is_empty());
        assert!(p.row_weights.is_empty());
        assert_eq!(p.designed_rate, None);
    }

    #[test]
    fn profile_rate_is_reduced() {
        let p = profile(&expand(&example1_base(7)));
        assert_eq!(p.designed_rate, Some(Ratio::new(1, 4)));
        assert_eq!(p.regular_weights(), Some((3, 4)));
    }

    #[test]
    fn from_binary_rejects_cpm_sums() {
        // block 0 holds I + shift(1)
        let h = SparseBinaryMatrix::from_positions(
            3,
            3,
            [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (2, 0)],
        )
        .unwrap();
        assert_eq!(
            ExponentMatrix::from_binary(&h, 3).unwrap_err(),
            Error::NotCirculantPermutation {
                block_row: 0,
                block_col: 0
            }
        );
        let e = example1_base(7);
        assert_eq!(ExponentMatrix::from_binary(&expand(&e), 7).unwrap(), e);
    }

    fn arb_exponent() -> impl Strategy<Value = ExponentMatrix> {
        (1usize..=4, 1usize..=6, 1u32..=9).prop_flat_map(|(m, n, p)| {
            proptest::collection::vec(proptest::option::weighted(0.7, 0..p), m * n)
                .prop_map(move |entries| ExponentMatrix::new(m, n, p, entries).unwrap())
        })
    }

    proptest! {
        #[test]
        fn expansion_places_one_per_block_row_and_col(e in arb_exponent()) {
            let h = expand(&e);
            let p = e.lift() as usize;
            for bi in 0..e.rows() {
                for bj in 0..e.cols() {
                    let ones = (0..p)
                        .flat_map(|r| h.row(bi * p + r).iter().map(move |&c| (r, c)))
                        .filter(|&(_, c)| c / p == bj)
                        .count();
                    prop_assert_eq!(ones, if e.get(bi, bj).is_some() { p } else { 0 });
                }
            }
            for bj in 0..e.cols() {
                let finite = (0..e.rows()).filter(|&i| e.get(i, bj).is_some()).count();
                for c in bj * p..(bj + 1) * p {
                    prop_assert_eq!(h.col(c).len(), finite);
                }
            }
        }

        #[test]
        fn masking_commutes_with_expansion(
            e in arb_exponent(),
            seed in any::<u64>(),
        ) {
            let mask = BinaryMask::from_fn(e.rows(), e.cols(), |i, j| {
                (seed >> ((i * e.cols() + j) % 64)) & 1 == 1
            });
            let a = expand(&mask_exponent(&e, &mask).unwrap());
            let b = mask_binary(&expand(&e), e.lift(), &mask).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
