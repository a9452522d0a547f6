//! Partitions of the `m x n` cell grid into `N` masks.
//!
//! Every generator here produces a two-mask set `{M0, 1 - M0}`; use
//! [`extend_maskset`] to pad it with all-zero masks up to the Latin square
//! order.

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::BinaryMask;

/// `N` binary masks of one shape whose element-wise sum is the all-one
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskSet {
    masks: Vec<BinaryMask>,
}

impl MaskSet {
    pub fn new(masks: Vec<BinaryMask>) -> Result<Self> {
        validate_maskset(&masks)?;
        Ok(Self { masks })
    }

    /// `{M0, 1 - M0}`.
    pub fn from_first(m0: BinaryMask) -> Self {
        let m1 = m0.complement();
        Self {
            masks: vec![m0, m1],
        }
    }

    /// Assigns each cell independently and uniformly to one of `count` masks.
    pub fn random<R: Rng + ?Sized>(
        rows: usize,
        cols: usize,
        count: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidArgument(format!(
                "mask count must be at least 2, got {count}"
            )));
        }
        let owner: Vec<usize> = (0..rows * cols).map(|_| rng.random_range(0..count)).collect();
        let masks = (0..count)
            .map(|k| BinaryMask::from_fn(rows, cols, |i, j| owner[i * cols + j] == k))
            .collect();
        Ok(Self { masks })
    }

    pub fn count(&self) -> usize {
        self.masks.len()
    }

    pub fn rows(&self) -> usize {
        self.masks[0].rows()
    }

    pub fn cols(&self) -> usize {
        self.masks[0].cols()
    }

    pub fn mask(&self, k: usize) -> &BinaryMask {
        &self.masks[k]
    }

    pub fn masks(&self) -> &[BinaryMask] {
        &self.masks
    }
}

/// Checks that `masks` has at least two members of one shape and that each
/// cell is covered by exactly one of them.
pub fn validate_maskset(masks: &[BinaryMask]) -> Result<()> {
    if masks.len() < 2 {
        return Err(Error::InvalidMaskSet(format!(
            "need at least 2 masks, got {}",
            masks.len()
        )));
    }
    let (m, n) = (masks[0].rows(), masks[0].cols());
    if m == 0 || n == 0 {
        return Err(Error::InvalidMaskSet("masks must be non-empty".into()));
    }
    if let Some((k, bad)) = masks
        .iter()
        .enumerate()
        .find(|(_, mk)| (mk.rows(), mk.cols()) != (m, n))
    {
        return Err(Error::InvalidMaskSet(format!(
            "mask {k} is {}x{}, expected {m}x{n}",
            bad.rows(),
            bad.cols()
        )));
    }
    for i in 0..m {
        for j in 0..n {
            let cover = masks.iter().filter(|mk| mk.get(i, j)).count();
            if cover != 1 {
                return Err(Error::InvalidMaskSet(format!(
                    "cell ({i}, {j}) is covered {cover} times"
                )));
            }
        }
    }
    Ok(())
}

fn repeated_block(m: usize, n: usize, x: impl Fn(usize, usize) -> bool) -> Result<MaskSet> {
    if m == 0 || n == 0 || !n.is_multiple_of(m) {
        return Err(Error::InvalidDimensions(format!(
            "column count {n} must be a positive multiple of row count {m}"
        )));
    }
    Ok(MaskSet::from_first(BinaryMask::from_fn(m, n, |i, j| x(i, j % m))))
}

/// D partition: `M0 = [X, .., X]` with `X` zero on the diagonal and one
/// elsewhere.
pub fn mask_diagonal(m: usize, n: usize) -> Result<MaskSet> {
    repeated_block(m, n, |i, j| i != j)
}

/// T partition: `M0 = [X, .., X]` with `X` lower-triangular ones, diagonal
/// included.
pub fn mask_triangle(m: usize, n: usize) -> Result<MaskSet> {
    repeated_block(m, n, |i, j| j <= i)
}

/// H partition: `M0` with columns as distinct as possible.
///
/// The `4 x 8` and `4 x 12` shapes return the published matrices
/// ([`hamming_4x8`], [`hamming_4x12`]); other shapes use
/// [`distinct_columns`].
pub fn mask_hamming(m: usize, n: usize) -> Result<MaskSet> {
    if m < 2 || n == 0 {
        return Err(Error::InvalidDimensions(format!(
            "Hamming-like mask needs m >= 2 and n >= 1, got {m}x{n}"
        )));
    }
    let m0 = match (m, n) {
        (4, 8) => hamming_4x8(),
        (4, 12) => hamming_4x12(),
        _ => {
            let columns = distinct_columns(m, n);
            BinaryMask::from_fn(m, n, |i, j| columns[j][i])
        }
    };
    Ok(MaskSet::from_first(m0))
}

/// `n` nonzero binary columns of length `m`, pairwise distinct while
/// `n <= 2^m - 1`.
///
/// Columns are taken by descending weight. Within one weight, columns are
/// grouped into cyclic-shift families; families come in descending
/// lexicographic order of their largest member and each family is listed
/// from that member by repeated downward shifts. Past `2^m - 1` columns the
/// sequence starts over.
pub fn distinct_columns(m: usize, n: usize) -> Vec<Vec<bool>> {
    assert!((1..=20).contains(&m), "column length {m} out of range");
    let mut order: Vec<Vec<bool>> = Vec::new();
    for weight in (1..=m).rev() {
        // Columns are encoded with row 0 as the most significant bit, so
        // numeric order is lexicographic order.
        let mut pool: Vec<u32> = (1u32..(1 << m))
            .filter(|v| v.count_ones() as usize == weight)
            .collect();
        pool.sort_unstable_by(|a, b| b.cmp(a));
        let mut used = vec![false; 1 << m];
        for &leader in &pool {
            if used[leader as usize] {
                continue;
            }
            let mut v = leader;
            loop {
                used[v as usize] = true;
                order.push((0..m).map(|i| (v >> (m - 1 - i)) & 1 == 1).collect());
                v = rotate_down(v, m);
                if v == leader {
                    break;
                }
            }
        }
    }
    (0..n).map(|j| order[j % order.len()].clone()).collect()
}

fn rotate_down(v: u32, m: usize) -> u32 {
    // the bottom row wraps to the top
    let full = (1u32 << m) - 1;
    ((v >> 1) | ((v & 1) << (m - 1))) & full
}

/// Pads a two-mask set with all-zero masks up to `count` masks.
pub fn extend_maskset(ms: &MaskSet, count: usize) -> Result<MaskSet> {
    if count < 2 {
        return Err(Error::InvalidArgument(format!(
            "mask count must be at least 2, got {count}"
        )));
    }
    if ms.count() != 2 {
        return Err(Error::InvalidMaskSet(format!(
            "only two-mask sets can be extended, got {}",
            ms.count()
        )));
    }
    let mut masks = ms.masks.clone();
    masks.resize(count, BinaryMask::filled(ms.rows(), ms.cols(), false));
    Ok(MaskSet { masks })
}

/// The published Hamming-like `M0` for `m = 4`, `n = 8`.
pub fn hamming_4x8() -> BinaryMask {
    BinaryMask::from_rows(&[
        vec![1, 0, 1, 1, 1, 0, 0, 0],
        vec![1, 1, 0, 1, 0, 1, 0, 0],
        vec![1, 1, 1, 0, 0, 0, 1, 0],
        vec![0, 1, 1, 1, 0, 0, 0, 1],
    ])
    .expect("static shape")
}

/// The published Hamming-like `M0` for `m = 4`, `n = 12`.
pub fn hamming_4x12() -> BinaryMask {
    BinaryMask::from_rows(&[
        vec![1, 0, 1, 1, 1, 0, 0, 1, 1, 0, 0, 0],
        vec![1, 1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0],
        vec![1, 1, 1, 0, 0, 1, 1, 0, 0, 0, 1, 0],
        vec![0, 1, 1, 1, 0, 0, 1, 1, 0, 0, 0, 1],
    ])
    .expect("static shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn assert_partition(ms: &MaskSet) {
        validate_maskset(ms.masks()).unwrap();
    }

    #[test]
    fn diagonal_masks() {
        let ms = mask_diagonal(2, 4).unwrap();
        assert_eq!(ms.mask(0).to_rows(), vec![vec![0, 1, 0, 1], vec![1, 0, 1, 0]]);
        assert_eq!(ms.mask(1).to_rows(), vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
        assert_eq!(mask_diagonal(3, 3).unwrap().mask(0).count_ones(), 6);
        assert!(mask_diagonal(3, 4).is_err());
        assert_partition(&ms);
    }

    #[test]
    fn triangle_masks() {
        assert_eq!(
            mask_triangle(2, 2).unwrap().mask(0).to_rows(),
            vec![vec![1, 0], vec![1, 1]]
        );
        let ms = mask_triangle(3, 6).unwrap();
        assert_eq!(ms.mask(0).to_rows()[0], vec![1, 0, 0, 1, 0, 0]);
        assert_partition(&ms);
        assert!(mask_triangle(4, 6).is_err());
    }

    #[test]
    fn hamming_published_shapes() {
        let ms = mask_hamming(4, 8).unwrap();
        let first: Vec<bool> = (0..4).map(|i| ms.mask(0).get(i, 0)).collect();
        assert_eq!(first, vec![true, true, true, false]);
        assert_partition(&ms);

        let ms = mask_hamming(4, 12).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(ms.mask(0).get(i, 8 + j), i == j);
            }
        }
        assert_partition(&ms);
    }

    #[test]
    fn generic_hamming_columns_are_distinct() {
        let ms = mask_hamming(2, 2).unwrap();
        let cols: HashSet<Vec<bool>> = (0..2)
            .map(|j| (0..2).map(|i| ms.mask(0).get(i, j)).collect())
            .collect();
        assert_eq!(cols.len(), 2);
        assert!(cols.iter().all(|c| c.iter().any(|&b| b)));

        for m in 2..=5 {
            let limit = (1usize << m) - 1;
            let cols = distinct_columns(m, limit);
            let set: HashSet<_> = cols.iter().cloned().collect();
            assert_eq!(set.len(), limit, "m = {m}");
        }
    }

    #[test]
    fn generic_order_follows_shift_families() {
        let cols = distinct_columns(4, 11);
        let as_bits = |c: &Vec<bool>| c.iter().map(|&b| b as u8).collect::<Vec<_>>();
        assert_eq!(as_bits(&cols[0]), vec![1, 1, 1, 1]);
        // the weight-3 family matches the leading block of the published masks
        for j in 0..4 {
            let expected: Vec<u8> = (0..4).map(|i| hamming_4x8().get(i, j) as u8).collect();
            assert_eq!(as_bits(&cols[1 + j]), expected);
        }
        // and the first weight-2 family matches the middle block of the 4x12 mask
        for j in 0..4 {
            let expected: Vec<u8> = (0..4).map(|i| hamming_4x12().get(i, 4 + j) as u8).collect();
            assert_eq!(as_bits(&cols[5 + j]), expected);
        }
    }

    #[test]
    fn generic_columns_repeat_late() {
        let cols = distinct_columns(2, 5);
        assert_eq!(cols[0], cols[3]);
        assert_eq!(cols[1], cols[4]);
    }

    #[test]
    fn extension_pads_with_zero_masks() {
        let ms = mask_hamming(4, 8).unwrap();
        assert_eq!(extend_maskset(&ms, 2).unwrap(), ms);
        let four = extend_maskset(&ms, 4).unwrap();
        assert_eq!(four.count(), 4);
        assert_eq!(four.mask(2).count_ones(), 0);
        assert_eq!(four.mask(3).count_ones(), 0);
        assert_partition(&four);
        let three = extend_maskset(&mask_hamming(4, 12).unwrap(), 3).unwrap();
        assert_eq!(three.mask(2).count_ones(), 0);
        assert!(extend_maskset(&ms, 1).is_err());
    }

    #[test]
    fn rejects_overlapping_masks() {
        let m = BinaryMask::filled(2, 2, true);
        assert!(matches!(
            MaskSet::new(vec![m.clone(), m]),
            Err(Error::InvalidMaskSet(_))
        ));
        let z = BinaryMask::filled(2, 2, false);
        assert!(MaskSet::new(vec![z.clone(), z]).is_err());
    }

    #[test]
    fn random_partitions_cover_once() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for count in 2..=4 {
            let ms = MaskSet::random(3, 5, count, &mut rng).unwrap();
            assert_eq!(ms.count(), count);
            assert_partition(&ms);
        }
    }
}
