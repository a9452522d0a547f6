use crate::error::{Error, Result};
use crate::matrix::{mask_binary, mask_exponent, ExponentMatrix, SparseBinaryMatrix};

use super::latin::LatinSquare;
use super::mask::{extend_maskset, mask_triangle, MaskSet};

fn check_counts(ms: &MaskSet, latin: &LatinSquare) -> Result<()> {
    if ms.count() != latin.order() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} masks for a Latin square of order {}", latin.order(), latin.order()),
            got: format!("{} masks", ms.count()),
        });
    }
    Ok(())
}

/// Exponent-level splicing: block `(r, c)` of the `N x N` super-array is
/// `E0` masked by `M_{A(r, c)}`.
pub fn splice_exponent(
    e0: &ExponentMatrix,
    ms: &MaskSet,
    latin: &LatinSquare,
) -> Result<ExponentMatrix> {
    check_counts(ms, latin)?;
    let (m, n, order) = (e0.rows(), e0.cols(), latin.order());
    let pieces = ms
        .masks()
        .iter()
        .map(|mk| mask_exponent(e0, mk))
        .collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::with_capacity(m * n * order * order);
    for br in 0..order {
        for i in 0..m {
            for bc in 0..order {
                let piece = &pieces[latin.get(br, bc)];
                entries.extend((0..n).map(|j| piece.get(i, j)));
            }
        }
    }
    ExponentMatrix::new(m * order, n * order, e0.lift(), entries)
}

/// Binary-level splicing of an arbitrary `mP x nP` base matrix.
pub fn splice_binary(
    h0: &SparseBinaryMatrix,
    lift: u32,
    ms: &MaskSet,
    latin: &LatinSquare,
) -> Result<SparseBinaryMatrix> {
    check_counts(ms, latin)?;
    let pieces = ms
        .masks()
        .iter()
        .map(|mk| mask_binary(h0, lift, mk))
        .collect::<Result<Vec<_>>>()?;
    let (rows, cols, order) = (h0.rows(), h0.cols(), latin.order());
    let mut positions = Vec::with_capacity(h0.nnz() * order);
    for br in 0..order {
        for bc in 0..order {
            positions.extend(
                pieces[latin.get(br, bc)]
                    .positions()
                    .map(|(r, c)| (br * rows + r, bc * cols + c)),
            );
        }
    }
    SparseBinaryMatrix::from_positions(rows * order, cols * order, positions)
}

/// Two-fold splice with triangular masks and `A = [[0, 1], [1, 0]]`.
/// Requires `n` to be a multiple of `m`.
pub fn splice_special_n2(e0: &ExponentMatrix) -> Result<ExponentMatrix> {
    let ms = extend_maskset(&mask_triangle(e0.rows(), e0.cols())?, 2)?;
    splice_exponent(e0, &ms, &LatinSquare::circulant(2)?)
}
