use crate::error::{Error, Result};
use crate::matrix::{BinaryMask, ExponentMatrix};

/// GCD-type base: a `4 x L` matrix with entry `(i, j) = f_i * j mod P` for
/// row factors `f = (0, 1, L, L + 1)`.
pub fn gcd_base(lift: u32, width: u32) -> Result<ExponentMatrix> {
    if lift < 2 || width < 2 {
        return Err(Error::InvalidArgument(format!(
            "GCD base needs P >= 2 and L >= 2, got P = {lift}, L = {width}"
        )));
    }
    let factors = [0u64, 1, width as u64, width as u64 + 1];
    let entries = factors
        .iter()
        .flat_map(|&f| (0..width as u64).map(move |j| Some((f * j % lift as u64) as u32)))
        .collect();
    ExponentMatrix::new(4, width as usize, lift, entries)
}

/// The 3 x 4 base of the girth 4 to girth 8 worked example.
pub fn example1_base(lift: u32) -> ExponentMatrix {
    ExponentMatrix::from_signed_rows(
        lift,
        &[vec![0, 0, 0, 0], vec![0, 1, 3, 4], vec![0, 2, 6, 5]],
    )
    .expect("worked example needs P >= 7")
}

/// `M0` of the girth 4 to girth 8 worked example.
pub fn example1_mask0() -> BinaryMask {
    BinaryMask::from_rows(&[vec![1, 1, 1, 1], vec![1, 1, 1, 1], vec![1, 0, 0, 1]])
        .expect("static shape")
}

/// The 6 x 8 compound matrix the worked example produces.
pub fn example1_compound(lift: u32) -> ExponentMatrix {
    ExponentMatrix::from_signed_rows(
        lift,
        &[
            vec![0, 0, 0, 0, -1, -1, -1, -1],
            vec![0, 1, 3, 4, -1, -1, -1, -1],
            vec![0, -1, -1, 5, -1, 2, 6, -1],
            vec![-1, -1, -1, -1, 0, 0, 0, 0],
            vec![-1, -1, -1, -1, 0, 1, 3, 4],
            vec![-1, 2, 6, -1, 0, -1, -1, 5],
        ],
    )
    .expect("worked example needs P >= 7")
}
