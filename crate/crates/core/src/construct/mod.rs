//! Base-code generation, partitions, Latin squares and splicing.

mod base;
mod latin;
mod mask;
mod splice;

pub use base::{example1_base, example1_compound, example1_mask0, gcd_base};
pub use latin::{validate_latin, LatinSquare};
pub use mask::{
    distinct_columns, extend_maskset, hamming_4x12, hamming_4x8, mask_diagonal, mask_hamming,
    mask_triangle, validate_maskset, MaskSet,
};
pub use splice::{splice_binary, splice_exponent, splice_special_n2};

/// The named partition schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Partition {
    Diagonal,
    Triangle,
    Hamming,
}

impl Partition {
    pub fn masks(self, m: usize, n: usize) -> crate::Result<MaskSet> {
        match self {
            Partition::Diagonal => mask_diagonal(m, n),
            Partition::Triangle => mask_triangle(m, n),
            Partition::Hamming => mask_hamming(m, n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Partition::Diagonal => "D",
            Partition::Triangle => "T",
            Partition::Hamming => "H",
        }
    }
}
