//! BPSK over the binary-input AWGN channel with sum-product decoding.
//!
//! The all-zero codeword is transmitted, so no encoder is needed: the code is
//! linear and the channel output-symmetric.

mod channel;
mod decoder;
mod harness;

pub use channel::{frame_llrs, transmit_all_zero, ChannelPoint};
pub use decoder::{box_plus, DecodeOutcome, SpaDecoder, DEFAULT_MAX_ITER, LLR_CLIP};
pub use harness::{run_ber, run_point, PointResult, SimConfig, SimResult, StopRule};

/// Decodes `llr` against `h` with a one-off decoder.
pub fn spa_decode(
    h: &crate::matrix::SparseBinaryMatrix,
    llr: &[f64],
    max_iter: usize,
) -> crate::Result<DecodeOutcome> {
    SpaDecoder::new(h).decode(llr, max_iter)
}
