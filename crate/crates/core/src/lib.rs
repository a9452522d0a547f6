//! Longer QC-LDPC codes from shorter ones by partition and Latin-square
//! splicing.
//!
//! A base parity-check matrix is cut into `N` non-overlapping masked copies
//! which are then placed in an `N x N` array following a Latin square. The
//! compound code keeps the row and column weight distribution and the
//! designed rate of the base, and its girth is never smaller.
//!
//! * [`matrix`]: exponent and sparse binary matrices, circulant expansion,
//!   masking;
//! * [`construct`]: GCD base matrices, D/T/H partitions, Latin squares and
//!   the splicing operations;
//! * [`girth`]: exact girth from exponent cycle sums, with a breadth-first
//!   reference on explicit matrices;
//! * [`simulate`]: BPSK/AWGN sum-product simulation;
//! * [`io`]: alist, exponent, mask and Latin-square files and CSV results.

pub mod cli;
pub mod construct;
pub mod error;
pub mod girth;
pub mod io;
pub mod matrix;
pub mod simulate;

pub use error::{Error, Result};
