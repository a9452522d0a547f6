//! Text formats for matrices, masks, Latin squares and simulation results.

mod alist;
mod grid;
mod results;

pub use alist::{read_alist, write_alist};
pub use grid::{
    read_exponent, read_latin, read_masks, read_maskset, write_exponent, write_latin, write_mask,
    write_maskset,
};
pub use results::write_results_csv;

use std::path::Path;

use crate::error::{Error, Result};

/// Reads a file, prefixing errors with its path.
pub fn read_file<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T>) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
