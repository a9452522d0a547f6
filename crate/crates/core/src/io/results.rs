use serde::Serialize;

use crate::error::{Error, Result};
use crate::simulate::SimResult;

#[derive(Serialize)]
struct Row {
    eb_n0_db: f64,
    frames: u64,
    bit_errors: u64,
    frame_errors: u64,
    ber: f64,
    fer: f64,
    min_wrong_codeword_weight: Option<usize>,
}

/// One CSV row per channel point; `min_wrong_codeword_weight` is empty when
/// no wrong codeword was observed.
pub fn write_results_csv<W: std::io::Write>(result: &SimResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for p in &result.points {
        w.serialize(Row {
            eb_n0_db: p.eb_n0_db,
            frames: p.frames_sent,
            bit_errors: p.bit_errors,
            frame_errors: p.frame_errors,
            ber: p.ber(),
            fer: p.fer(),
            min_wrong_codeword_weight: p.min_wrong_codeword_weight(),
        })
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
