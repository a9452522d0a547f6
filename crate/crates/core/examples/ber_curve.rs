//! BER/FER of the PS-H (4,8) compound over BPSK/AWGN, written as CSV.
//!
//! `cargo run --release --example ber_curve [min_frame_errors] [max_frames]`

use psldpc::construct::{extend_maskset, gcd_base, splice_exponent, LatinSquare, Partition};
use psldpc::io::write_results_csv;
use psldpc::matrix::{expand, profile};
use psldpc::simulate::{run_ber, ChannelPoint, SimConfig, StopRule};

fn main() -> psldpc::Result<()> {
    let mut args = std::env::args().skip(1);
    let min_frame_errors = args.next().and_then(|a| a.parse().ok()).unwrap_or(50);
    let max_frames = args.next().and_then(|a| a.parse().ok()).unwrap_or(20_000);

    let e0 = gcd_base(64, 8)?;
    let masks = extend_maskset(&Partition::Hamming.masks(4, 8)?, 4)?;
    let h = expand(&splice_exponent(&e0, &masks, &LatinSquare::circulant(4)?)?);
    let rate = profile(&h).designed_rate_f64().expect("rate");

    let points = [1.0, 1.5, 2.0, 2.5]
        .iter()
        .enumerate()
        .map(|(k, &db)| ChannelPoint::new(db, rate, 100 + k as u64))
        .collect::<psldpc::Result<Vec<_>>>()?;
    let config = SimConfig {
        stop: StopRule {
            min_frame_errors,
            max_frames,
        },
        ..SimConfig::default()
    };
    let result = run_ber(&h, &points, &config)?;
    for p in &result.points {
        eprintln!(
            "{:.1} dB: {} frames, mean {:.2} iterations",
            p.eb_n0_db,
            p.frames_sent,
            p.mean_iterations()
        );
    }
    write_results_csv(&result, std::io::stdout().lock())
}
