//! Four-fold splicing of the GCD(64, 8) base with the D, T and H partitions,
//! and three-fold splicing of GCD(144, 12).
//!
//! `cargo run --release --example gcd_partitions`

use std::time::Instant;

use psldpc::construct::{extend_maskset, gcd_base, splice_exponent, LatinSquare, Partition};
use psldpc::girth::{girth_exponent, DEFAULT_CAP};
use psldpc::matrix::{expand, profile};

fn report(p: u32, l: u32, order: usize, parts: &[Partition]) -> psldpc::Result<()> {
    let e0 = gcd_base(p, l)?;
    println!(
        "GCD({p},{l}) base: {}x{}, {}",
        e0.rows(),
        e0.cols(),
        girth_exponent(&e0, DEFAULT_CAP)?
    );
    let latin = LatinSquare::circulant(order)?;
    for &part in parts {
        let start = Instant::now();
        let masks = extend_maskset(&part.masks(e0.rows(), e0.cols())?, order)?;
        let e = splice_exponent(&e0, &masks, &latin)?;
        let g = girth_exponent(&e, DEFAULT_CAP)?;
        let prof = profile(&expand(&e));
        println!(
            "  PS-{}: {}x{} blocks, H {}x{}, weights {:?}, rate {}, {g} ({:.1?})",
            part.name(),
            e.rows(),
            e.cols(),
            prof.rows,
            prof.cols,
            prof.regular_weights().expect("regular"),
            prof.designed_rate.expect("rate"),
            start.elapsed()
        );
    }
    Ok(())
}

fn main() -> psldpc::Result<()> {
    use Partition::*;
    report(64, 8, 4, &[Diagonal, Triangle, Hamming])?;
    report(144, 12, 3, &[Triangle, Hamming, Diagonal])
}
