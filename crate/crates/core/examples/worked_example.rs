//! Splits the 4-cycles of a small base matrix: girth 4 becomes girth 8.
//!
//! `cargo run --release --example worked_example`

use psldpc::construct::{example1_base, example1_mask0, splice_exponent, LatinSquare, MaskSet};
use psldpc::girth::{girth_exponent, shortest_cycle, DEFAULT_CAP};
use psldpc::io::{write_exponent, write_mask};

fn main() -> psldpc::Result<()> {
    let e0 = example1_base(7);
    print!("base E0 (P = 7):\n{}", write_exponent(&e0));
    if let Some(w) = shortest_cycle(&e0, DEFAULT_CAP)? {
        println!("shortest cycle of E0: {w}");
    }

    let masks = MaskSet::from_first(example1_mask0());
    print!("M0:\n{}", write_mask(masks.mask(0)));

    let e = splice_exponent(&e0, &masks, &LatinSquare::circulant(2)?)?;
    print!("compound E:\n{}", write_exponent(&e));
    println!(
        "{} -> {}",
        girth_exponent(&e0, DEFAULT_CAP)?,
        girth_exponent(&e, DEFAULT_CAP)?
    );
    if let Some(w) = shortest_cycle(&e, DEFAULT_CAP)? {
        println!("shortest cycle of E: {w}");
    }
    Ok(())
}
