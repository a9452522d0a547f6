//! Two-fold splicing with triangular masks on a base with `n = K m`.
//!
//! `cargo run --release --example special_case`

use psldpc::construct::{gcd_base, splice_special_n2};
use psldpc::girth::{girth_exponent, DEFAULT_CAP};

fn main() -> psldpc::Result<()> {
    for (p, l) in [(13, 4), (31, 8), (64, 12)] {
        let e0 = gcd_base(p, l)?;
        let e = splice_special_n2(&e0)?;
        println!(
            "GCD({p},{l}) {}x{}: {} -> {}x{}: {}",
            e0.rows(),
            e0.cols(),
            girth_exponent(&e0, DEFAULT_CAP)?,
            e.rows(),
            e.cols(),
            girth_exponent(&e, DEFAULT_CAP)?
        );
    }
    Ok(())
}
