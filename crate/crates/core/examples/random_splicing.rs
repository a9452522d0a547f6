//! Random partitions and random Latin squares never lower the girth.
//!
//! `cargo run --release --example random_splicing [trials] [seed]`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use psldpc::construct::{splice_exponent, LatinSquare, MaskSet};
use psldpc::girth::check_theorem1;
use psldpc::matrix::ExponentMatrix;

fn main() -> psldpc::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(200);
    let seed: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut held = 0;
    for _ in 0..trials {
        let (m, n) = (rng.random_range(1..=4), rng.random_range(2..=8));
        let p = rng.random_range(2..=32);
        let order = rng.random_range(2..=4);
        let entries = (0..m * n)
            .map(|_| rng.random_bool(0.8).then(|| rng.random_range(0..p)))
            .collect();
        let e0 = ExponentMatrix::new(m, n, p, entries)?;
        let masks = MaskSet::random(m, n, order, &mut rng)?;
        let latin = LatinSquare::random(order, &mut rng)?;
        let e = splice_exponent(&e0, &masks, &latin)?;
        if check_theorem1(&e0, &e, 12)? {
            held += 1;
        } else {
            println!("counterexample:\n{e0:?}");
        }
    }
    println!("girth preserved in {held}/{trials} random splices");
    Ok(())
}
