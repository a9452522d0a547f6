//! Writes a compound code in every supported file format and reads it back.
//!
//! `cargo run --release --example file_formats [dir]`

use std::path::PathBuf;

use psldpc::construct::{extend_maskset, gcd_base, splice_exponent, LatinSquare, Partition};
use psldpc::io::{
    read_alist, read_exponent, read_file, read_latin, read_maskset, write_alist, write_exponent,
    write_latin, write_maskset,
};
use psldpc::matrix::expand;

fn main() -> psldpc::Result<()> {
    let dir: PathBuf = std::env::args()
        .nth(1)
        .map_or_else(std::env::temp_dir, PathBuf::from);

    let e0 = gcd_base(32, 8)?;
    let masks = extend_maskset(&Partition::Triangle.masks(4, 8)?, 3)?;
    let latin = LatinSquare::circulant(3)?;
    let e = splice_exponent(&e0, &masks, &latin)?;
    let h = expand(&e);

    let files = [
        ("compound.exp", write_exponent(&e)),
        ("masks.mask", write_maskset(&masks)),
        ("latin.latin", write_latin(&latin)),
        ("compound.alist", write_alist(&h)),
    ];
    for (name, text) in &files {
        let path = dir.join(name);
        std::fs::write(&path, text)?;
        println!("wrote {} ({} bytes)", path.display(), text.len());
    }

    assert_eq!(read_file(&dir.join("compound.exp"), read_exponent)?, e);
    assert_eq!(read_file(&dir.join("masks.mask"), read_maskset)?, masks);
    assert_eq!(read_file(&dir.join("latin.latin"), read_latin)?, latin);
    assert_eq!(read_file(&dir.join("compound.alist"), read_alist)?, h);
    println!("all files read back unchanged");
    Ok(())
}
