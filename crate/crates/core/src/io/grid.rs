//! Whitespace-separated grid files for exponent matrices (`.exp`), masks
//! (`.mask`) and Latin squares (`.latin`).
//!
//! * exponent: header `m n P`, then `m` rows of `n` integers, `-1` for the
//!   zero block;
//! * mask: one or more grids, each a header `m n` then `m` rows of 0/1. A
//!   single grid is `M0` and implies `M1 = 1 - M0`; several grids are the
//!   full mask set;
//! * Latin square: header `N`, then `N` rows.
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::construct::{LatinSquare, MaskSet};
use crate::error::{Error, Result};
use crate::matrix::{BinaryMask, ExponentMatrix};

struct Tokens<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Self { lines, pos: 0 }
    }

    fn done(&self) -> bool {
        self.pos >= self.lines.len()
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(1, |(n, _)| n + 1)
    }

    fn row(&mut self, what: &str, count: usize) -> Result<(usize, Vec<i64>)> {
        let Some(&(line, text)) = self.lines.get(self.pos) else {
            return Err(Error::parse(
                self.last_line(),
                format!("unexpected end of file: missing {what}"),
            ));
        };
        self.pos += 1;
        let values = text
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::parse(line, format!("{what}: `{t}` is not an integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != count {
            return Err(Error::parse(
                line,
                format!("{what}: expected {count} values, found {}", values.len()),
            ));
        }
        Ok((line, values))
    }

    fn finish(&self) -> Result<()> {
        match self.lines.get(self.pos) {
            Some(&(line, _)) => Err(Error::parse(line, "unexpected trailing content")),
            None => Ok(()),
        }
    }
}

fn positive(line: usize, v: i64, what: &str) -> Result<usize> {
    usize::try_from(v)
        .ok()
        .filter(|&v| v > 0)
        .ok_or_else(|| Error::parse(line, format!("{what} must be positive, got {v}")))
}

pub fn read_exponent(text: &str) -> Result<ExponentMatrix> {
    let mut t = Tokens::new(text);
    let (hline, h) = t.row("header (m n P)", 3)?;
    let m = positive(hline, h[0], "m")?;
    let n = positive(hline, h[1], "n")?;
    let p = positive(hline, h[2], "P")?;
    let p = u32::try_from(p).map_err(|_| Error::parse(hline, "P is too large"))?;
    let mut entries = Vec::with_capacity(m * n);
    for i in 0..m {
        let (line, row) = t.row(&format!("row {i}"), n)?;
        for (j, v) in row.into_iter().enumerate() {
            entries.push(match v {
                -1 => None,
                v if (0..p as i64).contains(&v) => Some(v as u32),
                v => {
                    return Err(Error::parse(
                        line,
                        format!("entry {v} at column {j} is outside [-1, {}]", p - 1),
                    ))
                }
            });
        }
    }
    t.finish()?;
    ExponentMatrix::new(m, n, p, entries)
}

pub fn write_exponent(e: &ExponentMatrix) -> String {
    let mut out = format!("{} {} {}\n", e.rows(), e.cols(), e.lift());
    for row in e.to_signed_rows() {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

fn read_mask_grid(t: &mut Tokens<'_>) -> Result<BinaryMask> {
    let (hline, h) = t.row("mask header (m n)", 2)?;
    let m = positive(hline, h[0], "m")?;
    let n = positive(hline, h[1], "n")?;
    let mut bits = Vec::with_capacity(m * n);
    for i in 0..m {
        let (line, row) = t.row(&format!("mask row {i}"), n)?;
        for (j, v) in row.into_iter().enumerate() {
            match v {
                0 => bits.push(false),
                1 => bits.push(true),
                v => {
                    return Err(Error::parse(
                        line,
                        format!("mask entry {v} at column {j} is not 0 or 1"),
                    ))
                }
            }
        }
    }
    BinaryMask::new(m, n, bits)
}

/// All grids in a mask file.
pub fn read_masks(text: &str) -> Result<Vec<BinaryMask>> {
    let mut t = Tokens::new(text);
    let mut masks = vec![read_mask_grid(&mut t)?];
    while !t.done() {
        masks.push(read_mask_grid(&mut t)?);
    }
    Ok(masks)
}

/// A mask file as a validated mask set.
pub fn read_maskset(text: &str) -> Result<MaskSet> {
    let mut masks = read_masks(text)?;
    if masks.len() == 1 {
        return Ok(MaskSet::from_first(masks.remove(0)));
    }
    MaskSet::new(masks)
}

pub fn write_mask(mask: &BinaryMask) -> String {
    let mut out = format!("{} {}\n", mask.rows(), mask.cols());
    for row in mask.to_rows() {
        let cells: Vec<String> = row.iter().map(u8::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

pub fn write_maskset(ms: &MaskSet) -> String {
    ms.masks().iter().map(write_mask).collect()
}

pub fn read_latin(text: &str) -> Result<LatinSquare> {
    let mut t = Tokens::new(text);
    let (hline, h) = t.row("header (N)", 1)?;
    let order = positive(hline, h[0], "N")?;
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(order);
    for i in 0..order {
        let (line, row) = t.row(&format!("row {i}"), order)?;
        let mut seen = vec![false; order];
        let mut parsed = Vec::with_capacity(order);
        for (j, v) in row.into_iter().enumerate() {
            let s = usize::try_from(v)
                .ok()
                .filter(|&s| s < order)
                .ok_or_else(|| Error::parse(line, format!("symbol {v} is outside Z_{order}")))?;
            if std::mem::replace(&mut seen[s], true) {
                return Err(Error::parse(line, format!("not a Latin square: symbol {s} repeats in row {i}")));
            }
            if rows.iter().any(|r| r[j] == s) {
                return Err(Error::parse(line, format!("not a Latin square: symbol {s} repeats in column {j}")));
            }
            parsed.push(s);
        }
        rows.push(parsed);
    }
    t.finish()?;
    LatinSquare::new(rows).map_err(|e| Error::parse(hline, e.to_string()))
}

pub fn write_latin(a: &LatinSquare) -> String {
    let mut out = format!("{}\n", a.order());
    for row in a.to_rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{example1_base, extend_maskset, hamming_4x8, mask_triangle};

    #[test]
    fn exponent_round_trip() {
        let e = example1_base(7);
        let text = write_exponent(&e);
        assert!(text.starts_with("3 4 7\n0 0 0 0\n"));
        assert_eq!(read_exponent(&text).unwrap(), e);
    }

    #[test]
    fn exponent_range_errors_name_the_line() {
        let err = read_exponent("# c\n1 2 5\n0 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = read_exponent("1 2 5\n0 -2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = read_exponent("2 2 5\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(read_exponent("1 1 5\n0\n0\n").is_err());
    }

    #[test]
    fn mask_files() {
        let m0 = hamming_4x8();
        let ms = read_maskset(&write_mask(&m0)).unwrap();
        assert_eq!(ms.mask(0), &m0);
        assert_eq!(ms.mask(1), &m0.complement());

        let four = extend_maskset(&mask_triangle(2, 4).unwrap(), 4).unwrap();
        assert_eq!(read_maskset(&write_maskset(&four)).unwrap(), four);

        let err = read_masks("1 2\n0 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let overlapping = "1 2\n1 1\n1 2\n1 0\n";
        assert!(matches!(read_maskset(overlapping), Err(Error::InvalidMaskSet(_))));
    }

    #[test]
    fn latin_files() {
        let a = LatinSquare::circulant(4).unwrap();
        assert_eq!(read_latin(&write_latin(&a)).unwrap(), a);
        let err = read_latin("2\n0 0\n1 1\n").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("Latin"), "{msg}");
            }
            e => panic!("unexpected {e:?}"),
        }
    }
}
