//! The alist sparse-matrix format.
//!
//! ```text
//! cols rows
//! max_col_weight max_row_weight
//! <col weights>
//! <row weights>
//! <one line per column: 1-based row indices, 0-padded>
//! <one line per row: 1-based column indices, 0-padded>
//! ```
//!
//! Zero padding is always written and optional on read.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::SparseBinaryMatrix;

pub fn write_alist(h: &SparseBinaryMatrix) -> String {
    let col_w: Vec<usize> = (0..h.cols()).map(|c| h.col(c).len()).collect();
    let row_w: Vec<usize> = (0..h.rows()).map(|r| h.row(r).len()).collect();
    let max_col = col_w.iter().copied().max().unwrap_or(0);
    let max_row = row_w.iter().copied().max().unwrap_or(0);

    let mut out = String::new();
    let _ = writeln!(out, "{} {}", h.cols(), h.rows());
    let _ = writeln!(out, "{max_col} {max_row}");
    let _ = writeln!(out, "{}", join(col_w.iter().copied()));
    let _ = writeln!(out, "{}", join(row_w.iter().copied()));
    for c in 0..h.cols() {
        let padded = h.col(c).iter().map(|&r| r + 1).chain(std::iter::repeat(0));
        let _ = writeln!(out, "{}", join(padded.take(max_col)));
    }
    for r in 0..h.rows() {
        let padded = h.row(r).iter().map(|&c| c + 1).chain(std::iter::repeat(0));
        let _ = writeln!(out, "{}", join(padded.take(max_row)));
    }
    out
}

fn join(values: impl Iterator<Item = usize>) -> String {
    values.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines: Vec<&str> = text.lines().collect();
        while lines.last().is_some_and(|l| l.trim().is_empty()) {
            lines.pop();
        }
        Self { lines, pos: 0 }
    }

    /// The next line as integers, with its 1-based line number.
    fn numbers(&mut self, section: &str) -> Result<(usize, Vec<usize>)> {
        let Some(line) = self.lines.get(self.pos) else {
            return Err(Error::parse(
                self.pos + 1,
                format!("unexpected end of file: missing {section}"),
            ));
        };
        self.pos += 1;
        let values = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| {
                    Error::parse(self.pos, format!("{section}: `{t}` is not a non-negative integer"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((self.pos, values))
    }

    fn exact(&mut self, section: &str, count: usize) -> Result<(usize, Vec<usize>)> {
        let (line, values) = self.numbers(section)?;
        if values.len() != count {
            return Err(Error::parse(
                line,
                format!("{section}: expected {count} values, found {}", values.len()),
            ));
        }
        Ok((line, values))
    }
}

pub fn read_alist(text: &str) -> Result<SparseBinaryMatrix> {
    let mut lines = Lines::new(text);
    let (_, dims) = lines.exact("header (cols rows)", 2)?;
    let (cols, rows) = (dims[0], dims[1]);
    let (max_line, maxes) = lines.exact("maximum weights", 2)?;
    let (max_col, max_row) = (maxes[0], maxes[1]);
    let (cw_line, col_w) = lines.exact("column weights", cols)?;
    let (rw_line, row_w) = lines.exact("row weights", rows)?;
    if col_w.iter().any(|&w| w > max_col) {
        return Err(Error::parse(cw_line, "column weight exceeds the declared maximum"));
    }
    if row_w.iter().any(|&w| w > max_row) {
        return Err(Error::parse(rw_line, "row weight exceeds the declared maximum"));
    }
    if col_w.iter().sum::<usize>() != row_w.iter().sum::<usize>() {
        return Err(Error::parse(rw_line, "row and column weights have different totals"));
    }
    if col_w.iter().copied().max().unwrap_or(0) != max_col
        || row_w.iter().copied().max().unwrap_or(0) != max_row
    {
        return Err(Error::parse(max_line, "declared maximum weights do not match the weight lists"));
    }

    let mut from_cols = Vec::new();
    for (c, &w) in col_w.iter().enumerate() {
        let (line, idx) = lines.numbers("column index lists")?;
        let list = strip_padding(line, idx, w, rows, max_col, "row")?;
        from_cols.extend(list.into_iter().map(|r| (r, c)));
    }
    let mut from_rows = Vec::new();
    for (r, &w) in row_w.iter().enumerate() {
        let (line, idx) = lines.numbers("row index lists")?;
        let list = strip_padding(line, idx, w, cols, max_row, "column")?;
        from_rows.extend(list.into_iter().map(|c| (r, c)));
    }
    if lines.pos < lines.lines.len() {
        return Err(Error::parse(lines.pos + 1, "trailing content after row index lists"));
    }

    let h = SparseBinaryMatrix::from_positions(rows, cols, from_rows).map_err(|e| {
        Error::parse(lines.pos, format!("row index lists: {e}"))
    })?;
    from_cols.sort_unstable();
    let mut listed: Vec<(usize, usize)> = h.positions().collect();
    listed.sort_unstable();
    if from_cols != listed {
        return Err(Error::parse(
            cw_line + 1 + rows,
            "column and row index lists describe different matrices",
        ));
    }
    Ok(h)
}

/// Drops zero padding and converts to 0-based indices.
fn strip_padding(
    line: usize,
    idx: Vec<usize>,
    weight: usize,
    bound: usize,
    max: usize,
    what: &str,
) -> Result<Vec<usize>> {
    if idx.len() > max.max(weight) {
        return Err(Error::parse(line, format!("more than {max} entries")));
    }
    let ones: Vec<usize> = idx.iter().copied().filter(|&v| v != 0).collect();
    if idx[..ones.len()].contains(&0) {
        return Err(Error::parse(line, "padding zeros must come last"));
    }
    if ones.len() != weight {
        return Err(Error::parse(
            line,
            format!("expected {weight} {what} indices, found {}", ones.len()),
        ));
    }
    if let Some(&bad) = ones.iter().find(|&&v| v > bound) {
        return Err(Error::parse(line, format!("{what} index {bad} exceeds {bound}")));
    }
    Ok(ones.into_iter().map(|v| v - 1).collect())
}
