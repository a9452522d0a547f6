use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// An `N x N` array over `{0, .., N-1}` with every symbol once per row and
/// once per column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<usize>,
}

impl LatinSquare {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        validate_grid(&rows)?;
        let order = rows.len();
        Ok(Self {
            order,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    /// The square with cell `(i, j)` equal to `(i - j) mod N`.
    pub fn circulant(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidArgument(format!(
                "Latin square order must be at least 2, got {order}"
            )));
        }
        let cells = (0..order * order)
            .map(|k| (k / order + order - k % order) % order)
            .collect();
        Ok(Self { order, cells })
    }

    /// The circulant square with its rows and columns independently shuffled.
    pub fn random<R: Rng + ?Sized>(order: usize, rng: &mut R) -> Result<Self> {
        let base = Self::circulant(order)?;
        let mut row_perm: Vec<usize> = (0..order).collect();
        let mut col_perm: Vec<usize> = (0..order).collect();
        row_perm.shuffle(rng);
        col_perm.shuffle(rng);
        let cells = (0..order * order)
            .map(|k| base.get(row_perm[k / order], col_perm[k % order]))
            .collect();
        Ok(Self { order, cells })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.order + col]
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.order).map(<[usize]>::to_vec).collect()
    }
}

impl fmt::Debug for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Whether `grid` is a Latin square over `Z_N`. Non-square input is an error.
pub fn validate_latin(grid: &[Vec<usize>]) -> Result<bool> {
    let n = grid.len();
    if let Some((i, row)) = grid.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::ShapeMismatch {
            expected: format!("{n} cells per row"),
            got: format!("{} cells in row {i}", row.len()),
        });
    }
    Ok(validate_grid(grid).is_ok())
}

fn validate_grid(grid: &[Vec<usize>]) -> Result<()> {
    let n = grid.len();
    if n < 2 {
        return Err(Error::InvalidLatinSquare(format!(
            "order must be at least 2, got {n}"
        )));
    }
    let mut seen = vec![false; n];
    for (i, row) in grid.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidLatinSquare(format!(
                "row {i} has {} cells, expected {n}",
                row.len()
            )));
        }
        seen.fill(false);
        for &s in row {
            if s >= n {
                return Err(Error::InvalidLatinSquare(format!(
                    "symbol {s} in row {i} is outside Z_{n}"
                )));
            }
            if std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidLatinSquare(format!(
                    "symbol {s} repeats in row {i}"
                )));
            }
        }
    }
    for j in 0..n {
        seen.fill(false);
        for row in grid {
            if std::mem::replace(&mut seen[row[j]], true) {
                return Err(Error::InvalidLatinSquare(format!(
                    "symbol {} repeats in column {j}",
                    row[j]
                )));
            }
        }
    }
    Ok(())
}
