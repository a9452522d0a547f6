//! Girth of QC-LDPC codes.
//!
//! [`girth_exponent`] works on the exponent matrix alone: a cycle of length
//! `2l` in the lifted Tanner graph exists iff there is a closed alternating
//! path of `2l` finite positions, adjacent positions distinct, whose
//! alternating exponent sum is `0 mod P`. [`girth_graph`] runs breadth-first
//! search on an explicit binary matrix and serves as the reference.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ExponentMatrix;

mod cycles;
mod graph;

pub use cycles::shortest_cycle;
pub use graph::girth_graph;

pub const DEFAULT_CAP: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GirthResult {
    /// Shortest cycle length.
    Exact { value: u32 },
    /// No cycle of length at most `cap`.
    ExceedsCap { cap: u32 },
}

impl GirthResult {
    pub fn exact(&self) -> Option<u32> {
        match *self {
            GirthResult::Exact { value } => Some(value),
            GirthResult::ExceedsCap { .. } => None,
        }
    }

    /// Whether the girth is known to be at least `bound`.
    pub fn at_least(&self, bound: u32) -> bool {
        match *self {
            GirthResult::Exact { value } => value >= bound,
            GirthResult::ExceedsCap { cap } => cap + 2 >= bound,
        }
    }
}

impl Ord for GirthResult {
    fn cmp(&self, other: &Self) -> Ordering {
        use GirthResult::*;
        match (self, other) {
            (Exact { value: a }, Exact { value: b }) => a.cmp(b),
            (Exact { .. }, ExceedsCap { .. }) => Ordering::Less,
            (ExceedsCap { .. }, Exact { .. }) => Ordering::Greater,
            (ExceedsCap { cap: a }, ExceedsCap { cap: b }) => a.cmp(b),
        }
    }
}

impl PartialOrd for GirthResult {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GirthResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GirthResult::Exact { value } => write!(f, "girth={value}"),
            GirthResult::ExceedsCap { cap } => write!(f, "girth>cap={cap}"),
        }
    }
}

/// A closed alternating path of exponent-matrix positions.
///
/// Positions `k` and `k + 1` share a column when `k` is even and a row when
/// `k` is odd; the last position shares a row with the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub positions: Vec<(usize, usize)>,
    /// `sum_k (-1)^k E(positions[k])`, a multiple of `P`.
    pub alternating_sum: i64,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Re-checks the alternation structure and the zero sum against `e`.
    pub fn validate(&self, e: &ExponentMatrix) -> bool {
        let len = self.positions.len();
        if len < 4 || !len.is_multiple_of(2) {
            return false;
        }
        let mut sum = 0i64;
        for (k, &(i, j)) in self.positions.iter().enumerate() {
            if i >= e.rows() || j >= e.cols() {
                return false;
            }
            let Some(v) = e.get(i, j) else { return false };
            sum += if k % 2 == 0 { v as i64 } else { -(v as i64) };
            let (ni, nj) = self.positions[(k + 1) % len];
            if (ni, nj) == (i, j) {
                return false;
            }
            let linked = if k % 2 == 0 { nj == j } else { ni == i };
            if !linked {
                return false;
            }
        }
        sum == self.alternating_sum && sum.rem_euclid(e.lift() as i64) == 0
    }
}

impl fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self
            .positions
            .iter()
            .map(|(i, j)| format!("({i},{j})"))
            .collect();
        write!(
            f,
            "cycle length={} path={} sum={}",
            self.positions.len(),
            path.join(" "),
            self.alternating_sum
        )
    }
}

pub(crate) fn check_cap(cap: u32) -> Result<()> {
    if cap < 4 || !cap.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "girth cap must be even and at least 4, got {cap}"
        )));
    }
    Ok(())
}

/// Girth of `H(E, P)` from the cycle-sum condition.
pub fn girth_exponent(e: &ExponentMatrix, cap: u32) -> Result<GirthResult> {
    Ok(match shortest_cycle(e, cap)? {
        Some(w) => GirthResult::Exact {
            value: w.len() as u32,
        },
        None => GirthResult::ExceedsCap { cap },
    })
}

/// Whether the girth of a spliced matrix is no smaller than its base's,
/// both searched up to `cap`.
pub fn check_theorem1(base: &ExponentMatrix, spliced: &ExponentMatrix, cap: u32) -> Result<bool> {
    Ok(girth_exponent(spliced, cap)? >= girth_exponent(base, cap)?)
}
