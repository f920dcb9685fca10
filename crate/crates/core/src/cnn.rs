//! The 8-cell clipped neural network: ±1 cells coupled by a sparse symmetric
//! matrix of ±1 weights.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

pub const CELL_COUNT: usize = 8;

/// Column offsets (mod 8) of the non-zero weights in each row. Offsets +1 and
/// -1 mirror each other and +4 is its own mirror, so the pattern is symmetric.
pub const NEIGHBOUR_OFFSETS: [usize; 3] = [1, CELL_COUNT - 1, 4];

/// Cell states S0..S7, each exactly -1 or +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cells([i8; CELL_COUNT]);

impl Cells {
    pub fn new(states: [i8; CELL_COUNT]) -> Result<Self, Error> {
        if let Some(bad) = states.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidKey(format!(
                "cell state {bad} is not -1 or +1"
            )));
        }
        Ok(Cells(states))
    }

    /// Builds cells from 8 bits, most significant bit first; a set bit is +1.
    pub fn from_byte(byte: u8) -> Self {
        let mut states = [-1; CELL_COUNT];
        for (j, s) in states.iter_mut().enumerate() {
            if byte >> (7 - j) & 1 == 1 {
                *s = 1;
            }
        }
        Cells(states)
    }

    /// The byte `sum_j ((S_j + 1) / 2) * 2^(7 - j)`; S0 is the most
    /// significant bit.
    pub fn to_byte(&self) -> u8 {
        self.0
            .iter()
            .fold(0u8, |acc, &s| (acc << 1) | u8::from(s == 1))
    }

    pub fn states(&self) -> [i8; CELL_COUNT] {
        self.0
    }

    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }
}

/// Renders as 8 characters of `+` / `-`.
impl fmt::Display for Cells {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for Cells {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != CELL_COUNT {
            return Err(Error::InvalidKey(format!(
                "cells must be {CELL_COUNT} characters of '+' or '-', got {s:?}"
            )));
        }
        let mut states = [0i8; CELL_COUNT];
        for (slot, c) in states.iter_mut().zip(chars) {
            *slot = match c {
                '+' => 1,
                '-' => -1,
                other => {
                    return Err(Error::InvalidKey(format!(
                        "unexpected cell character {other:?}"
                    )))
                }
            };
        }
        Ok(Cells(states))
    }
}

/// Symmetric 8×8 weight matrix with zero diagonal and exactly three non-zero
/// (±1) entries per row at the [`NEIGHBOUR_OFFSETS`] positions.
///
/// Only signs ever change; the sparsity pattern is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightMatrix([[i8; CELL_COUNT]; CELL_COUNT]);

impl WeightMatrix {
    /// The public starting matrix: every non-zero weight is +1.
    pub fn canonical() -> Self {
        let mut w = [[0i8; CELL_COUNT]; CELL_COUNT];
        for (i, row) in w.iter_mut().enumerate() {
            for off in NEIGHBOUR_OFFSETS {
                row[(i + off) % CELL_COUNT] = 1;
            }
        }
        WeightMatrix(w)
    }

    pub fn is_structural_neighbour(i: usize, j: usize) -> bool {
        NEIGHBOUR_OFFSETS
            .iter()
            .any(|off| (i + off) % CELL_COUNT == j)
    }

    /// Accepts a matrix only if it has the fixed sparsity pattern, ±1 on it,
    /// and is symmetric.
    pub fn from_rows(rows: [[i8; CELL_COUNT]; CELL_COUNT]) -> Result<Self, Error> {
        let m = WeightMatrix(rows);
        if m.is_well_formed() {
            Ok(m)
        } else {
            Err(Error::InvalidKey("malformed weight matrix".into()))
        }
    }

    pub fn is_well_formed(&self) -> bool {
        for i in 0..CELL_COUNT {
            let mut non_zero = 0;
            for j in 0..CELL_COUNT {
                let w = self.0[i][j];
                if w != self.0[j][i] {
                    return false;
                }
                if Self::is_structural_neighbour(i, j) {
                    if w != 1 && w != -1 {
                        return false;
                    }
                    non_zero += 1;
                } else if w != 0 {
                    return false;
                }
            }
            if non_zero != NEIGHBOUR_OFFSETS.len() {
                return false;
            }
        }
        true
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.0[i][j]
    }

    pub fn rows(&self) -> [[i8; CELL_COUNT]; CELL_COUNT] {
        self.0
    }

    /// `sum_j w[i][j] * S_j` for every row.
    pub fn weighted_sums(&self, cells: &Cells) -> [i8; CELL_COUNT] {
        let mut sums = [0i8; CELL_COUNT];
        for (i, sum) in sums.iter_mut().enumerate() {
            *sum = self.0[i]
                .iter()
                .zip(cells.0.iter())
                .map(|(w, s)| w * s)
                .sum();
        }
        sums
    }

    /// For each `i` in ascending order whose cell disagrees with its control
    /// bit, negates every non-zero weight in row `i` and its mirror in column
    /// `i`. A weight joining two disagreeing cells is negated twice and so
    /// ends up unchanged.
    pub fn update(&mut self, cells: &Cells, control: &Cells) {
        for i in 0..CELL_COUNT {
            if cells.0[i] == control.0[i] {
                continue;
            }
            for j in 0..CELL_COUNT {
                if self.0[i][j] != 0 {
                    self.0[i][j] = -self.0[i][j];
                    if i != j {
                        self.0[j][i] = -self.0[j][i];
                    }
                }
            }
        }
    }
}

impl Default for WeightMatrix {
    fn default() -> Self {
        Self::canonical()
    }
}

/// Synchronous update: every new cell is the sign of its weighted sum over the
/// old cell vector. Also returns the weighted sums.
///
/// # Panics
///
/// If a weighted sum is zero, which a well-formed matrix cannot produce (three
/// ±1 terms always sum to an odd number).
pub fn evolve(cells: &Cells, weights: &WeightMatrix) -> (Cells, [i8; CELL_COUNT]) {
    let sums = weights.weighted_sums(cells);
    let mut next = [0i8; CELL_COUNT];
    for (n, &s) in next.iter_mut().zip(sums.iter()) {
        assert!(s != 0, "zero weighted sum in clipped network");
        *n = s.signum();
    }
    (Cells(next), sums)
}
