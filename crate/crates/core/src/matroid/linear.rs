//! Linear matroids over the rationals with fraction-free rank computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::elems::ElemSet;
use crate::error::{Error, Result};
use crate::weights::Rational;

/// A matrix over the rationals whose columns form the ground set.
///
/// Rows are scaled to integers at construction (scaling a row by a nonzero
/// constant changes no column-subset rank), so rank queries can run
/// fraction-free Bareiss elimination over big integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMatroid {
    rows: Vec<Vec<BigInt>>,
    ncols: usize,
}

impl LinearMatroid {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidParameter("matrix rows have unequal lengths".into()));
        }
        let scaled = rows
            .into_iter()
            .map(|row| {
                let lcm =
                    row.iter().map(|x| x.denom().clone()).fold(BigInt::one(), |acc, d| acc.lcm(&d));
                row.into_iter()
                    .map(|x| {
                        let scale = &lcm / x.denom();
                        x.numer() * scale
                    })
                    .collect()
            })
            .collect();
        Ok(LinearMatroid { rows: scaled, ncols })
    }

    pub fn ground_size(&self) -> usize {
        self.ncols
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// The integer-scaled rows (row-scaling preserves all column ranks).
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn columns_independent(&self, cols: &ElemSet) -> bool {
        self.column_rank(cols) == cols.len()
    }

    /// Rank of the submatrix formed by the selected columns, by Bareiss
    /// fraction-free Gaussian elimination.
    pub fn column_rank(&self, cols: &ElemSet) -> usize {
        let selected: Vec<usize> = cols.iter().collect();
        if selected.is_empty() {
            return 0;
        }
        let mut m: Vec<Vec<BigInt>> =
            self.rows.iter().map(|row| selected.iter().map(|&c| row[c].clone()).collect()).collect();
        let nrows = m.len();
        let ncols = selected.len();
        let mut rank = 0;
        let mut prev_pivot = BigInt::one();
        let mut col = 0;
        while rank < nrows && col < ncols {
            // Find a pivot row for this column.
            let pivot_row = (rank..nrows).find(|&r| !m[r][col].is_zero());
            let Some(pivot_row) = pivot_row else {
                col += 1;
                continue;
            };
            m.swap(rank, pivot_row);
            let pivot = m[rank][col].clone();
            for r in rank + 1..nrows {
                for c in col + 1..ncols {
                    let val = (&m[r][c] * &pivot - &m[r][col] * &m[rank][c]) / &prev_pivot;
                    m[r][c] = val;
                }
                m[r][col] = BigInt::zero();
            }
            prev_pivot = pivot.abs();
            rank += 1;
            col += 1;
        }
        rank
    }
}
