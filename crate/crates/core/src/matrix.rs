//! Dense square matrices and the row/column surgery used by the permanent
//! identities.
//!
//! Indices are 0-based here. Text formats and the command line use 1-based
//! indices (row 1 is the first row) and convert at the boundary.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Dense `n x n` matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix<R> {
    order: usize,
    entries: Vec<R>,
}

impl<R: Ring> SquareMatrix<R> {
    /// Builds a matrix from row-major entries; `entries.len()` must be a
    /// nonzero perfect square equal to `order * order`.
    pub fn new(order: usize, entries: Vec<R>) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != order * order {
            return Err(Error::NotSquare {
                expected: order * order,
                found: entries.len(),
            });
        }
        Ok(SquareMatrix { order, entries })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::NotSquare {
                    expected: order * order,
                    found: row.len() * order,
                });
            }
            entries.extend(row);
        }
        Ok(SquareMatrix { order, entries })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> R) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyMatrix);
        }
        let entries = (0..order * order)
            .map(|k| f(k / order, k % order))
            .collect();
        Ok(SquareMatrix { order, entries })
    }

    pub fn identity(order: usize) -> Result<Self> {
        Self::from_fn(order, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> &R {
        &self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[R] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[R]> {
        self.entries.chunks(self.order)
    }

    /// The minor with the given rows and columns deleted, surviving rows and
    /// columns kept in their original relative order.
    pub fn remove_rows_cols(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::RemovalMismatch {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        let drop_rows = self.index_mask(rows)?;
        let drop_cols = self.index_mask(cols)?;
        let kept = self.order - rows.len();
        if kept == 0 {
            return Err(Error::RemovesEverything(self.order));
        }
        let mut entries = Vec::with_capacity(kept * kept);
        for (i, row) in self.rows().enumerate() {
            if drop_rows[i] {
                continue;
            }
            entries.extend(
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| !drop_cols[*j])
                    .map(|(_, v)| v.clone()),
            );
        }
        Ok(SquareMatrix {
            order: kept,
            entries,
        })
    }

    fn index_mask(&self, indices: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.order];
        for &i in indices {
            if i >= self.order {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    order: self.order,
                });
            }
            if std::mem::replace(&mut mask[i], true) {
                return Err(Error::DuplicateIndex(i));
            }
        }
        Ok(mask)
    }

    pub fn transpose(&self) -> Self {
        let n = self.order;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        SquareMatrix { order: n, entries }
    }

    /// Returns `B` with `B[i][j] = A[row_perm[i]][col_perm[j]]`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        self.check_permutation(row_perm)?;
        self.check_permutation(col_perm)?;
        let n = self.order;
        let entries = (0..n * n)
            .map(|k| self.get(row_perm[k / n], col_perm[k % n]).clone())
            .collect();
        Ok(SquareMatrix { order: n, entries })
    }

    fn check_permutation(&self, perm: &[usize]) -> Result<()> {
        if perm.len() != self.order {
            return Err(Error::NotPermutation(self.order));
        }
        let mut seen = vec![false; self.order];
        for &p in perm {
            if p >= self.order || std::mem::replace(&mut seen[p], true) {
                return Err(Error::NotPermutation(self.order));
            }
        }
        Ok(())
    }

    pub fn scale_row(&self, row: usize, s: &R) -> Result<Self> {
        if row >= self.order {
            return Err(Error::IndexOutOfRange {
                index: row,
                order: self.order,
            });
        }
        let mut out = self.clone();
        for v in &mut out.entries[row * self.order..(row + 1) * self.order] {
            *v = v.mul(s);
        }
        Ok(out)
    }

    /// Entry-wise comparison under the ring's equality.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.approx_eq(b))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> SquareMatrix<S> {
        SquareMatrix {
            order: self.order,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<R: fmt::Debug> fmt::Debug for SquareMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.entries.chunks(self.order))
            .finish()
    }
}

/// Set of column indices `0..n` packed in a bitmask.
///
/// Keys the Store-zechin memo table and names the subsets visited by Ryser.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnSubset {
    mask: u64,
    size: u32,
}

impl ColumnSubset {
    pub const MAX_WIDTH: usize = 63;

    pub fn empty() -> Self {
        ColumnSubset { mask: 0, size: 0 }
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::MAX_WIDTH);
        Self::from_mask((1u64 << n) - 1)
    }

    pub fn from_mask(mask: u64) -> Self {
        ColumnSubset {
            mask,
            size: mask.count_ones(),
        }
    }

    pub fn mask(self) -> u64 {
        self.mask
    }

    pub fn len(self) -> usize {
        self.size as usize
    }

    pub fn is_empty(self) -> bool {
        self.size == 0
    }

    pub fn contains(self, col: usize) -> bool {
        self.mask >> col & 1 == 1
    }

    pub fn with(self, col: usize) -> Self {
        Self::from_mask(self.mask | 1 << col)
    }

    pub fn without(self, col: usize) -> Self {
        Self::from_mask(self.mask & !(1 << col))
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.mask;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let low = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(low)
        })
    }
}
