//! Exact integer matrices and the subdeterminant machinery built on them.
//!
//! Everything in here is exact. Entries are stored as `i64`; eliminations run
//! in checked `i128` and fall back to arbitrary precision when an
//! intermediate value overflows.

mod elim;
mod minors;
mod text;

pub(crate) use elim::minor_i128;
pub use elim::{column_rank, column_rank_mod_p, det, det_i128, rank, rank_mod_p};
pub use minors::{
    find_minor_exceeding, is_delta_modular, is_totally_delta_modular, max_abs_minor, row_point_count, MinorLocation,
};
pub use text::MatrixText;

use std::fmt;

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors. An empty row list gives a `0 x 0` matrix.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Dimension(format!("row {} has {} entries, expected {}", i, row.len(), cols)));
            }
            data.extend_from_slice(row);
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Builds a `rows x columns.len()` matrix from column vectors.
    pub fn from_columns<C: AsRef<[i64]>>(rows: usize, columns: &[C]) -> Result<Self> {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            let col = col.as_ref();
            if col.len() != rows {
                return Err(Error::Dimension(format!("column {} has {} entries, expected {}", j, col.len(), rows)));
            }
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        Ok(m)
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {}x{} matrix", data.len(), rows, cols)));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [i64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        IntMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    /// Horizontal concatenation `[a | b | ...]`.
    pub fn hcat(blocks: &[&IntMatrix]) -> Result<IntMatrix> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::Dimension("hcat blocks differ in row count".into()));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = IntMatrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    m.data[i * cols + offset + j] = b.get(i, j);
                }
            }
            offset += b.cols;
        }
        Ok(m)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for v in self.row_mut(i) {
            *v = -*v;
        }
    }

    pub fn negate_column(&mut self, j: usize) {
        for i in 0..self.rows {
            self.data[i * self.cols + j] = -self.data[i * self.cols + j];
        }
    }

    /// `row[target] += factor * row[source]`, failing on overflow.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: i64) -> Result<()> {
        assert_ne!(target, source);
        for j in 0..self.cols {
            let s = self.data[source * self.cols + j];
            let t = &mut self.data[target * self.cols + j];
            *t = s
                .checked_mul(factor)
                .and_then(|p| t.checked_add(p))
                .ok_or_else(|| Error::Inconsistent("i64 overflow in row operation".into()))?;
        }
        Ok(())
    }

    /// Exact product `self * other`.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += self.get(i, k) as i128 * other.get(k, j) as i128;
                }
                out.data[i * other.cols + j] =
                    i64::try_from(acc).map_err(|_| Error::Inconsistent("i64 overflow in product".into()))?;
            }
        }
        Ok(out)
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.data.iter().map(|v| v.abs()).max().unwrap_or(0)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hcat_and_transpose() {
        let a = IntMatrix::identity(2);
        let b = IntMatrix::from_rows(&[[1], [-1]]).unwrap();
        let m = IntMatrix::hcat(&[&a, &b]).unwrap();
        assert_eq!(m.rows_vec(), vec![vec![1, 0, 1], vec![0, 1, -1]]);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().row(2), &[1, -1]);
        assert_eq!(m.transpose().column(1), vec![0, 1, -1]);
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows: Vec<Vec<i64>> = vec![vec![1, 2], vec![3]];
        assert!(matches!(IntMatrix::from_rows(&rows), Err(Error::Dimension(_))));
    }

    #[test]
    #[should_panic]
    fn out_of_bounds_access_panics() {
        IntMatrix::zeros(2, 2).get(2, 0);
    }
}
