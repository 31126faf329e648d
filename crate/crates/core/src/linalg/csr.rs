//! Compressed sparse row matrix, used for normalized adjacencies.

use super::{for_each_row_mut, for_each_row_mut_seq, Mat};

/// Sparse matrix in CSR form. Column indices are sorted within each row.
#[derive(Debug, Clone, PartialEq)]
pub struct Csr {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    vals: Vec<f64>,
}

impl Csr {
    /// Builds from triplets. Triplets must be unique; they are sorted row-major.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(u32, u32, f64)>) -> Self {
        triplets.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut row_ptr = vec![0usize; rows + 1];
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut vals = Vec::with_capacity(triplets.len());
        for &(i, j, v) in &triplets {
            debug_assert!((i as usize) < rows && (j as usize) < cols);
            row_ptr[i as usize + 1] += 1;
            col_idx.push(j);
            vals.push(v);
        }
        for i in 0..rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        Csr {
            rows,
            cols,
            row_ptr,
            col_idx,
            vals,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Entries of row `i` as (column, value) pairs, column-sorted.
    pub fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[span.clone()]
            .iter()
            .zip(&self.vals[span])
            .map(|(&j, &v)| (j as usize, v))
    }

    /// `self * dense`, one output row per sparse row. Deterministic: each row
    /// accumulates its terms in stored column order.
    pub fn matmul_dense(&self, dense: &Mat) -> Mat {
        assert_eq!(self.cols, dense.rows(), "spmm shape mismatch");
        let mut out = Mat::zeros(self.rows, dense.cols());
        for_each_row_mut(out.as_mut_slice(), dense.cols(), |i, orow| {
            self.mul_row(i, dense, orow);
        });
        out
    }

    /// Sequential twin of [`Csr::matmul_dense`] for benchmarks.
    pub fn matmul_dense_seq(&self, dense: &Mat) -> Mat {
        assert_eq!(self.cols, dense.rows(), "spmm shape mismatch");
        let mut out = Mat::zeros(self.rows, dense.cols());
        for_each_row_mut_seq(out.as_mut_slice(), dense.cols(), |i, orow| {
            self.mul_row(i, dense, orow);
        });
        out
    }

    fn mul_row(&self, i: usize, dense: &Mat, orow: &mut [f64]) {
        for (j, v) in self.row_entries(i) {
            let drow = dense.row(j);
            for (o, &d) in orow.iter_mut().zip(drow) {
                *o += v * d;
            }
        }
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, v) in self.row_entries(i) {
                m.set(i, j, v);
            }
        }
        m
    }
}
