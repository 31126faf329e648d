//! Row-major dense f64 matrix.

use super::{for_each_row_mut, for_each_row_mut_seq};

/// Dense matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds from a row-major buffer. Panics if the length does not match.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "buffer length mismatch");
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// `self * other`. Rows of the product are computed independently, so the
    /// parallel and sequential paths agree bitwise.
    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        let (a, b) = (self, other);
        for_each_row_mut(&mut out.data, b.cols, |i, crow| {
            mul_row(a.row(i), b, crow);
        });
        out
    }

    /// Sequential twin of [`Mat::matmul`] for benchmarks.
    pub fn matmul_seq(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        let (a, b) = (self, other);
        for_each_row_mut_seq(&mut out.data, b.cols, |i, crow| {
            mul_row(a.row(i), b, crow);
        });
        out
    }

    /// `selfᵀ * other`, without materializing the transpose.
    ///
    /// Work is split over fixed 256-row chunks of the shared inner dimension
    /// and partial products are merged in chunk order, keeping the result
    /// independent of thread count.
    pub fn transpose_matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "transpose_matmul shape mismatch");
        let (p, q) = (self.cols, other.cols);
        const CHUNK: usize = 256;
        let ranges: Vec<(usize, usize)> = (0..self.rows)
            .step_by(CHUNK)
            .map(|s| (s, (s + CHUNK).min(self.rows)))
            .collect();

        let partial = |&(start, end): &(usize, usize)| -> Vec<f64> {
            let mut acc = vec![0.0; p * q];
            for k in start..end {
                let arow = self.row(k);
                let brow = other.row(k);
                for (i, &aki) in arow.iter().enumerate() {
                    if aki != 0.0 {
                        let dst = &mut acc[i * q..(i + 1) * q];
                        for (d, &bkj) in dst.iter_mut().zip(brow) {
                            *d += aki * bkj;
                        }
                    }
                }
            }
            acc
        };

        #[cfg(feature = "parallel")]
        let partials: Vec<Vec<f64>> = {
            use rayon::prelude::*;
            ranges.par_iter().map(partial).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let partials: Vec<Vec<f64>> = ranges.iter().map(partial).collect();

        let mut out = Mat::zeros(p, q);
        for part in partials {
            for (o, x) in out.data.iter_mut().zip(part) {
                *o += x;
            }
        }
        out
    }

    pub fn scale(&mut self, factor: f64) {
        for v in &mut self.data {
            *v *= factor;
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Mat, factor: f64) {
        assert_eq!(self.data.len(), other.data.len(), "shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += factor * b;
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Mat) -> f64 {
        assert_eq!(self.data.len(), other.data.len(), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if (self.get(i, j) - self.get(j, i)).abs() > tol {
                    return false;
                }
            }
        }
        true
    }
}

#[inline]
fn mul_row(arow: &[f64], b: &Mat, crow: &mut [f64]) {
    for (k, &aik) in arow.iter().enumerate() {
        if aik != 0.0 {
            let brow = b.row(k);
            for (c, &bkj) in crow.iter_mut().zip(brow) {
                *c += aik * bkj;
            }
        }
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}
