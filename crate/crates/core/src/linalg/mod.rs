//! Dense and sparse matrix kernels.
//!
//! Everything here is deterministic: parallel loops split work over disjoint
//! output rows (or fixed-size chunks merged in a fixed order), so results are
//! bit-identical whether the `parallel` feature is on or off, and for any
//! thread count.

mod csr;
mod eigen;
mod mat;

pub use csr::Csr;
pub use eigen::{sym_eigen, SymEigen};
pub use mat::Mat;

/// Applies `f` to each row of a row-major buffer, in parallel when the
/// `parallel` feature is enabled.
pub(crate) fn for_each_row_mut<F>(data: &mut [f64], cols: usize, f: F)
where
    F: Fn(usize, &mut [f64]) + Sync + Send,
{
    if cols == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        data.par_chunks_mut(cols).enumerate().for_each(|(i, row)| f(i, row));
    }
    #[cfg(not(feature = "parallel"))]
    {
        for (i, row) in data.chunks_mut(cols).enumerate() {
            f(i, row);
        }
    }
}

/// Sequential twin of [`for_each_row_mut`], kept available for benchmarks
/// comparing the two paths.
pub fn for_each_row_mut_seq<F>(data: &mut [f64], cols: usize, mut f: F)
where
    F: FnMut(usize, &mut [f64]),
{
    if cols == 0 {
        return;
    }
    for (i, row) in data.chunks_mut(cols).enumerate() {
        f(i, row);
    }
}
