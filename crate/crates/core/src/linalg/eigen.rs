//! Symmetric eigendecomposition: Householder tridiagonalization followed by
//! the implicit-shift QL iteration, with accumulated transformations.
//!
//! The transform matrix is accumulated transposed (one eigenvector per row),
//! which keeps every inner loop a contiguous row operation. The reduction is
//! parallel over rows; the QL rotations are applied to row pairs. Iteration
//! order is fixed, so output is deterministic for any thread count.

use super::{for_each_row_mut, Mat};

/// Eigendecomposition of a symmetric matrix: `a = Qᵀ Λ Q` with `vectors_t`
/// holding Q (eigenvector i is row i), `values` ascending.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors_t: Mat,
}

/// Decomposes a symmetric matrix. Panics if the matrix is not square or the
/// QL iteration fails to converge (which does not happen for symmetric input
/// with finite entries).
pub fn sym_eigen(a: &Mat) -> SymEigen {
    assert_eq!(a.rows(), a.cols(), "sym_eigen needs a square matrix");
    let n = a.rows();
    if n == 0 {
        return SymEigen {
            values: Vec::new(),
            vectors_t: Mat::zeros(0, 0),
        };
    }

    let mut work = a.clone();
    let mut diag = vec![0.0; n];
    let mut sub = vec![0.0; n];
    let mut vectors_t = Mat::identity(n);

    tridiagonalize(&mut work, &mut diag, &mut sub);
    accumulate_transform(&work, &sub_householder_scales(&work, n), &mut vectors_t);
    ql_implicit(&mut diag, &mut sub, &mut vectors_t);
    sort_ascending(&mut diag, &mut vectors_t);

    SymEigen {
        values: diag,
        vectors_t,
    }
}

// Householder scales h_k were stashed on the diagonal by `tridiagonalize`.
fn sub_householder_scales(work: &Mat, n: usize) -> Vec<f64> {
    (0..n).map(|k| work.get(k, k)).collect()
}

/// Reduces `a` to tridiagonal form. On return `diag`/`sub` hold the
/// tridiagonal matrix (sub[0] = 0), row k of `a` holds the scaled Householder
/// vector for step k, and a[k][k] holds its scale factor h_k.
fn tridiagonalize(a: &mut Mat, diag: &mut [f64], sub: &mut [f64]) {
    let n = a.rows();
    sub[0] = 0.0;
    if n == 1 {
        diag[0] = a.get(0, 0);
        a.set(0, 0, 0.0);
        return;
    }

    for k in (1..n).rev() {
        let block = k; // leading block indices 0..k
        if block == 1 {
            sub[k] = a.get(k, 0);
            diag[k] = a.get(k, k);
            a.set(k, k, 0.0);
            continue;
        }

        let mut u: Vec<f64> = a.row(k)[..block].to_vec();
        let scale: f64 = u.iter().map(|v| v.abs()).sum();
        if scale == 0.0 {
            sub[k] = 0.0;
            diag[k] = a.get(k, k);
            a.set(k, k, 0.0);
            for j in 0..block {
                a.set(k, j, 0.0);
            }
            continue;
        }

        for v in &mut u {
            *v /= scale;
        }
        let mut h: f64 = u.iter().map(|v| v * v).sum();
        let f = u[block - 1];
        let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
        sub[k] = scale * g;
        h -= f * g;
        u[block - 1] = f - g;

        // p = A·u / h over the leading block, rows in parallel.
        let mut p = vec![0.0; block];
        {
            let a_ref = &*a;
            let u_ref = &u;
            for_each_row_mut(&mut p, 1, |j, pj| {
                let row = &a_ref.row(j)[..block];
                let mut acc = 0.0;
                for (m, &um) in u_ref.iter().enumerate() {
                    acc += row[m] * um;
                }
                pj[0] = acc / h;
            });
        }

        let kk: f64 = u.iter().zip(&p).map(|(x, y)| x * y).sum::<f64>() / (2.0 * h);
        let q: Vec<f64> = p.iter().zip(&u).map(|(pj, uj)| pj - kk * uj).collect();

        // Symmetric rank-2 update A ← A − u qᵀ − q uᵀ on the leading block.
        {
            let u_ref = &u;
            let q_ref = &q;
            let cols = a.cols();
            let body = &mut a.as_mut_slice()[..block * cols];
            for_each_row_mut(body, cols, |j, row| {
                let uj = u_ref[j];
                let qj = q_ref[j];
                for m in 0..block {
                    row[m] -= uj * q_ref[m] + qj * u_ref[m];
                }
            });
        }

        diag[k] = a.get(k, k);
        // Stash the Householder vector and its scale for accumulation.
        for j in 0..block {
            a.set(k, j, u[j]);
        }
        a.set(k, k, h);
    }

    diag[0] = a.get(0, 0);
    a.set(0, 0, 0.0);
}

/// Accumulates Q = H_{n-1}·…·H_2 into `w` (stored transposed: w = Qᵀ grown
/// in place from the identity).
fn accumulate_transform(a: &Mat, scales: &[f64], w: &mut Mat) {
    let n = a.rows();
    for k in 2..n {
        let h = scales[k];
        if h == 0.0 {
            continue;
        }
        let v = &a.row(k)[..k];
        // w[j] ← w[j] − (w[j]·v / h) v for each affected row j.
        let cols = w.cols();
        let body = &mut w.as_mut_slice()[..k * cols];
        for_each_row_mut(body, cols, |_, row| {
            let mut g = 0.0;
            for (m, &vm) in v.iter().enumerate() {
                g += row[m] * vm;
            }
            g /= h;
            for (m, &vm) in v.iter().enumerate() {
                row[m] -= g * vm;
            }
        });
    }
}

/// Implicit-shift QL on the tridiagonal matrix, rotating eigenvector rows.
fn ql_implicit(diag: &mut [f64], sub: &mut [f64], w: &mut Mat) {
    let n = diag.len();
    if n == 1 {
        return;
    }
    for i in 1..n {
        sub[i - 1] = sub[i];
    }
    sub[n - 1] = 0.0;

    let eps = f64::EPSILON;
    let mut shift_total = 0.0f64;
    let mut tst1 = 0.0f64;

    for l in 0..n {
        tst1 = tst1.max(diag[l].abs() + sub[l].abs());
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                if sub[m].abs() <= eps * tst1 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter < 200, "QL iteration failed to converge");

            // Wilkinson-style shift.
            let g = diag[l];
            let mut p = (diag[l + 1] - g) / (2.0 * sub[l]);
            let mut r = p.hypot(1.0);
            if p < 0.0 {
                r = -r;
            }
            diag[l] = sub[l] / (p + r);
            diag[l + 1] = sub[l] * (p + r);
            let dl1 = diag[l + 1];
            let mut h = g - diag[l];
            for i in (l + 2)..n {
                diag[i] -= h;
            }
            shift_total += h;

            // Implicit QL sweep from m-1 down to l.
            p = diag[m];
            let mut c = 1.0;
            let mut c2 = c;
            let mut c3 = c;
            let el1 = sub[l + 1];
            let mut s = 0.0;
            let mut s2 = 0.0;
            for i in (l..m).rev() {
                c3 = c2;
                c2 = c;
                s2 = s;
                let gi = c * sub[i];
                h = c * p;
                r = p.hypot(sub[i]);
                sub[i + 1] = s * r;
                s = sub[i] / r;
                c = p / r;
                p = c * diag[i] - s * gi;
                diag[i + 1] = h + s * (c * gi + s * diag[i]);

                rotate_rows(w, i, c, s);
            }
            p = -s * s2 * c3 * el1 * sub[l] / dl1;
            sub[l] = s * p;
            diag[l] = c * p;

            if sub[l].abs() <= eps * tst1 {
                break;
            }
        }
        diag[l] += shift_total;
        sub[l] = 0.0;
    }
}

/// Applies a Givens rotation to eigenvector rows i and i+1.
#[inline]
fn rotate_rows(w: &mut Mat, i: usize, c: f64, s: f64) {
    let cols = w.cols();
    let (top, bottom) = w.as_mut_slice().split_at_mut((i + 1) * cols);
    let row_i = &mut top[i * cols..];
    let row_i1 = &mut bottom[..cols];
    for (a, b) in row_i.iter_mut().zip(row_i1.iter_mut()) {
        let h = *b;
        *b = s * *a + c * h;
        *a = c * *a - s * h;
    }
}

fn sort_ascending(values: &mut [f64], w: &mut Mat) {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j)));
    let sorted_vals: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    values.copy_from_slice(&sorted_vals);
    let mut sorted = Mat::zeros(n, w.cols());
    for (dst, &src) in order.iter().enumerate() {
        sorted.row_mut(dst).copy_from_slice(w.row(src));
    }
    *w = sorted;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use rand::Rng;

    fn random_symmetric(n: usize, seed: u64) -> Mat {
        let mut r = rng::stream(seed, "eigen-test");
        let mut a = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v: f64 = r.gen_range(-1.0..1.0);
                a.set(i, j, v);
                a.set(j, i, v);
            }
        }
        a
    }

    fn check_decomposition(a: &Mat, eig: &SymEigen, tol: f64) {
        let n = a.rows();
        // Residual ‖A v − λ v‖ per pair.
        for k in 0..n {
            let v = eig.vectors_t.row(k);
            for i in 0..n {
                let mut av = 0.0;
                for j in 0..n {
                    av += a.get(i, j) * v[j];
                }
                assert!(
                    (av - eig.values[k] * v[i]).abs() < tol,
                    "residual too large at pair {k}, entry {i}"
                );
            }
        }
        // Orthonormal rows.
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = eig
                    .vectors_t
                    .row(i)
                    .iter()
                    .zip(eig.vectors_t.row(j))
                    .map(|(a, b)| a * b)
                    .sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < tol, "orthonormality failed at ({i},{j})");
            }
        }
    }

    #[test]
    fn diagonal_matrix() {
        let a = Mat::from_rows(&[&[3.0, 0.0], &[0.0, -1.0]]);
        let eig = sym_eigen(&a);
        assert!((eig.values[0] + 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 3.0).abs() < 1e-14);
        check_decomposition(&a, &eig, 1e-12);
    }

    #[test]
    fn triangle_graph_spectrum() {
        // Complete graph on 3 nodes: eigenvalues 2, -1, -1.
        let a = Mat::from_rows(&[&[0.0, 1.0, 1.0], &[1.0, 0.0, 1.0], &[1.0, 1.0, 0.0]]);
        let eig = sym_eigen(&a);
        assert!((eig.values[0] + 1.0).abs() < 1e-12);
        assert!((eig.values[1] + 1.0).abs() < 1e-12);
        assert!((eig.values[2] - 2.0).abs() < 1e-12);
        check_decomposition(&a, &eig, 1e-10);
    }

    #[test]
    fn zero_matrix() {
        let a = Mat::zeros(4, 4);
        let eig = sym_eigen(&a);
        assert!(eig.values.iter().all(|&v| v == 0.0));
        check_decomposition(&a, &eig, 1e-14);
    }

    #[test]
    fn single_element() {
        let a = Mat::from_rows(&[&[5.0]]);
        let eig = sym_eigen(&a);
        assert_eq!(eig.values, vec![5.0]);
        assert_eq!(eig.vectors_t.get(0, 0), 1.0);
    }

    #[test]
    fn random_matrices_decompose() {
        for (i, &n) in [2usize, 3, 5, 8, 17, 40].iter().enumerate() {
            let a = random_symmetric(n, i as u64);
            let eig = sym_eigen(&a);
            check_decomposition(&a, &eig, 1e-9);
            // Ascending order.
            for w in eig.values.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn deterministic_across_calls() {
        let a = random_symmetric(23, 99);
        let e1 = sym_eigen(&a);
        let e2 = sym_eigen(&a);
        assert_eq!(e1.values, e2.values);
        assert_eq!(e1.vectors_t, e2.vectors_t);
    }
}
