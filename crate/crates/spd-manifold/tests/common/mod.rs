//! Independent oracles for the integration tests.
//!
//! Everything here deliberately avoids the library's production kernels:
//! the exponential is a truncated power series, eigenvalues come from
//! Householder tridiagonalization plus Sturm bisection, determinants from
//! cofactor expansion, and inverses from Gauss-Jordan elimination. Tests
//! compare the spectral production paths against these.

#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex64;
use spd_manifold::{Matrix, Scalar, SelfAdjointMatrix};

/// Truncated power series exp(M) = sum_{j<=terms} M^j / j!.
pub fn series_exp<S: Scalar>(m: &Matrix<S>, terms: usize) -> Matrix<S> {
    let n = m.rows();
    let mut sum = Matrix::<S>::identity(n);
    let mut term = Matrix::<S>::identity(n);
    for j in 1..=terms {
        term = term.mul(m).scale(1.0 / j as f64);
        sum = sum.add(&term);
        if term.norm_fro() < 1e-40 * sum.norm_fro().max(1.0) {
            break;
        }
    }
    sum
}

/// Directional-derivative oracle: the top-right n x n block of
/// exp([[T, A], [0, T]]), computed with the dense series exponential.
pub fn block_frechet_oracle<S: Scalar>(
    t: &SelfAdjointMatrix<S>,
    a: &SelfAdjointMatrix<S>,
) -> Matrix<S> {
    let n = t.dim();
    let mut block = Matrix::<S>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            block[(i, j)] = t.matrix()[(i, j)];
            block[(n + i, n + j)] = t.matrix()[(i, j)];
            block[(i, n + j)] = a.matrix()[(i, j)];
        }
    }
    let e = series_exp(&block, 120);
    Matrix::from_fn(n, n, |i, j| e[(i, n + j)])
}

/// Determinant by cofactor expansion along the first row. Exponential cost,
/// fine for the n <= 9 test sizes.
pub fn det_cofactor<S: Scalar>(m: &Matrix<S>) -> S {
    let n = m.rows();
    assert!(m.is_square() && n >= 1);
    if n == 1 {
        return m[(0, 0)];
    }
    let mut det = S::zero();
    let mut sign = 1.0;
    for k in 0..n {
        let minor = Matrix::from_fn(n - 1, n - 1, |i, j| {
            m[(i + 1, if j < k { j } else { j + 1 })]
        });
        det = det + m[(0, k)].scale(sign) * det_cofactor(&minor);
        sign = -sign;
    }
    det
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn inverse_gauss<S: Scalar>(m: &Matrix<S>) -> Matrix<S> {
    let n = m.rows();
    assert!(m.is_square());
    let mut a = m.clone();
    let mut inv = Matrix::<S>::identity(n);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| a[(r, col)].abs().total_cmp(&a[(s, col)].abs()))
            .expect("nonempty column");
        assert!(a[(pivot_row, col)].abs() > 0.0, "singular matrix in oracle");
        if pivot_row != col {
            for j in 0..n {
                let tmp = a[(col, j)];
                a[(col, j)] = a[(pivot_row, j)];
                a[(pivot_row, j)] = tmp;
                let tmp = inv[(col, j)];
                inv[(col, j)] = inv[(pivot_row, j)];
                inv[(pivot_row, j)] = tmp;
            }
        }
        let pivot = a[(col, col)];
        for j in 0..n {
            a[(col, j)] = a[(col, j)] / pivot;
            inv[(col, j)] = inv[(col, j)] / pivot;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a[(r, col)];
            if factor.abs() == 0.0 {
                continue;
            }
            for j in 0..n {
                a[(r, j)] = a[(r, j)] - factor * a[(col, j)];
                inv[(r, j)] = inv[(r, j)] - factor * inv[(col, j)];
            }
        }
    }
    inv
}

/// Eigenvalues of a real symmetric matrix by Householder tridiagonalization
/// followed by Sturm-sequence bisection, ascending. Shares no code with the
/// library's Jacobi solver.
pub fn sturm_eigenvalues_real(m: &Matrix<f64>) -> Vec<f64> {
    let n = m.rows();
    assert!(m.is_square());
    let (diag, off) = tridiagonalize(m);
    bisect_all(&diag, &off, n)
}

/// Eigenvalues of a complex Hermitian matrix H = X + iY via the real
/// symmetric embedding [[X, -Y], [Y, X]], whose spectrum is that of H with
/// every eigenvalue doubled.
pub fn sturm_eigenvalues_complex(m: &Matrix<Complex64>) -> Vec<f64> {
    let n = m.rows();
    let embed = Matrix::<f64>::from_fn(2 * n, 2 * n, |i, j| {
        let (bi, ii) = (i / n, i % n);
        let (bj, jj) = (j / n, j % n);
        let z = m[(ii, jj)];
        match (bi, bj) {
            (0, 0) | (1, 1) => z.re(),
            (0, 1) => -z.im(),
            (1, 0) => z.im(),
            _ => unreachable!(),
        }
    });
    let doubled = sturm_eigenvalues_real(&embed);
    doubled.into_iter().step_by(2).collect()
}

/// Householder reduction of a symmetric matrix to tridiagonal form;
/// returns (diagonal, sub-diagonal).
fn tridiagonalize(m: &Matrix<f64>) -> (Vec<f64>, Vec<f64>) {
    let n = m.rows();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| m[(i, j)]).collect()).collect();
    for k in 0..n.saturating_sub(2) {
        // Reflect column k below the sub-diagonal onto a multiple of e_{k+1}.
        let mut alpha = 0.0;
        for i in k + 1..n {
            alpha += a[i][k] * a[i][k];
        }
        alpha = alpha.sqrt();
        if alpha == 0.0 {
            continue;
        }
        if a[k + 1][k] > 0.0 {
            alpha = -alpha;
        }
        let mut v = vec![0.0; n];
        v[k + 1] = a[k + 1][k] - alpha;
        for i in k + 2..n {
            v[i] = a[i][k];
        }
        let vnorm_sq: f64 = v.iter().map(|x| x * x).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        // A <- (I - 2vv^T/v^Tv) A (I - 2vv^T/v^Tv)
        let mut w = vec![0.0; n];
        for i in 0..n {
            w[i] = (0..n).map(|j| a[i][j] * v[j]).sum::<f64>() * 2.0 / vnorm_sq;
        }
        let coeff = v.iter().zip(&w).map(|(x, y)| x * y).sum::<f64>() / vnorm_sq;
        for i in 0..n {
            for j in 0..n {
                a[i][j] -= v[i] * w[j] + w[i] * v[j] - 2.0 * coeff * v[i] * v[j];
            }
        }
    }
    let diag: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    let off: Vec<f64> = (0..n.saturating_sub(1)).map(|i| a[i + 1][i]).collect();
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`,
/// counted through the Sturm sequence of leading-principal-minor signs.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let n = diag.len();
    let mut count = 0;
    let mut q = 1.0f64;
    for i in 0..n {
        let off_sq = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - if i == 0 { 0.0 } else { off_sq / q };
        if q == 0.0 {
            q = 1e-300;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn bisect_all(diag: &[f64], off: &[f64], n: usize) -> Vec<f64> {
    // Gershgorin bounds of the tridiagonal matrix.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 }
            + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let width = (hi - lo).max(1e-300);
    (0..n)
        .map(|k| {
            let (mut a, mut b) = (lo - 1e-8 * width, hi + 1e-8 * width);
            for _ in 0..120 {
                let mid = 0.5 * (a + b);
                if sturm_count(diag, off, mid) <= k {
                    a = mid;
                } else {
                    b = mid;
                }
                if b - a <= 1e-15 * width {
                    break;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Least-squares slope of ln(err) against ln(step).
pub fn fit_loglog_slope(steps: &[f64], errs: &[f64]) -> f64 {
    assert_eq!(steps.len(), errs.len());
    let pts: Vec<(f64, f64)> = steps.iter().zip(errs).map(|(s, e)| (s.ln(), e.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Largest entrywise modulus of A - B.
pub fn max_abs_diff<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> f64 {
    a.sub(b).max_abs()
}

/// Frobenius distance between A and B relative to 1 + ||B||.
pub fn rel_fro_err<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> f64 {
    a.sub(b).norm_fro() / (1.0 + b.norm_fro())
}
