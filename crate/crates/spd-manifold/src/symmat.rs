//! Self-adjoint matrix kernels over `R` and `C`: eigendecomposition by
//! cyclic Jacobi rotations, spectral matrix functions (exp, log, sqrt),
//! congruence `A -> T* A T`, the flat trace inner product, and the exact
//! Frechet derivative of the matrix exponential.
//!
//! Every matrix function is evaluated spectrally, `f(P) = Q f(L) Q*`, never
//! by power series; for self-adjoint input the eigendecomposition is
//! unconditionally stable and the spectral route is accurate for any
//! eigenvalue spread the exponential itself can represent.

use crate::error::{Error, Result};
use crate::mat::Matrix;
use crate::scalar::{Field, Scalar};
use crate::tolerances;

/// Self-adjoint matrix: symmetric over `R`, Hermitian over `C`.
///
/// The constructor replaces its input by the self-adjoint part
/// `(M + M*)/2`, which is exactly self-adjoint in floating point, and the
/// invariant `M == M*` holds bit-for-bit from then on.
#[derive(Clone, Debug, PartialEq)]
pub struct SelfAdjointMatrix<S: Scalar> {
    mat: Matrix<S>,
}

impl<S: Scalar> SelfAdjointMatrix<S> {
    pub fn new(m: Matrix<S>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                context: "self-adjoint matrix must be square",
                left: m.rows(),
                right: m.cols(),
            });
        }
        if m.rows() == 0 {
            return Err(Error::DimensionMismatch {
                context: "matrix dimension must be at least 1",
                left: 0,
                right: 1,
            });
        }
        let n = m.rows();
        let sym = Matrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()).scale(0.5));
        let residual = sym.sub(&sym.adjoint()).norm_fro();
        assert_eq!(residual, 0.0, "symmetrization must be exact");
        Ok(SelfAdjointMatrix { mat: sym })
    }

    pub fn from_row_major(dim: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                context: "row-major data length",
                left: data.len(),
                right: dim * dim,
            });
        }
        Self::new(Matrix::from_row_major(dim, dim, data))
    }

    pub fn zeros(dim: usize) -> Self {
        SelfAdjointMatrix {
            mat: Matrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        SelfAdjointMatrix {
            mat: Matrix::identity(dim),
        }
    }

    /// Wrap a matrix that is already exactly self-adjoint (bit-for-bit).
    pub(crate) fn from_exact(mat: Matrix<S>) -> Self {
        debug_assert_eq!(mat.sub(&mat.adjoint()).norm_fro(), 0.0);
        SelfAdjointMatrix { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn field(&self) -> Field {
        S::FIELD
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.mat
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.mat[(i, j)]
    }

    pub fn norm_fro(&self) -> f64 {
        self.mat.norm_fro()
    }

    /// Trace; real because the diagonal of a self-adjoint matrix is real.
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.mat[(i, i)].re()).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        SelfAdjointMatrix {
            mat: self.mat.scale(s),
        }
    }
}

impl<S: Scalar> std::ops::Add for &SelfAdjointMatrix<S> {
    type Output = SelfAdjointMatrix<S>;

    fn add(self, rhs: &SelfAdjointMatrix<S>) -> SelfAdjointMatrix<S> {
        SelfAdjointMatrix {
            mat: self.mat.add(&rhs.mat),
        }
    }
}

impl<S: Scalar> std::ops::Sub for &SelfAdjointMatrix<S> {
    type Output = SelfAdjointMatrix<S>;

    fn sub(self, rhs: &SelfAdjointMatrix<S>) -> SelfAdjointMatrix<S> {
        SelfAdjointMatrix {
            mat: self.mat.sub(&rhs.mat),
        }
    }
}

/// Eigendecomposition of a self-adjoint matrix.
///
/// Eigenvalues are real and sorted ascending. Eigenvector columns are
/// orthonormal and deterministically normalized: the entry of largest
/// modulus in each column (first such index on ties) is made positive real.
#[derive(Clone, Debug)]
pub struct EigenPair<S: Scalar> {
    eigenvalues: Vec<f64>,
    eigenvectors: Matrix<S>,
}

impl<S: Scalar> EigenPair<S> {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Matrix<S> {
        &self.eigenvectors
    }

    pub fn into_parts(self) -> (Vec<f64>, Matrix<S>) {
        (self.eigenvalues, self.eigenvectors)
    }
}

/// Symmetric positive-definite (or Hermitian positive-definite) matrix with
/// its eigendecomposition cached at construction. Immutable afterwards.
#[derive(Clone, Debug)]
pub struct SpdMatrix<S: Scalar> {
    sym: SelfAdjointMatrix<S>,
    eig: EigenPair<S>,
}

impl<S: Scalar> SpdMatrix<S> {
    /// Validate positive-definiteness against the default relative floor
    /// `lambda_min > EPS_PD_REL * max|lambda|`.
    pub fn new(sym: SelfAdjointMatrix<S>) -> Result<Self> {
        Self::with_floor(sym, tolerances::EPS_PD_REL)
    }

    pub fn with_floor(sym: SelfAdjointMatrix<S>, floor_rel: f64) -> Result<Self> {
        let eig = sym_eig(&sym)?;
        let max_abs = eig
            .eigenvalues
            .iter()
            .fold(0.0f64, |m, &l| m.max(l.abs()));
        let floor = floor_rel * max_abs;
        let min = eig.eigenvalues[0];
        // The comparison is written to also reject NaN eigenvalues.
        if min <= floor || min.is_nan() {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: min,
                floor,
            });
        }
        Ok(SpdMatrix { sym, eig })
    }

    pub fn from_matrix(m: Matrix<S>) -> Result<Self> {
        Self::new(SelfAdjointMatrix::new(m)?)
    }

    pub fn identity(dim: usize) -> Self {
        SpdMatrix {
            sym: SelfAdjointMatrix::identity(dim),
            eig: EigenPair {
                eigenvalues: vec![1.0; dim],
                eigenvectors: Matrix::identity(dim),
            },
        }
    }

    /// Rebuild `Q diag(vals) Q*` from an existing orthonormal eigenbasis.
    /// Used by the spectral functions so that e.g. `mat_exp` does not run a
    /// second eigendecomposition on its own output. `vals` must be strictly
    /// positive; they are re-sorted ascending together with the columns.
    pub(crate) fn from_eigen(basis: &Matrix<S>, vals: Vec<f64>) -> Self {
        let n = basis.rows();
        debug_assert!(vals.iter().all(|&v| v > 0.0));
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
        let eigenvalues: Vec<f64> = idx.iter().map(|&i| vals[i]).collect();
        let eigenvectors = Matrix::from_fn(n, n, |i, j| basis[(i, idx[j])]);
        let scaled = scale_columns(&eigenvectors, &eigenvalues);
        let raw = scaled.mul(&eigenvectors.adjoint());
        let sym = Matrix::from_fn(n, n, |i, j| (raw[(i, j)] + raw[(j, i)].conj()).scale(0.5));
        SpdMatrix {
            sym: SelfAdjointMatrix::from_exact(sym),
            eig: EigenPair {
                eigenvalues,
                eigenvectors,
            },
        }
    }

    pub fn dim(&self) -> usize {
        self.sym.dim()
    }

    pub fn field(&self) -> Field {
        S::FIELD
    }

    pub fn as_self_adjoint(&self) -> &SelfAdjointMatrix<S> {
        &self.sym
    }

    pub fn matrix(&self) -> &Matrix<S> {
        self.sym.matrix()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eig.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Matrix<S> {
        &self.eig.eigenvectors
    }

    /// Determinant, as the product of the cached eigenvalues.
    pub fn det(&self) -> f64 {
        self.eig.eigenvalues.iter().product()
    }

    pub fn trace(&self) -> f64 {
        self.sym.trace()
    }

    pub fn norm_fro(&self) -> f64 {
        self.sym.norm_fro()
    }

    /// Ratio of the largest to the smallest eigenvalue.
    pub fn condition_number(&self) -> f64 {
        let n = self.eig.eigenvalues.len();
        self.eig.eigenvalues[n - 1] / self.eig.eigenvalues[0]
    }

    /// `Q f(L) Q*` as a plain matrix.
    pub fn spectral_map(&self, f: impl Fn(f64) -> f64) -> Matrix<S> {
        let vals: Vec<f64> = self.eig.eigenvalues.iter().map(|&l| f(l)).collect();
        scale_columns(&self.eig.eigenvectors, &vals).mul(&self.eig.eigenvectors.adjoint())
    }

    pub fn inverse_matrix(&self) -> Matrix<S> {
        self.spectral_map(|l| 1.0 / l)
    }
}

pub(crate) fn scale_columns<S: Scalar>(m: &Matrix<S>, by: &[f64]) -> Matrix<S> {
    Matrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].scale(by[j]))
}

/// Eigendecomposition of a self-adjoint matrix by the cyclic Jacobi method.
///
/// Sweeps run until the off-diagonal Frobenius mass drops below
/// `OFF_DIAG_REL * ||S||_F`, at most `MAX_SWEEPS` times; non-convergence is
/// reported with the residual attached. The factors are validated before
/// return: `||Q*Q - I||_F <= TOL_ORTH` and the reconstruction
/// `||Q L Q* - S||_F <= TOL_RECON * ||S||_F`.
pub fn sym_eig<S: Scalar>(s: &SelfAdjointMatrix<S>) -> Result<EigenPair<S>> {
    let n = s.dim();
    let mut a = s.matrix().clone();
    let mut q = Matrix::<S>::identity(n);
    let norm = a.norm_fro();
    let tol = tolerances::OFF_DIAG_REL * norm;

    let mut converged = false;
    for sweep in 0..=tolerances::MAX_SWEEPS {
        let off = off_diagonal_mass(&a);
        if off <= tol {
            converged = true;
            break;
        }
        if sweep == tolerances::MAX_SWEEPS {
            return Err(Error::EigenNonConvergence {
                sweeps: tolerances::MAX_SWEEPS,
                residual: off,
            });
        }
        for p in 0..n.saturating_sub(1) {
            for r in (p + 1)..n {
                jacobi_rotate(&mut a, &mut q, p, r);
            }
        }
    }
    debug_assert!(converged);

    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re()).collect();
    let (eigenvalues, eigenvectors) = sort_and_normalize(&diag, &q);

    let orth = eigenvectors
        .adjoint()
        .mul(&eigenvectors)
        .sub(&Matrix::identity(n))
        .norm_fro();
    if orth > tolerances::TOL_ORTH {
        return Err(Error::EigenReconstruction {
            residual: orth,
            tol: tolerances::TOL_ORTH,
        });
    }
    let recon = scale_columns(&eigenvectors, &eigenvalues)
        .mul(&eigenvectors.adjoint())
        .sub(s.matrix())
        .norm_fro();
    if recon > tolerances::TOL_RECON * norm {
        return Err(Error::EigenReconstruction {
            residual: recon,
            tol: tolerances::TOL_RECON * norm,
        });
    }

    Ok(EigenPair {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_mass<S: Scalar>(a: &Matrix<S>) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let m = a[(i, j)].abs();
                sum += m * m;
            }
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation annihilating the (p, r) entry.
///
/// With `alpha = A[p][p]`, `gamma = A[r][r]`, `beta = A[p][r] = |beta| u`,
/// the plane rotation `U = [[c, -s u], [s conj(u), c]]` is unitary, and
/// `U* A U` has zero (p, r) entry when `t = tan` satisfies
/// `t^2 - 2 theta t - 1 = 0`, `theta = (gamma - alpha) / (2 |beta|)`.
/// The smaller root keeps the rotation angle below pi/4.
fn jacobi_rotate<S: Scalar>(a: &mut Matrix<S>, q: &mut Matrix<S>, p: usize, r: usize) {
    let beta = a[(p, r)];
    let absb = beta.abs();
    if absb == 0.0 {
        return;
    }
    let alpha = a[(p, p)].re();
    let gamma = a[(r, r)].re();
    let phase = beta.scale(1.0 / absb);
    let theta = (gamma - alpha) / (2.0 * absb);
    let t = if theta.abs() > 1e10 {
        -1.0 / (2.0 * theta)
    } else if theta >= 0.0 {
        -1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let su = phase.scale(s);
    let suc = phase.conj().scale(s);

    let n = a.rows();
    // A <- U* A
    for j in 0..n {
        let apj = a[(p, j)];
        let arj = a[(r, j)];
        a[(p, j)] = apj.scale(c) + su * arj;
        a[(r, j)] = arj.scale(c) - suc * apj;
    }
    // A <- A U, and accumulate Q <- Q U
    for i in 0..n {
        let aip = a[(i, p)];
        let air = a[(i, r)];
        a[(i, p)] = aip.scale(c) + suc * air;
        a[(i, r)] = air.scale(c) - su * aip;
        let qip = q[(i, p)];
        let qir = q[(i, r)];
        q[(i, p)] = qip.scale(c) + suc * qir;
        q[(i, r)] = qir.scale(c) - su * qip;
    }
    // The (p, r) entry is zero and the worked diagonal is real by
    // construction; write both exactly to stop rounding residue from
    // accumulating over sweeps.
    a[(p, r)] = S::zero();
    a[(r, p)] = S::zero();
    a[(p, p)] = S::from_re(a[(p, p)].re());
    a[(r, r)] = S::from_re(a[(r, r)].re());
}

fn sort_and_normalize<S: Scalar>(diag: &[f64], q: &Matrix<S>) -> (Vec<f64>, Matrix<S>) {
    let n = diag.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let eigenvalues: Vec<f64> = idx.iter().map(|&i| diag[i]).collect();
    let mut vecs = Matrix::zeros(n, n);
    for (new_col, &old_col) in idx.iter().enumerate() {
        let mut pivot_row = 0;
        let mut pivot_mag = -1.0;
        for i in 0..n {
            let m = q[(i, old_col)].abs();
            if m > pivot_mag {
                pivot_mag = m;
                pivot_row = i;
            }
        }
        let pivot = q[(pivot_row, old_col)];
        let unit = if pivot_mag == 0.0 {
            S::one()
        } else {
            pivot.conj().scale(1.0 / pivot_mag)
        };
        for i in 0..n {
            vecs[(i, new_col)] = q[(i, old_col)] * unit;
        }
    }
    (eigenvalues, vecs)
}

/// Matrix exponential of a self-adjoint matrix; the result is self-adjoint
/// and positive-definite, with `det(exp S) = e^{tr S}`.
pub fn mat_exp<S: Scalar>(s: &SelfAdjointMatrix<S>) -> Result<SpdMatrix<S>> {
    let eig = sym_eig(s)?;
    let vals = eig.eigenvalues().iter().map(|&l| l.exp()).collect();
    Ok(SpdMatrix::from_eigen(eig.eigenvectors(), vals))
}

/// Matrix logarithm of a positive-definite matrix, the inverse of
/// [`mat_exp`]. Uses the eigendecomposition cached in the argument, so it
/// cannot fail.
pub fn mat_log<S: Scalar>(p: &SpdMatrix<S>) -> SelfAdjointMatrix<S> {
    let n = p.dim();
    let raw = p.spectral_map(f64::ln);
    let sym = Matrix::from_fn(n, n, |i, j| (raw[(i, j)] + raw[(j, i)].conj()).scale(0.5));
    SelfAdjointMatrix::from_exact(sym)
}

/// Principal (positive-definite) square root.
pub fn mat_sqrt<S: Scalar>(p: &SpdMatrix<S>) -> SpdMatrix<S> {
    let vals = p.eigenvalues().iter().map(|&l| l.sqrt()).collect();
    SpdMatrix::from_eigen(p.eigenvectors(), vals)
}

/// Congruence action `A -> T* A T` of an invertible `T` on self-adjoint
/// matrices. Rejects `T` whose determinant falls below the relative
/// invertibility floor.
pub fn congruence<S: Scalar>(t: &Matrix<S>, a: &SelfAdjointMatrix<S>) -> Result<SelfAdjointMatrix<S>> {
    check_invertible(t, a.dim())?;
    SelfAdjointMatrix::new(t.adjoint().mul(a.matrix()).mul(t))
}

/// Congruence of a positive-definite matrix; invertible congruence maps the
/// positive cone onto itself, so the result is positive-definite.
pub fn congruence_spd<S: Scalar>(t: &Matrix<S>, p: &SpdMatrix<S>) -> Result<SpdMatrix<S>> {
    SpdMatrix::new(congruence(t, p.as_self_adjoint())?)
}

pub(crate) fn check_invertible<S: Scalar>(t: &Matrix<S>, dim: usize) -> Result<()> {
    if !t.is_square() || t.rows() != dim {
        return Err(Error::DimensionMismatch {
            context: "congruence factor shape",
            left: t.rows(),
            right: dim,
        });
    }
    let n = t.rows() as f64;
    let scale = (t.norm_fro() / n.sqrt()).powi(t.rows() as i32);
    let floor = tolerances::EPS_INV_REL * scale;
    let det_abs = t.det().abs();
    if det_abs <= floor {
        return Err(Error::Singular {
            det_abs,
            floor,
        });
    }
    Ok(())
}

/// Flat inner product `Re tr(A B)` of two self-adjoint matrices; this is the
/// standard flat Riemannian metric on the space of self-adjoint matrices.
pub fn trace_inner<S: Scalar>(a: &SelfAdjointMatrix<S>, b: &SelfAdjointMatrix<S>) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            context: "trace inner product",
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(trace_of_product(a.matrix(), b.matrix()).re())
}

/// `tr(X Y)` without forming the product matrix. Shared by `trace_inner`
/// and the Riemannian metric so that the two agree bit-for-bit at `P = I`.
pub(crate) fn trace_of_product<S: Scalar>(x: &Matrix<S>, y: &Matrix<S>) -> S {
    let n = x.rows();
    let mut acc = S::zero();
    for i in 0..n {
        for j in 0..n {
            acc = acc + x[(i, j)] * y[(j, i)];
        }
    }
    acc
}

/// Exact directional derivative of the matrix exponential,
/// `d exp_T(A) = (d/ds) exp(T + sA) at s = 0`.
///
/// Evaluated in the eigenbasis of `T` by divided differences: with
/// `T = Q diag(l) Q*` and `A~ = Q* A Q`, the derivative is
/// `Q (A~ o K) Q*` where `K[i][j] = (e^{l_i} - e^{l_j}) / (l_i - l_j)`.
/// When `|l_i - l_j|` falls below `CONFLUENT_REL * max|l|` the quotient is
/// replaced by the cancellation-free midpoint form
/// `e^{(l_i + l_j)/2} * sinhc((l_i - l_j)/2)`, whose limit on the diagonal
/// is `e^{l_i}`. At `T = 0` this reduces to the identity map exactly.
pub fn frechet_dexp<S: Scalar>(
    t: &SelfAdjointMatrix<S>,
    a: &SelfAdjointMatrix<S>,
) -> Result<SelfAdjointMatrix<S>> {
    if t.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            context: "frechet derivative arguments",
            left: t.dim(),
            right: a.dim(),
        });
    }
    let n = t.dim();
    let eig = sym_eig(t)?;
    let q = eig.eigenvectors();
    let lam = eig.eigenvalues();
    let max_abs = lam.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let a_tilde = q.adjoint().mul(a.matrix()).mul(q);
    let weighted = Matrix::from_fn(n, n, |i, j| {
        a_tilde[(i, j)].scale(exp_divided_difference(lam[i], lam[j], max_abs))
    });
    SelfAdjointMatrix::new(q.mul(&weighted).mul(&q.adjoint()))
}

fn exp_divided_difference(li: f64, lj: f64, scale: f64) -> f64 {
    let d = li - lj;
    if d.abs() <= tolerances::CONFLUENT_REL * scale {
        ((li + lj) * 0.5).exp() * sinhc(d * 0.5)
    } else {
        (li.exp() - lj.exp()) / d
    }
}

/// `sinh(x)/x`, continuous through `x = 0`.
fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 + x2 / 6.0 * (1.0 + x2 / 20.0)
    } else {
        x.sinh() / x
    }
}
