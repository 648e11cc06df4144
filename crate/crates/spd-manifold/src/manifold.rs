//! The positive-definite cone as a Riemannian manifold.
//!
//! The metric at a base point `P` is `<A, B>_P = Re tr(P^-1 A P^-1 B)` on
//! self-adjoint tangent vectors. Congruence by any invertible `T` is an
//! isometry of this metric, and at the identity the metric reduces to the
//! flat trace form `Re tr(A B)`. Geodesics, the Riemannian exponential and
//! logarithm, and the geodesic distance all come in closed form through the
//! matrix exponential.
//!
//! Numerically, everything routed through a base point `P` is evaluated in
//! the eigenbasis of `P`: whitening `P^{-1/2} X P^{-1/2}` becomes an exact
//! diagonal scaling there, which keeps the error of distances and geodesics
//! at the level of the eigensolver rather than of explicit inverse square
//! roots.

use crate::error::{Error, Result};
use crate::mat::Matrix;
use crate::scalar::Scalar;
use crate::symmat::{
    congruence, congruence_spd, scale_columns, sym_eig, trace_of_product, SelfAdjointMatrix,
    SpdMatrix,
};
use crate::tolerances;

/// A tangent vector to the positive cone: a self-adjoint value attached to
/// a positive-definite base point.
#[derive(Clone, Debug)]
pub struct TangentVector<S: Scalar> {
    base: SpdMatrix<S>,
    value: SelfAdjointMatrix<S>,
}

impl<S: Scalar> TangentVector<S> {
    pub fn new(base: SpdMatrix<S>, value: SelfAdjointMatrix<S>) -> Result<Self> {
        if base.dim() != value.dim() {
            return Err(Error::DimensionMismatch {
                context: "tangent vector base and value",
                left: base.dim(),
                right: value.dim(),
            });
        }
        Ok(TangentVector { base, value })
    }

    pub fn base(&self) -> &SpdMatrix<S> {
        &self.base
    }

    pub fn value(&self) -> &SelfAdjointMatrix<S> {
        &self.value
    }

    pub fn dim(&self) -> usize {
        self.value.dim()
    }
}

/// Positive-definite matrix constrained to the unit-determinant submanifold;
/// dereferences to the underlying [`SpdMatrix`].
#[derive(Clone, Debug)]
pub struct UnitDetSpd<S: Scalar> {
    inner: SpdMatrix<S>,
}

impl<S: Scalar> UnitDetSpd<S> {
    pub fn new(inner: SpdMatrix<S>) -> Result<Self> {
        let det = inner.det();
        if (det - 1.0).abs() > tolerances::UNIT_DET_TOL {
            return Err(Error::NotUnitDeterminant {
                det,
                tol: tolerances::UNIT_DET_TOL,
            });
        }
        Ok(UnitDetSpd { inner })
    }

    pub fn into_inner(self) -> SpdMatrix<S> {
        self.inner
    }
}

impl<S: Scalar> std::ops::Deref for UnitDetSpd<S> {
    type Target = SpdMatrix<S>;

    fn deref(&self) -> &SpdMatrix<S> {
        &self.inner
    }
}

/// Riemannian metric `<A, B>_P = Re tr(P^-1 A P^-1 B)`.
///
/// Both tangent vectors must be attached to `p` (exact equality of base
/// matrices). At `p = I` the computation reduces bit-for-bit to
/// [`crate::symmat::trace_inner`].
pub fn metric<S: Scalar>(
    p: &SpdMatrix<S>,
    a: &TangentVector<S>,
    b: &TangentVector<S>,
) -> Result<f64> {
    if a.base().matrix() != p.matrix() || b.base().matrix() != p.matrix() {
        return Err(Error::BaseMismatch);
    }
    let pinv = p.inverse_matrix();
    let x = pinv.mul(a.value().matrix());
    let y = pinv.mul(b.value().matrix());
    Ok(trace_of_product(&x, &y).re())
}

/// Squared length of a tangent vector, `<V, V>_P`.
pub fn metric_norm_sq<S: Scalar>(v: &TangentVector<S>) -> f64 {
    metric(v.base(), v, v).expect("vector is attached to its own base")
}

/// Pushforward of a tangent vector under the congruence isometry
/// `tau_T(P) = T* P T`: the base moves to `T* P T` and the value to
/// `T* V T` (the action is linear, so it equals its own differential).
pub fn pushforward<S: Scalar>(t: &Matrix<S>, v: &TangentVector<S>) -> Result<TangentVector<S>> {
    let base = congruence_spd(t, v.base())?;
    let value = congruence(t, v.value())?;
    TangentVector::new(base, value)
}

/// Geodesic through `velocity.base()` with initial velocity
/// `velocity.value()`, in the closed form
/// `gamma(t) = P^{1/2} exp(t P^{-1/2} V P^{-1/2}) P^{1/2}`.
///
/// `gamma(0) = P`, `gamma'(0) = V`, and the curve satisfies the geodesic
/// equation `gamma'' = gamma' gamma^-1 gamma'` for all real `t`. Through
/// the identity with velocity `C` it reduces to `t -> exp(tC)`.
#[derive(Clone, Debug)]
pub struct Geodesic<S: Scalar> {
    velocity: TangentVector<S>,
}

impl<S: Scalar> Geodesic<S> {
    pub fn new(velocity: TangentVector<S>) -> Self {
        Geodesic { velocity }
    }

    /// Geodesic through the identity: `t -> exp(t C)`.
    pub fn from_identity(c: SelfAdjointMatrix<S>) -> Self {
        let dim = c.dim();
        Geodesic {
            velocity: TangentVector {
                base: SpdMatrix::identity(dim),
                value: c,
            },
        }
    }

    pub fn base(&self) -> &SpdMatrix<S> {
        self.velocity.base()
    }

    pub fn velocity(&self) -> &TangentVector<S> {
        &self.velocity
    }

    /// Evaluate the geodesic. `t = 0` and zero velocity return the base
    /// point exactly.
    pub fn at(&self, t: f64) -> Result<SpdMatrix<S>> {
        let p = self.velocity.base();
        let v = self.velocity.value();
        if t == 0.0 || v.norm_fro() == 0.0 {
            return Ok(p.clone());
        }
        let (b, mu) = whiten_tangent(p, v)?;
        let grown: Vec<f64> = mu.iter().map(|&m| (t * m).exp()).collect();
        SpdMatrix::from_matrix(assemble(&b, &grown))
    }
}

/// Riemannian exponential: the geodesic with initial data `v`, at `t = 1`.
pub fn riem_exp<S: Scalar>(v: &TangentVector<S>) -> Result<SpdMatrix<S>> {
    Geodesic::new(v.clone()).at(1.0)
}

/// Riemannian logarithm: the tangent vector at `p` whose geodesic reaches
/// `q` at `t = 1`, `V = P^{1/2} log(P^{-1/2} Q P^{-1/2}) P^{1/2}`.
/// `riem_log(p, p)` is exactly zero.
pub fn riem_log<S: Scalar>(p: &SpdMatrix<S>, q: &SpdMatrix<S>) -> Result<TangentVector<S>> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            context: "riemannian logarithm arguments",
            left: p.dim(),
            right: q.dim(),
        });
    }
    if p.matrix() == q.matrix() {
        return TangentVector::new(p.clone(), SelfAdjointMatrix::zeros(p.dim()));
    }
    let (b, mu) = whiten_point(p, q)?;
    let logged: Vec<f64> = mu.iter().map(|&m| m.ln()).collect();
    let value = SelfAdjointMatrix::new(assemble(&b, &logged))?;
    TangentVector::new(p.clone(), value)
}

/// Geodesic distance `d(P, Q) = ||log(P^{-1/2} Q P^{-1/2})||_F`, i.e. the
/// root-sum-square of the logarithms of the eigenvalues of `P^-1 Q`.
/// Identical arguments return exactly 0.
pub fn distance<S: Scalar>(p: &SpdMatrix<S>, q: &SpdMatrix<S>) -> Result<f64> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            context: "distance arguments",
            left: p.dim(),
            right: q.dim(),
        });
    }
    if p.matrix() == q.matrix() {
        return Ok(0.0);
    }
    let (_, mu) = whiten_point(p, q)?;
    Ok(mu.iter().map(|&m| m.ln().powi(2)).sum::<f64>().sqrt())
}

/// Project onto the unit-determinant submanifold by uniform rescaling:
/// `P -> det(P)^{-1/n} P`, the closest unit-determinant point in the
/// invariant metric.
pub fn project_det1<S: Scalar>(p: &SpdMatrix<S>) -> Result<UnitDetSpd<S>> {
    let n = p.dim() as f64;
    let mean_log: f64 = p.eigenvalues().iter().map(|&l| l.ln()).sum::<f64>() / n;
    let s = (-mean_log).exp();
    let vals: Vec<f64> = p.eigenvalues().iter().map(|&l| l * s).collect();
    UnitDetSpd::new(SpdMatrix::from_eigen(p.eigenvectors(), vals))
}

/// Project a self-adjoint matrix onto the trace-zero subspace:
/// `A -> A - (tr A / n) I`. The matrix exponential carries this subspace
/// onto the unit-determinant submanifold.
pub fn project_trace0<S: Scalar>(a: &SelfAdjointMatrix<S>) -> SelfAdjointMatrix<S> {
    let n = a.dim();
    let mean = a.trace() / n as f64;
    let m = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            S::from_re(a.get(i, i).re() - mean)
        } else {
            a.get(i, j)
        }
    });
    SelfAdjointMatrix::new(m).expect("diagonal shift preserves self-adjointness")
}

/// Factor the pair (base, tangent) as `B diag(mu) B*` data: returns `B` and
/// the eigenvalues `mu` of the whitened tangent `P^{-1/2} V P^{-1/2}`, so
/// that `gamma(t) = B diag(e^{t mu}) B*`.
fn whiten_tangent<S: Scalar>(
    p: &SpdMatrix<S>,
    v: &SelfAdjointMatrix<S>,
) -> Result<(Matrix<S>, Vec<f64>)> {
    let rotated = p.eigenvectors().adjoint().mul(v.matrix()).mul(p.eigenvectors());
    whiten_rotated(p, &rotated, false)
}

/// Same factorization for a target point: `mu` are the eigenvalues of
/// `P^{-1/2} Q P^{-1/2}`, all strictly positive.
fn whiten_point<S: Scalar>(
    p: &SpdMatrix<S>,
    q: &SpdMatrix<S>,
) -> Result<(Matrix<S>, Vec<f64>)> {
    let rotated = p.eigenvectors().adjoint().mul(q.matrix()).mul(p.eigenvectors());
    whiten_rotated(p, &rotated, true)
}

fn whiten_rotated<S: Scalar>(
    p: &SpdMatrix<S>,
    rotated: &Matrix<S>,
    positive: bool,
) -> Result<(Matrix<S>, Vec<f64>)> {
    let n = p.dim();
    let inv_sqrt: Vec<f64> = p.eigenvalues().iter().map(|&l| 1.0 / l.sqrt()).collect();
    let w = SelfAdjointMatrix::new(Matrix::from_fn(n, n, |i, j| {
        rotated[(i, j)].scale(inv_sqrt[i] * inv_sqrt[j])
    }))?;
    let eig = sym_eig(&w)?;
    let (mu, r) = eig.into_parts();
    if positive {
        let max_abs = mu.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        // The comparison is written to also reject NaN eigenvalues.
        if mu[0] <= tolerances::EPS_PD_REL * max_abs || mu[0].is_nan() {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: mu[0],
                floor: tolerances::EPS_PD_REL * max_abs,
            });
        }
    }
    let sqrt_lam: Vec<f64> = p.eigenvalues().iter().map(|&l| l.sqrt()).collect();
    let row_scaled = Matrix::from_fn(n, n, |i, j| r[(i, j)].scale(sqrt_lam[i]));
    Ok((p.eigenvectors().mul(&row_scaled), mu))
}

/// `B diag(vals) B*`, exactly symmetrized.
fn assemble<S: Scalar>(b: &Matrix<S>, vals: &[f64]) -> Matrix<S> {
    let n = b.rows();
    let raw = scale_columns(b, vals).mul(&b.adjoint());
    Matrix::from_fn(n, n, |i, j| (raw[(i, j)] + raw[(j, i)].conj()).scale(0.5))
}
