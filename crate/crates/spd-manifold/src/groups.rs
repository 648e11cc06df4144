//! Matrix groups acting on the positive cone by congruence, and
//! deterministic random sampling of group elements, self-adjoint matrices,
//! and positive-definite matrices.
//!
//! Four groups are supported, named by tag. Over the real field `O` is the
//! orthogonal group and `SO` its unit-determinant subgroup; over the complex
//! field the same tags denote the unitary and special unitary groups.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mat::Matrix;
use crate::rng::SplitMix64;
use crate::scalar::{Field, Scalar};
use crate::symmat::{check_invertible, SelfAdjointMatrix, SpdMatrix};
use crate::tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupTag {
    /// All invertible matrices.
    Gl,
    /// Determinant exactly 1.
    Sl,
    /// Orthogonal over `R`, unitary over `C`: `T* T = I`.
    Orthogonal,
    /// Orthogonal/unitary with determinant 1.
    SpecialOrthogonal,
}

impl GroupTag {
    pub const ALL: [GroupTag; 4] = [
        GroupTag::Gl,
        GroupTag::Sl,
        GroupTag::Orthogonal,
        GroupTag::SpecialOrthogonal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GroupTag::Gl => "GL",
            GroupTag::Sl => "SL",
            GroupTag::Orthogonal => "O",
            GroupTag::SpecialOrthogonal => "SO",
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "GL" => Ok(GroupTag::Gl),
            "SL" => Ok(GroupTag::Sl),
            "O" => Ok(GroupTag::Orthogonal),
            "SO" => Ok(GroupTag::SpecialOrthogonal),
            other => Err(Error::Envelope(format!(
                "unknown group tag {other:?} (expected GL, SL, O, or SO)"
            ))),
        }
    }
}

/// An element of one of the supported groups; membership is validated at
/// construction against [`tolerances::TOL_GROUP`].
#[derive(Clone, Debug)]
pub struct GroupElement<S: Scalar> {
    tag: GroupTag,
    mat: Matrix<S>,
}

impl<S: Scalar> GroupElement<S> {
    pub fn new(tag: GroupTag, mat: Matrix<S>) -> Result<Self> {
        is_member(tag, &mat, tolerances::TOL_GROUP)?;
        Ok(GroupElement { tag, mat })
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }
}

/// Scalar defect of group membership; membership means the residual is at
/// most [`tolerances::TOL_GROUP`].
///
/// For `SL` the residual is `|det - 1|`; for `O` it is `||T*T - I||_F`; for
/// `SO` the larger of the two. `GL` membership is a threshold test rather
/// than an equation, so its residual is 0 when the determinant clears the
/// invertibility floor and infinite otherwise.
pub fn membership_residual<S: Scalar>(tag: GroupTag, m: &Matrix<S>) -> Result<f64> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::DimensionMismatch {
            context: "group element must be square of dimension >= 1",
            left: m.rows(),
            right: m.cols().max(1),
        });
    }
    let n = m.rows();
    let invertible = check_invertible(m, n).is_ok();
    let det_defect = || {
        let d = m.det() - S::one();
        d.abs()
    };
    let orth_defect = || m.adjoint().mul(m).sub(&Matrix::identity(n)).norm_fro();
    Ok(match tag {
        GroupTag::Gl => {
            if invertible {
                0.0
            } else {
                f64::INFINITY
            }
        }
        GroupTag::Sl => det_defect(),
        GroupTag::Orthogonal => orth_defect(),
        GroupTag::SpecialOrthogonal => orth_defect().max(det_defect()),
    })
}

/// Check membership of `m` in the group named by `tag` at tolerance `tol`.
/// The library's own validation points use [`tolerances::TOL_GROUP`].
pub fn is_member<S: Scalar>(tag: GroupTag, m: &Matrix<S>, tol: f64) -> Result<()> {
    let residual = membership_residual(tag, m)?;
    if residual > tol {
        return Err(Error::NotGroupMember { tag, residual, tol });
    }
    Ok(())
}

fn gaussian_matrix<S: Scalar>(dim: usize, rng: &mut SplitMix64) -> Matrix<S> {
    Matrix::from_fn(dim, dim, |_, _| rng.next_gaussian_scalar())
}

/// Orthonormalize the columns of `g` in place by modified Gram-Schmidt with
/// a second projection pass. Returns false if a column degenerates, which
/// for Gaussian input has probability indistinguishable from zero.
fn orthonormalize<S: Scalar>(g: &mut Matrix<S>) -> bool {
    let n = g.rows();
    let col_dot = |m: &Matrix<S>, a: usize, b: usize| {
        let mut acc = S::zero();
        for k in 0..n {
            acc = acc + m[(k, a)].conj() * m[(k, b)];
        }
        acc
    };
    for j in 0..n {
        for _pass in 0..2 {
            for i in 0..j {
                let r = col_dot(g, i, j);
                for k in 0..n {
                    let c = g[(k, i)] * r;
                    g[(k, j)] = g[(k, j)] - c;
                }
            }
        }
        let norm = col_dot(g, j, j).re().sqrt();
        if norm < 1e-8 {
            return false;
        }
        for k in 0..n {
            g[(k, j)] = g[(k, j)].scale(1.0 / norm);
        }
    }
    true
}

fn random_unitary<S: Scalar>(dim: usize, rng: &mut SplitMix64) -> Matrix<S> {
    loop {
        let mut g = gaussian_matrix::<S>(dim, rng);
        if orthonormalize(&mut g) {
            return g;
        }
    }
}

/// Multiply the last column by 1/det, driving the determinant to 1. For a
/// real orthogonal matrix this is an exact sign flip; for a unitary matrix
/// the factor is a unit-modulus phase up to rounding in `det`.
fn fix_unit_det<S: Scalar>(m: &mut Matrix<S>) {
    let d = m.det();
    let last = m.cols() - 1;
    match S::FIELD {
        Field::Real => {
            if d.re() < 0.0 {
                for k in 0..m.rows() {
                    m[(k, last)] = -m[(k, last)];
                }
            }
        }
        Field::Complex => {
            let inv = d.conj().scale(1.0 / (d.abs() * d.abs()));
            for k in 0..m.rows() {
                let v = m[(k, last)] * inv;
                m[(k, last)] = v;
            }
        }
    }
}

fn well_conditioned<S: Scalar>(g: &Matrix<S>) -> bool {
    let gram = match SelfAdjointMatrix::new(g.adjoint().mul(g)) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let eig = match crate::symmat::sym_eig(&gram) {
        Ok(e) => e,
        Err(_) => return false,
    };
    let vals = eig.eigenvalues();
    let (min, max) = (vals[0], vals[vals.len() - 1]);
    min > 0.0 && (max / min).sqrt() <= tolerances::SAMPLE_COND_CAP
}

/// Draw a pseudo-random element of the group named by `tag`.
///
/// `O`/`SO` elements come from orthonormalized Gaussian matrices, `GL` from
/// raw Gaussian matrices, and `SL` from Gaussian matrices rescaled to unit
/// determinant (over `C` by the principal n-th root of `1/det`). `GL` and
/// `SL` draws are rejected until the spectral condition number is at most
/// [`tolerances::SAMPLE_COND_CAP`].
pub fn random_group_element<S: Scalar>(
    tag: GroupTag,
    dim: usize,
    rng: &mut SplitMix64,
) -> GroupElement<S> {
    assert!(dim >= 1, "group dimension must be at least 1");
    let mat = match tag {
        GroupTag::Orthogonal => random_unitary::<S>(dim, rng),
        GroupTag::SpecialOrthogonal => {
            let mut u = random_unitary::<S>(dim, rng);
            fix_unit_det(&mut u);
            u
        }
        GroupTag::Gl => loop {
            let g = gaussian_matrix::<S>(dim, rng);
            if well_conditioned(&g) {
                break g;
            }
        },
        GroupTag::Sl => loop {
            let g = gaussian_matrix::<S>(dim, rng);
            if !well_conditioned(&g) {
                continue;
            }
            let d = g.det();
            let mut scaled = match S::FIELD {
                Field::Real => {
                    let mut m = g.scale(d.abs().powf(-1.0 / dim as f64));
                    // det is now +-1; a sign flip on one column makes it +1.
                    if m.det().re() < 0.0 {
                        for k in 0..dim {
                            m[(k, 0)] = -m[(k, 0)];
                        }
                    }
                    m
                }
                Field::Complex => {
                    let r = d.abs();
                    let phi = d.im().atan2(d.re());
                    let root = S::from_parts(
                        r.powf(-1.0 / dim as f64) * (-phi / dim as f64).cos(),
                        r.powf(-1.0 / dim as f64) * (-phi / dim as f64).sin(),
                    );
                    g.scale_s(root)
                }
            };
            // Absorb rounding from the root so |det - 1| sits at machine
            // precision rather than n * eps * cond.
            let d2 = scaled.det();
            let d2abs = d2.abs();
            if (d2abs - 1.0).abs() > 1e-3 {
                continue;
            }
            let correction = S::from_re(d2abs.powf(-1.0 / dim as f64));
            scaled = scaled.scale_s(correction);
            break scaled;
        },
    };
    debug_assert!(is_member(tag, &mat, tolerances::TOL_GROUP).is_ok());
    GroupElement { tag, mat }
}

/// Draw a pseudo-random positive-definite matrix with spectral condition
/// number at most `cond_cap`.
///
/// Eigenvalues are `s * cond_cap^(u_i - 1/2)` with `u_i` uniform in [0, 1)
/// and `s = exp(g/4)` a mild overall scale, rotated by a random
/// orthogonal/unitary basis. `cond_cap = 1` yields a positive multiple of
/// the identity.
pub fn random_spd<S: Scalar>(dim: usize, rng: &mut SplitMix64, cond_cap: f64) -> SpdMatrix<S> {
    assert!(dim >= 1, "dimension must be at least 1");
    assert!(cond_cap >= 1.0, "condition cap must be at least 1");
    let scale = (0.25 * rng.next_gaussian()).exp();
    let vals: Vec<f64> = (0..dim)
        .map(|_| scale * cond_cap.powf(rng.next_f64() - 0.5))
        .collect();
    let basis = random_unitary::<S>(dim, rng);
    SpdMatrix::from_eigen(&basis, vals)
}

/// Draw a pseudo-random self-adjoint matrix with independent Gaussian
/// entries, symmetrized.
pub fn random_self_adjoint<S: Scalar>(dim: usize, rng: &mut SplitMix64) -> SelfAdjointMatrix<S> {
    assert!(dim >= 1, "dimension must be at least 1");
    SelfAdjointMatrix::new(gaussian_matrix::<S>(dim, rng)).expect("square by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn tag_round_trips_through_strings() {
        for tag in GroupTag::ALL {
            assert_eq!(tag.name().parse::<GroupTag>().unwrap(), tag);
        }
        assert!("SU".parse::<GroupTag>().is_err());
    }

    #[test]
    fn identity_is_in_every_group() {
        let id = Matrix::<f64>::identity(3);
        for tag in GroupTag::ALL {
            assert!(is_member(tag, &id, 1e-12).is_ok(), "{tag}");
        }
    }

    #[test]
    fn rejects_non_members() {
        let two = Matrix::<f64>::identity(2).scale(2.0);
        assert!(is_member(GroupTag::Gl, &two, 1e-12).is_ok());
        assert!(is_member(GroupTag::Sl, &two, 1e-12).is_err());
        assert!(is_member(GroupTag::Orthogonal, &two, 1e-12).is_err());
        let singular = Matrix::from_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!(is_member(GroupTag::Gl, &singular, 1e-12).is_err());
    }

    #[test]
    fn real_samples_are_members() {
        let mut rng = SplitMix64::new(7);
        for tag in GroupTag::ALL {
            for dim in [1, 2, 5] {
                let g = random_group_element::<f64>(tag, dim, &mut rng);
                let r = membership_residual(tag, g.matrix()).unwrap();
                assert!(r <= tolerances::TOL_GROUP, "{tag} dim {dim}: residual {r:.3e}");
            }
        }
    }

    #[test]
    fn complex_samples_are_members() {
        let mut rng = SplitMix64::new(11);
        for tag in GroupTag::ALL {
            for dim in [1, 3, 4] {
                let g = random_group_element::<Complex64>(tag, dim, &mut rng);
                let r = membership_residual(tag, g.matrix()).unwrap();
                assert!(r <= tolerances::TOL_GROUP, "{tag} dim {dim}: residual {r:.3e}");
            }
        }
    }

    #[test]
    fn special_orthogonal_has_unit_det() {
        let mut rng = SplitMix64::new(3);
        let g = random_group_element::<f64>(GroupTag::SpecialOrthogonal, 4, &mut rng);
        assert!((g.matrix().det() - 1.0).abs() < 1e-12);
        let u = random_group_element::<Complex64>(GroupTag::SpecialOrthogonal, 4, &mut rng);
        let d = u.matrix().det();
        assert!((d - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn random_spd_respects_condition_cap() {
        let mut rng = SplitMix64::new(21);
        for _ in 0..10 {
            let p = random_spd::<f64>(5, &mut rng, 50.0);
            assert!(p.condition_number() <= 50.0 * (1.0 + 1e-12));
        }
        let tight = random_spd::<f64>(4, &mut rng, 1.0);
        let vals = tight.eigenvalues();
        assert!((vals[3] - vals[0]).abs() <= 1e-15 * vals[0]);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = random_group_element::<f64>(GroupTag::Gl, 4, &mut SplitMix64::new(5));
        let b = random_group_element::<f64>(GroupTag::Gl, 4, &mut SplitMix64::new(5));
        assert_eq!(a.matrix(), b.matrix());
    }
}
