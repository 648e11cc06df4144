//! Affine-invariant Riemannian geometry of the cone of positive-definite
//! self-adjoint matrices, over the real and complex fields.
//!
//! The cone carries the metric `<A, B>_P = Re tr(P^-1 A P^-1 B)` on
//! self-adjoint tangent vectors. Every congruence `P -> T* P T` by an
//! invertible `T` is an isometry, the metric reduces to the flat trace form
//! at the identity, and geodesics, distances, and the Riemannian
//! exponential/logarithm all come in closed form through the matrix
//! exponential. The unit-determinant slice is a totally geodesic
//! submanifold preserved by the special linear group.
//!
//! What lives where:
//!
//! - [`symmat`]: self-adjoint and positive-definite matrix types, the cyclic
//!   Jacobi eigensolver, spectral exp/log/sqrt, congruence, the flat trace
//!   inner product, and the exact Frechet derivative of exp.
//! - [`manifold`]: the metric, tangent vectors, pushforwards, geodesics,
//!   Riemannian exp/log, distance, and the determinant-one / trace-zero
//!   projections.
//! - [`groups`]: GL, SL, orthogonal/unitary, special orthogonal/unitary
//!   tags, membership checks, and seeded random sampling.
//! - [`verify`]: finite-difference cross-checks of the exponential's first
//!   and second differentials, geodesic-equation residuals, and the
//!   [`verify::run_check`] property suite.
//! - [`envelope`] and [`cli`]: the JSON interchange format and the `spdm`
//!   binary's command implementations.
//!
//! Numerical contracts (tolerances, floors, caps) are collected in
//! [`tolerances`]. All kernels are pure and deterministic; randomness only
//! enters through explicitly seeded [`rng::SplitMix64`] streams.

pub mod cli;
pub mod envelope;
pub mod error;
pub mod groups;
pub mod manifold;
pub mod mat;
pub mod rng;
pub mod scalar;
pub mod symmat;
pub mod tolerances;
pub mod verify;

pub use envelope::{EnvelopeData, EnvelopeKind, MatrixEnvelope};
pub use error::{Error, Result};
pub use groups::{
    is_member, membership_residual, random_group_element, random_self_adjoint, random_spd,
    GroupElement, GroupTag,
};
pub use manifold::{
    distance, metric, metric_norm_sq, project_det1, project_trace0, pushforward, riem_exp,
    riem_log, Geodesic, TangentVector, UnitDetSpd,
};
pub use mat::Matrix;
pub use rng::SplitMix64;
pub use scalar::{Field, Scalar};
pub use symmat::{
    congruence, congruence_spd, frechet_dexp, mat_exp, mat_log, mat_sqrt, sym_eig, trace_inner,
    EigenPair, SelfAdjointMatrix, SpdMatrix,
};
pub use verify::{
    convergence_study, curve_residual, default_step, fd_dexp, fd_second_mixed, geodesic_residual,
    run_check, second_order_agreement_error, symmetrized_product, CheckConfig, CheckReport,
    ConvergenceReport, Mutation, PropertyResult, STEP_LADDER,
};
