//! Central registry of numerical tolerances.
//!
//! Every threshold used by constructors and kernels is defined here rather
//! than inline, so the accuracy contract of the crate can be read in one
//! place. Most bounds leave roughly a factor of 100 of headroom over f64
//! machine epsilon (2.2e-16) to absorb accumulated rounding in O(n^3)
//! kernels at the dimensions this crate targets (n <= a few dozen).

/// Maximum number of cyclic Jacobi sweeps before the eigen-solver reports
/// non-convergence. Quadratic convergence makes ~10 sweeps typical even at
/// n = 8; 30 is a generous ceiling.
pub const MAX_SWEEPS: usize = 30;

/// Jacobi convergence threshold: off-diagonal Frobenius mass relative to the
/// Frobenius norm of the input.
pub const OFF_DIAG_REL: f64 = 1e-14;

/// Relative positive-definiteness floor: an eigenvalue `lambda_min` is
/// accepted when `lambda_min > EPS_PD_REL * max|lambda|`.
pub const EPS_PD_REL: f64 = 1e-12;

/// Eigendecomposition reconstruction tolerance: `||Q L Q* - M||_F` relative
/// to `||M||_F`.
pub const TOL_RECON: f64 = 1e-12;

/// Orthonormality tolerance for eigenvector matrices: `||Q*Q - I||_F`.
pub const TOL_ORTH: f64 = 1e-12;

/// Relative eigenvalue gap below which the divided difference
/// `(e^a - e^b)/(a - b)` switches to the cancellation-free midpoint form
/// `e^((a+b)/2) * sinhc((a-b)/2)`.
pub const CONFLUENT_REL: f64 = 1e-7;

/// Membership tolerance for the matrix groups (unit determinant and
/// orthogonality/unitarity residuals).
pub const TOL_GROUP: f64 = 1e-10;

/// Relative invertibility floor: `T` is treated as singular when
/// `|det T| <= EPS_INV_REL * (||T||_F / sqrt(n))^n`. The scale factor is the
/// determinant of a matrix with the same Frobenius norm spread evenly over
/// its singular values, which makes the floor invariant under rescaling `T`.
pub const EPS_INV_REL: f64 = 1e-12;

/// Determinant tolerance for membership in the unit-determinant submanifold.
pub const UNIT_DET_TOL: f64 = 1e-10;

/// Default validation tolerance when re-checking envelope invariants
/// (self-adjointness, group membership) on load. Overridable with `--tol`.
pub const ENVELOPE_TOL: f64 = 1e-10;

/// Condition-number cap for randomly generated property-suite inputs.
/// Accuracy of the metric and distance kernels degrades gracefully beyond
/// it, but the documented error bounds assume inputs under this cap.
pub const CONDITION_CAP: f64 = 1e4;

/// Random GL and SL samples are redrawn until their spectral condition
/// number falls below this cap. Raw Gaussian matrices have heavy-tailed
/// condition numbers; an occasional near-singular draw would blow the
/// rounding error of a congruence round-trip far past the documented
/// bounds without saying anything about the algebra under test.
pub const SAMPLE_COND_CAP: f64 = 1e2;

/// Points of a convergence study whose error falls at or below this floor
/// (about 100x the f64 unit roundoff) are excluded from log-log order fits;
/// they measure rounding noise, not truncation.
pub const ORDER_FIT_FLOOR: f64 = 1e-14;
