//! Crate-wide error type.

use thiserror::Error;

use crate::groups::GroupTag;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {context} ({left} vs {right})")]
    DimensionMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },

    #[error("matrix is not positive-definite (smallest eigenvalue {min_eigenvalue:.3e}, floor {floor:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64, floor: f64 },

    #[error("matrix is numerically singular (|det| = {det_abs:.3e} below floor {floor:.3e})")]
    Singular { det_abs: f64, floor: f64 },

    #[error("eigen-solver did not converge after {sweeps} sweeps (off-diagonal residual {residual:.3e})")]
    EigenNonConvergence { sweeps: usize, residual: f64 },

    #[error("eigendecomposition failed to reconstruct its input (residual {residual:.3e} exceeds {tol:.3e})")]
    EigenReconstruction { residual: f64, tol: f64 },

    #[error("tangent vectors do not share the expected base point")]
    BaseMismatch,

    #[error("determinant is not 1 (det = {det}, tolerance {tol:.3e})")]
    NotUnitDeterminant { det: f64, tol: f64 },

    #[error("matrix is not self-adjoint (asymmetry {residual:.3e} exceeds {tol:.3e})")]
    NotSelfAdjoint { residual: f64, tol: f64 },

    #[error("matrix is not a member of {tag} (residual {residual:.3e} exceeds {tol:.3e})")]
    NotGroupMember {
        tag: GroupTag,
        residual: f64,
        tol: f64,
    },

    #[error("invalid matrix envelope: {0}")]
    Envelope(String),

    #[error("failed to parse JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for parse/read failures on input
    /// files, 3 for violated mathematical invariants.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Envelope(_) | Error::Json(_) | Error::Io { .. } => 2,
            _ => 3,
        }
    }
}
