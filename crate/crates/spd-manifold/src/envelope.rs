//! JSON interchange format for matrices.
//!
//! An envelope is a single JSON object with keys (alphabetical, as emitted)
//! `data`, `dim`, `field`, `kind`:
//!
//! ```json
//! {"data":[1.0,0.0,0.0,1.0],"dim":2,"field":"real","kind":"spd"}
//! ```
//!
//! Real matrices carry a flat row-major array of numbers; complex matrices
//! carry `[re, im]` pairs. `kind` is `"selfadjoint"`, `"spd"`, or
//! `"group:GL" | "group:SL" | "group:O" | "group:SO"`, and the kind-specific
//! invariant is re-validated on load. Floats are serialized as the shortest
//! decimal that parses back to the same double, so load-emit-load is the
//! identity both on values and on the decimal text.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupTag};
use crate::mat::Matrix;
use crate::scalar::{Field, Scalar};
use crate::symmat::{SelfAdjointMatrix, SpdMatrix};
use crate::tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum EnvelopeKind {
    SelfAdjoint,
    Spd,
    Group(GroupTag),
}

impl EnvelopeKind {
    pub fn name(self) -> String {
        match self {
            EnvelopeKind::SelfAdjoint => "selfadjoint".to_string(),
            EnvelopeKind::Spd => "spd".to_string(),
            EnvelopeKind::Group(tag) => format!("group:{tag}"),
        }
    }
}

impl From<EnvelopeKind> for String {
    fn from(k: EnvelopeKind) -> String {
        k.name()
    }
}

impl TryFrom<String> for EnvelopeKind {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        match s.as_str() {
            "selfadjoint" => Ok(EnvelopeKind::SelfAdjoint),
            "spd" => Ok(EnvelopeKind::Spd),
            other => match other.strip_prefix("group:") {
                Some(tag) => tag
                    .parse::<GroupTag>()
                    .map(EnvelopeKind::Group)
                    .map_err(|e| e.to_string()),
                None => Err(format!(
                    "unknown kind {other:?} (expected \"selfadjoint\", \"spd\", or \"group:GL|SL|O|SO\")"
                )),
            },
        }
    }
}

/// Row-major matrix entries: plain numbers over the real field, `[re, im]`
/// pairs over the complex field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EnvelopeData {
    Real(Vec<f64>),
    Complex(Vec<[f64; 2]>),
}

impl EnvelopeData {
    fn len(&self) -> usize {
        match self {
            EnvelopeData::Real(v) => v.len(),
            EnvelopeData::Complex(v) => v.len(),
        }
    }

    fn field(&self) -> Field {
        match self {
            EnvelopeData::Real(_) => Field::Real,
            EnvelopeData::Complex(_) => Field::Complex,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixEnvelope {
    pub data: EnvelopeData,
    pub dim: usize,
    pub field: Field,
    pub kind: EnvelopeKind,
}

impl MatrixEnvelope {
    /// Parse an envelope from JSON and validate its structure (dimension,
    /// data length, field/data agreement). Kind-specific numerical
    /// invariants are checked later, by the typed decoders.
    pub fn from_json(text: &str) -> Result<Self> {
        let env: MatrixEnvelope = serde_json::from_str(text)?;
        env.validate_shape()?;
        Ok(env)
    }

    /// Compact single-line JSON with keys in sorted order and round-trip
    /// exact floats.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("envelope serialization cannot fail")
    }

    pub fn validate_shape(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Envelope("dim must be at least 1".to_string()));
        }
        if self.data.len() != self.dim * self.dim {
            return Err(Error::Envelope(format!(
                "data length {} does not match dim^2 = {}",
                self.data.len(),
                self.dim * self.dim
            )));
        }
        if self.data.field() != self.field {
            return Err(Error::Envelope(format!(
                "declared field \"{}\" does not match the data layout ({})",
                self.field,
                match self.data.field() {
                    Field::Real => "plain numbers",
                    Field::Complex => "[re, im] pairs",
                }
            )));
        }
        if let EnvelopeData::Real(v) = &self.data {
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::Envelope("data contains non-finite entries".to_string()));
            }
        }
        if let EnvelopeData::Complex(v) = &self.data {
            if v.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
                return Err(Error::Envelope("data contains non-finite entries".to_string()));
            }
        }
        Ok(())
    }

    /// Raw entries as a matrix over `S`; fails when the envelope's field
    /// does not match `S`.
    pub fn matrix<S: Scalar>(&self) -> Result<Matrix<S>> {
        if self.field != S::FIELD {
            return Err(Error::Envelope(format!(
                "envelope field is \"{}\" but the command runs over \"{}\"",
                self.field,
                S::FIELD
            )));
        }
        let n = self.dim;
        let m = match &self.data {
            EnvelopeData::Real(v) => Matrix::from_fn(n, n, |i, j| S::from_re(v[i * n + j])),
            EnvelopeData::Complex(v) => Matrix::from_fn(n, n, |i, j| {
                let [re, im] = v[i * n + j];
                S::from_parts(re, im)
            }),
        };
        Ok(m)
    }

    /// Decode as a self-adjoint matrix, enforcing the asymmetry bound
    /// `||M - M*||_F <= tol * (1 + ||M||_F)`. Accepts kinds `selfadjoint`
    /// and `spd`.
    pub fn decode_self_adjoint<S: Scalar>(&self, tol: f64) -> Result<SelfAdjointMatrix<S>> {
        match self.kind {
            EnvelopeKind::SelfAdjoint | EnvelopeKind::Spd => {}
            EnvelopeKind::Group(tag) => {
                return Err(Error::Envelope(format!(
                    "kind \"group:{tag}\" cannot be used where a self-adjoint matrix is required"
                )));
            }
        }
        let m = self.matrix::<S>()?;
        let residual = m.sub(&m.adjoint()).norm_fro();
        let bound = tol * (1.0 + m.norm_fro());
        if residual > bound {
            return Err(Error::NotSelfAdjoint {
                residual,
                tol: bound,
            });
        }
        SelfAdjointMatrix::new(m)
    }

    /// Decode as a positive-definite matrix (kinds `spd` or `selfadjoint`;
    /// positive-definiteness is validated either way).
    pub fn decode_spd<S: Scalar>(&self, tol: f64) -> Result<SpdMatrix<S>> {
        SpdMatrix::new(self.decode_self_adjoint::<S>(tol)?)
    }

    /// Decode as a group element; requires a `group:*` kind and re-checks
    /// membership.
    pub fn decode_group<S: Scalar>(&self) -> Result<GroupElement<S>> {
        let tag = match self.kind {
            EnvelopeKind::Group(tag) => tag,
            other => {
                return Err(Error::Envelope(format!(
                    "kind \"{}\" is not a group kind",
                    other.name()
                )));
            }
        };
        let m = self.matrix::<S>()?;
        GroupElement::new(tag, m)
    }

    pub fn from_self_adjoint<S: Scalar>(m: &SelfAdjointMatrix<S>) -> Self {
        Self::encode(m.matrix(), EnvelopeKind::SelfAdjoint)
    }

    pub fn from_spd<S: Scalar>(p: &SpdMatrix<S>) -> Self {
        Self::encode(p.matrix(), EnvelopeKind::Spd)
    }

    pub fn from_group<S: Scalar>(g: &GroupElement<S>) -> Self {
        Self::encode(g.matrix(), EnvelopeKind::Group(g.tag()))
    }

    fn encode<S: Scalar>(m: &Matrix<S>, kind: EnvelopeKind) -> Self {
        let n = m.rows();
        let data = match S::FIELD {
            Field::Real => {
                EnvelopeData::Real((0..n * n).map(|k| m[(k / n, k % n)].re()).collect())
            }
            Field::Complex => EnvelopeData::Complex(
                (0..n * n)
                    .map(|k| {
                        let z = m[(k / n, k % n)];
                        [z.re(), z.im()]
                    })
                    .collect(),
            ),
        };
        MatrixEnvelope {
            data,
            dim: n,
            field: S::FIELD,
            kind,
        }
    }
}

/// Default load-time validation tolerance; see
/// [`tolerances::ENVELOPE_TOL`].
pub fn default_tol() -> f64 {
    tolerances::ENVELOPE_TOL
}
