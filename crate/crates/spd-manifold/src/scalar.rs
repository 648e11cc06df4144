//! Scalar abstraction over the two supported fields: `f64` (real symmetric
//! matrices) and `Complex64` (complex Hermitian matrices).

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Scalar field tag carried by matrices and by the JSON interchange format.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Real => write!(f, "real"),
            Field::Complex => write!(f, "complex"),
        }
    }
}

impl FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "real" => Ok(Field::Real),
            "complex" => Ok(Field::Complex),
            other => Err(format!("unknown field {other:?}, expected \"real\" or \"complex\"")),
        }
    }
}

/// Entry type of a matrix over `R` or `C`.
///
/// The two implementors are `f64` and `Complex64`; the eigendecomposition,
/// matrix-function, and group-sampling kernels are written once against this
/// trait.
pub trait Scalar:
    Copy
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const FIELD: Field;

    fn zero() -> Self;
    fn one() -> Self;
    /// Embed a real number into the field.
    fn from_re(x: f64) -> Self;
    /// Build a scalar from real and imaginary parts. The real field only
    /// accepts `im == 0`.
    fn from_parts(re: f64, im: f64) -> Self;
    fn conj(self) -> Self;
    fn re(self) -> f64;
    fn im(self) -> f64;
    /// Modulus `|x|`.
    fn abs(self) -> f64;
    /// Multiply by a real scalar.
    fn scale(self, s: f64) -> Self;
}

impl Scalar for f64 {
    const FIELD: Field = Field::Real;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_re(x: f64) -> Self {
        x
    }

    fn from_parts(re: f64, im: f64) -> Self {
        debug_assert_eq!(im, 0.0, "imaginary part in a real scalar");
        re
    }

    fn conj(self) -> Self {
        self
    }

    fn re(self) -> f64 {
        self
    }

    fn im(self) -> f64 {
        0.0
    }

    fn abs(self) -> f64 {
        f64::abs(self)
    }

    fn scale(self, s: f64) -> Self {
        self * s
    }
}

impl Scalar for Complex64 {
    const FIELD: Field = Field::Complex;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_re(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }

    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }

    fn conj(self) -> Self {
        Complex64::conj(&self)
    }

    fn re(self) -> f64 {
        self.re
    }

    fn im(self) -> f64 {
        self.im
    }

    fn abs(self) -> f64 {
        self.norm()
    }

    fn scale(self, s: f64) -> Self {
        Complex64::new(self.re * s, self.im * s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_parse_roundtrip() {
        assert_eq!("real".parse::<Field>().unwrap(), Field::Real);
        assert_eq!("complex".parse::<Field>().unwrap(), Field::Complex);
        assert!("quaternion".parse::<Field>().is_err());
    }

    #[test]
    fn complex_scale_is_componentwise() {
        let z = Complex64::new(3.0, -4.0);
        assert_eq!(z.scale(0.5), Complex64::new(1.5, -2.0));
        assert_eq!(Scalar::abs(z), 5.0);
    }
}
