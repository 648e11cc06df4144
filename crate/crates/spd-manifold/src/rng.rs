//! Deterministic 64-bit PRNG for test-vector generation.
//!
//! SplitMix64 with the standard constants, so any other implementation can
//! reproduce the exact streams from the seed alone:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15                  (golden-ratio increment)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output = z ^ (z >> 31)
//! ```
//!
//! Uniform doubles take the top 53 bits of one output word. Gaussians use
//! the Box-Muller cosine branch and consume exactly two output words each,
//! so streams stay aligned across implementations.

use crate::scalar::Scalar;

const GOLDEN_GAMMA: u64 = 0x9E3779B97F4A7C15;
const MIX_MUL_1: u64 = 0xBF58476D1CE4E5B9;
const MIX_MUL_2: u64 = 0x94D049BB133111EB;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(MIX_MUL_1);
        z = (z ^ (z >> 27)).wrapping_mul(MIX_MUL_2);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal deviate (Box-Muller, cosine branch; two words).
    pub fn next_gaussian(&mut self) -> f64 {
        // Shift into (0, 1] so the logarithm is finite.
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// Standard Gaussian entry of the field `S`: a real normal for `f64`,
    /// `(x + iy)/sqrt(2)` with independent normals for `Complex64`.
    pub fn next_gaussian_scalar<S: Scalar>(&mut self) -> S {
        match S::FIELD {
            crate::scalar::Field::Real => S::from_re(self.next_gaussian()),
            crate::scalar::Field::Complex => {
                let re = self.next_gaussian();
                let im = self.next_gaussian();
                let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
                S::from_parts(re * inv_sqrt2, im * inv_sqrt2)
            }
        }
    }
}
