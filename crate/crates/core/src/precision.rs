//! Scalar types the geometry pipeline can run in.
//!
//! Everything from direction construction to the determinant is generic over
//! [`Real`], so the same code path evaluates in `f64` or in double-double
//! ([`TwoFloat`], roughly 106 bits of mantissa) when a value near the bound
//! needs a second opinion.

use std::fmt::Debug;

use num_complex::Complex;
use num_traits::Float;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

pub trait Real: Float + Debug + Send + Sync + 'static {
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;

    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl Real for f64 {
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

impl Real for TwoFloat {
    #[inline]
    fn from_f64(x: f64) -> Self {
        TwoFloat::from(x)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        f64::from(self)
    }
}

/// Arithmetic used for an evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Double,
    Extended,
}

impl std::str::FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "double" => Ok(Precision::Double),
            "extended" => Ok(Precision::Extended),
            other => Err(format!("unknown precision `{other}` (expected double or extended)")),
        }
    }
}

pub(crate) fn complex_to_f64<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

/// `|z|` computed as `sqrt(re² + im²)`; avoids relying on `hypot` for every scalar.
#[inline]
pub(crate) fn modulus<T: Real>(z: Complex<T>) -> T {
    z.norm_sqr().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twofloat_carries_more_bits_than_f64() {
        let one = TwoFloat::from_f64(1.0);
        let tiny = TwoFloat::from_f64(1e-20);
        let sum = one + tiny;
        assert_eq!((sum - one).to_f64(), 1e-20);
        assert_eq!((1.0f64 + 1e-20) - 1.0, 0.0);
    }

    #[test]
    fn twofloat_sqrt_is_accurate() {
        let two = TwoFloat::from_f64(2.0);
        let r = two.sqrt();
        let err = (r * r - two).abs().to_f64();
        assert!(err < 1e-30, "sqrt residual {err}");
    }

    #[test]
    fn precision_parses() {
        assert_eq!("double".parse::<Precision>().unwrap(), Precision::Double);
        assert_eq!("extended".parse::<Precision>().unwrap(), Precision::Extended);
        assert!("quad".parse::<Precision>().is_err());
    }
}
