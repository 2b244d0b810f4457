use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, IntPolynomial};

/// Power series with rational coefficients, known up to `t^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Keeps `coeffs[..=order]`, padding with zeros.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigRational::one()], order)
    }

    pub fn from_polynomial(p: &IntPolynomial, order: usize) -> Self {
        Self::new(
            p.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
            order,
        )
    }

    pub fn from_integers(coeffs: &[i64], order: usize) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|c| BigRational::from_integer(BigInt::from(*c)))
                .collect(),
            order,
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `1 / self`; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self, Error> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let n = self.order();
        let mut inv = vec![c0.recip()];
        for k in 1..=n {
            let s: BigRational = (1..=k).map(|j| &self.coeffs[j] * &inv[k - j]).sum();
            inv.push(-s / c0);
        }
        Ok(Self { coeffs: inv })
    }

    pub fn divide(&self, rhs: &Self) -> Result<Self, Error> {
        Ok(self * &rhs.inverse()?)
    }

    /// `exp(self)`; the constant term must be zero.
    ///
    /// Uses `k·e_k = Σ_{j=1..k} j·a_j·e_{k−j}`, which follows from `e' = a'·e`.
    pub fn exp(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let n = self.order();
        let mut e = vec![BigRational::one()];
        for k in 1..=n {
            let s: BigRational = (1..=k)
                .map(|j| BigRational::from_integer(BigInt::from(j)) * &self.coeffs[j] * &e[k - j])
                .sum();
            e.push(s / BigRational::from_integer(BigInt::from(k)));
        }
        Ok(Self { coeffs: e })
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// First index where the two series differ, comparing up to the lower order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let n = self.order().min(rhs.order());
        Self {
            coeffs: (0..=n).map(|k| f(&self.coeffs[k], &rhs.coeffs[k])).collect(),
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|j| &self.coeffs[j] * &rhs.coeffs[k - j]).sum())
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")?;
        } else {
            f.write_str(&terms.join(" + "))?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| i64::try_from(c.to_integer()).unwrap())
            .collect()
    }

    #[test]
    fn geometric_inverse() {
        let s = TruncatedSeries::from_integers(&[1, -1], 5).inverse().unwrap();
        assert_eq!(ints(&s), vec![1; 6]);
        assert!(TruncatedSeries::from_integers(&[0, 1], 3).inverse().is_err());
    }

    #[test]
    fn exp_of_log_series() {
        // exp(Σ t^m / m) = 1/(1−t).
        let order = 8;
        let log = TruncatedSeries::new(
            (0..=order)
                .map(|m| {
                    if m == 0 {
                        BigRational::zero()
                    } else {
                        BigRational::new(1.into(), BigInt::from(m))
                    }
                })
                .collect(),
            order,
        );
        assert_eq!(ints(&log.exp().unwrap()), vec![1; order + 1]);
        assert!(TruncatedSeries::one(3).exp().is_err());
    }

    #[test]
    fn product_truncates() {
        let a = TruncatedSeries::from_integers(&[1, 1], 2);
        let sq = &a * &a;
        assert_eq!(ints(&sq), vec![1, 2, 1]);
        let cube = &sq * &a;
        assert_eq!(ints(&cube), vec![1, 3, 3]);
    }
}
