use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Polynomial in one variable with arbitrary-precision integer coefficients.
///
/// `coeffs[k]` is the coefficient of `t^k`; the highest stored coefficient is
/// nonzero, and the zero polynomial stores nothing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|c| BigInt::from(*c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// `c · t^k`.
    pub fn monomial(k: usize, c: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `1 + s·t^k` for `s = ±1`.
    pub fn binomial(k: usize, sign: i64) -> Self {
        &Self::one() + &Self::monomial(k, BigInt::from(sign))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Quotient of an exact division. A nonzero remainder is an error.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self, Error> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision { remainder: r })
        }
    }

    /// Long division from the top degree. Stops early when the leading
    /// coefficient of the divisor does not divide that of the running
    /// remainder, which is then returned as is.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), Error> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let (q, r) = rem[top].div_rem(lead);
            if !r.is_zero() {
                break;
            }
            let shift = top - dd;
            for (k, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] -= &q * c;
            }
            quot[shift] = q;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// The polynomial `p(t^k)`; with `k = 2` this is the substitution `q = t²`.
    pub fn substitute_power(&self, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    /// Coefficient `k` equals coefficient `degree − k` for every `k`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: Self) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: Self) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    /// Ascending powers: `1 + t^2 + 4t^3 - t^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn square_of_one_plus_t() {
        assert_eq!(p(&[1, 1]).pow(2), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 1]).pow(0), IntPolynomial::one());
    }

    #[test]
    fn exact_division() {
        assert_eq!(
            p(&[1, 0, 0, 0, -1]).exact_divide(&p(&[1, 0, -1])).unwrap(),
            p(&[1, 0, 1])
        );
        match p(&[1, 1]).exact_divide(&p(&[1, -1])) {
            Err(Error::InexactDivision { remainder }) => assert_eq!(remainder, p(&[2])),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            p(&[1]).exact_divide(&IntPolynomial::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn non_monic_divisor() {
        let a = p(&[3, 1]);
        let b = p(&[1, 2]);
        let prod = &a * &b;
        assert_eq!(prod.exact_divide(&b).unwrap(), a);
        assert!(p(&[1, 1]).exact_divide(&p(&[0, 2])).is_err());
    }

    #[test]
    fn trimming_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!((&p(&[1, 1]) - &p(&[1, 1])).is_zero());
    }

    #[test]
    fn substitution_and_palindromes() {
        assert_eq!(p(&[1, 1, 1]).substitute_power(2), p(&[1, 0, 1, 0, 1]));
        assert!(p(&[1, 0, 1, 4, 1, 0, 1]).is_palindromic());
        assert!(!p(&[1, 2]).is_palindromic());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 1, 4, 1, 0, 1]).to_string(), "1 + t^2 + 4t^3 + t^4 + t^6");
        assert_eq!(p(&[0, -1, 0, 2]).to_string(), "-t + 2t^3");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[1, 1, 1]).evaluate(&BigInt::from(3)), BigInt::from(13));
    }
}
