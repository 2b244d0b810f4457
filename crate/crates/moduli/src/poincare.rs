//! Poincaré polynomials of rank-2 moduli spaces and Poincaré series of
//! classifying spaces of gauge groups.

use num_bigint::BigInt;

use crate::{Error, IntPolynomial, TruncatedSeries};

fn check_genus(g: u32, min: u32) -> Result<(), Error> {
    if g < min {
        return Err(Error::InvalidGenus { g, min });
    }
    Ok(())
}

/// `(1 − t²)(1 − t⁴)`.
pub fn rank_two_denominator() -> IntPolynomial {
    &IntPolynomial::binomial(2, -1) * &IntPolynomial::binomial(4, -1)
}

/// `(1 + t³)^{2g} − t^{2g}(1 + t)^{2g}`.
pub fn moduli_numerator(g: u32) -> IntPolynomial {
    let main = IntPolynomial::binomial(3, 1).pow(2 * g);
    let shifted = &IntPolynomial::monomial(2 * g as usize, BigInt::from(1)) * &IntPolynomial::binomial(1, 1).pow(2 * g);
    &main - &shifted
}

/// Poincaré polynomial of the moduli space of rank-2 bundles of odd degree
/// with fixed determinant over a genus-`g` curve:
/// `((1+t³)^{2g} − t^{2g}(1+t)^{2g}) / ((1−t²)(1−t⁴))`, divided exactly.
pub fn moduli_poincare(g: u32) -> Result<IntPolynomial, Error> {
    check_genus(g, 2)?;
    moduli_numerator(g).exact_divide(&rank_two_denominator())
}

/// Poincaré polynomial of the Jacobian, `(1 + t)^{2g}`.
pub fn jacobian_poincare(g: u32) -> IntPolynomial {
    IntPolynomial::binomial(1, 1).pow(2 * g)
}

/// Which display of the gauge-group series to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DenominatorForm {
    /// `∏_{k<n} (1 − t^{2k})² · (1 − t^{2n})`.
    #[default]
    Squared,
    /// `∏_{k<n} (1 − t^{2k}) · (1 − t^{2n})`.
    Unsquared,
}

/// Poincaré series of `BG` for the gauge group of `U(n)` bundles over a
/// genus-`g` curve, to order `order`:
/// `∏_{k=1..n} (1 + t^{2k−1})^{2g}` over the chosen denominator.
pub fn bg_poincare_series(n: u32, g: u32, order: usize, form: DenominatorForm) -> Result<TruncatedSeries, Error> {
    if n == 0 {
        return Err(Error::InvalidRank { n });
    }
    let mut num = IntPolynomial::one();
    for k in 1..=n as usize {
        num = &num * &IntPolynomial::binomial(2 * k - 1, 1).pow(2 * g);
    }
    let power = match form {
        DenominatorForm::Squared => 2,
        DenominatorForm::Unsquared => 1,
    };
    let mut den = IntPolynomial::binomial(2 * n as usize, -1);
    for k in 1..n as usize {
        den = &den * &IntPolynomial::binomial(2 * k, -1).pow(power);
    }
    TruncatedSeries::from_polynomial(&num, order).divide(&TruncatedSeries::from_polynomial(&den, order))
}

/// Contribution of the higher critical points,
/// `t^{2g}(1+t)^{2g} / ((1−t²)(1−t⁴))`.
pub fn higher_critical_series(g: u32, order: usize) -> Result<TruncatedSeries, Error> {
    let num = &IntPolynomial::monomial(2 * g as usize, BigInt::from(1)) * &jacobian_poincare(g);
    TruncatedSeries::from_polynomial(&num, order)
        .divide(&TruncatedSeries::from_polynomial(&rank_two_denominator(), order))
}

/// The total-space series, `(1+t³)^{2g} / ((1−t²)(1−t⁴))`.
pub fn total_space_series(g: u32, order: usize) -> Result<TruncatedSeries, Error> {
    TruncatedSeries::from_polynomial(&IntPolynomial::binomial(3, 1).pow(2 * g), order)
        .divide(&TruncatedSeries::from_polynomial(&rank_two_denominator(), order))
}

/// Outcome of comparing two series coefficient by coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesCheck {
    pub holds: bool,
    pub order: usize,
    pub first_mismatch: Option<usize>,
}

impl SeriesCheck {
    fn compare(lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Self {
        let first_mismatch = lhs.first_mismatch(rhs);
        Self {
            holds: first_mismatch.is_none(),
            order: lhs.order().min(rhs.order()),
            first_mismatch,
        }
    }
}

/// minimum + higher critical points = total space, to order `order`.
pub fn morse_decomposition_check(g: u32, order: usize) -> Result<SeriesCheck, Error> {
    morse_decomposition_check_with(&moduli_poincare(g)?, g, order)
}

/// As [`morse_decomposition_check`] with a caller-supplied minimum.
pub fn morse_decomposition_check_with(minimum: &IntPolynomial, g: u32, order: usize) -> Result<SeriesCheck, Error> {
    check_genus(g, 2)?;
    let lhs = &TruncatedSeries::from_polynomial(minimum, order) + &higher_critical_series(g, order)?;
    Ok(SeriesCheck::compare(&lhs, &total_space_series(g, order)?))
}

/// Whether the rank-2 gauge-group series splits off the rank-1 series,
/// `P_BG(U(2)) = P_BG(U(1)) · total space`, for the given denominator form.
///
/// The rank-1 factor accounts for the determinant; what remains is the
/// fixed-determinant total space of the Morse decomposition.
pub fn rank_two_factorization(g: u32, order: usize, form: DenominatorForm) -> Result<SeriesCheck, Error> {
    let lhs = bg_poincare_series(2, g, order, form)?;
    let rhs = &bg_poincare_series(1, g, order, form)? * &total_space_series(g, order)?;
    Ok(SeriesCheck::compare(&lhs, &rhs))
}
