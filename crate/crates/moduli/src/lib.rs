//! Exact arithmetic for Poincaré-polynomial and point-count identities.
//!
//! Everything here runs on arbitrary-precision integers and rationals; no
//! floating point is involved, so every check is an equality.

mod field;
mod poincare;
mod poly;
mod series;

pub use field::{
    brute_force_flag_count, flag_count, flag_count_polynomial, projective_count, projective_count_polynomial,
    tamagawa_inverse_measure, verify_p1_zeta, zeta_from_counts, Curve,
};
pub use poincare::{
    bg_poincare_series, higher_critical_series, jacobian_poincare, moduli_numerator, moduli_poincare,
    morse_decomposition_check, morse_decomposition_check_with, rank_two_denominator, rank_two_factorization,
    total_space_series, DenominatorForm, SeriesCheck,
};
pub use poly::IntPolynomial;
pub use series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division leaves nonzero remainder {remainder}")]
    InexactDivision { remainder: IntPolynomial },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("series with zero constant term has no inverse")]
    NonInvertibleSeries,
    #[error("exp needs a series with zero constant term")]
    NonZeroConstant,
    #[error("genus {g} is below the minimum {min}")]
    InvalidGenus { g: u32, min: u32 },
    #[error("rank must be at least 1, got {n}")]
    InvalidRank { n: u32 },
    #[error("field size q = {q} must be at least 2")]
    InvalidField { q: u64 },
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("F_{p}^{n} is too large to enumerate")]
    TooLarge { n: u32, p: u64 },
    #[error("need {needed} point counts, got {got}")]
    MissingCounts { needed: usize, got: usize },
    #[error("zeta has a pole at s = {s}")]
    ZetaPole { s: i32 },
}
