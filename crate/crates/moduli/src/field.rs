//! Point counts over finite fields and the zeta functions built from them.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::{Error, IntPolynomial, TruncatedSeries};

fn check_field(q: u64) -> Result<(), Error> {
    if q < 2 {
        return Err(Error::InvalidField { q });
    }
    Ok(())
}

/// `1 + q + … + q^{n−1}` as a polynomial in `q`.
pub fn projective_count_polynomial(n: u32) -> IntPolynomial {
    IntPolynomial::new(vec![BigInt::one(); n as usize])
}

/// `∏_{k=1..n} (1 + q + … + q^{k−1})` as a polynomial in `q`.
pub fn flag_count_polynomial(n: u32) -> IntPolynomial {
    (1..=n).fold(IntPolynomial::one(), |acc, k| &acc * &projective_count_polynomial(k))
}

/// Number of points of the projective space of lines in `F_q^n`.
pub fn projective_count(n: u32, q: u64) -> Result<BigInt, Error> {
    check_field(q)?;
    Ok(projective_count_polynomial(n).evaluate(&BigInt::from(q)))
}

/// Number of complete flags in `F_q^n`.
pub fn flag_count(n: u32, q: u64) -> Result<BigInt, Error> {
    check_field(q)?;
    Ok(flag_count_polynomial(n).evaluate(&BigInt::from(q)))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Counts complete flags `0 ⊂ V_1 ⊂ … ⊂ V_{n−1} ⊂ F_p^n` by listing every
/// subspace as a set of vectors. Only feasible for `p^n ≤ 64`.
pub fn brute_force_flag_count(n: u32, p: u64) -> Result<u64, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime { p });
    }
    let size = p.checked_pow(n).filter(|s| *s <= 64).ok_or(Error::TooLarge { n, p })? as usize;
    let n = n as usize;

    let digits = |mut v: usize| -> Vec<u64> {
        (0..n)
            .map(|_| {
                let d = (v as u64) % p;
                v /= p as usize;
                d
            })
            .collect()
    };
    let index = |d: &[u64]| -> usize { d.iter().rev().fold(0, |acc, x| acc * p as usize + *x as usize) };
    let vectors: Vec<Vec<u64>> = (0..size).map(digits).collect();

    // Subspaces as bitmasks over vector indices, grouped by dimension.
    let mut by_dim: Vec<HashSet<u64>> = vec![HashSet::from([1u64])];
    for dim in 1..=n {
        let mut next = HashSet::new();
        for &sub in &by_dim[dim - 1] {
            for v in 0..size {
                if sub >> v & 1 == 1 {
                    continue;
                }
                // span(sub ∪ {v}) = { w + c·v : w ∈ sub, c ∈ F_p }.
                let mut mask = 0u64;
                for w in (0..size).filter(|w| sub >> w & 1 == 1) {
                    for c in 0..p {
                        let sum: Vec<u64> = vectors[w]
                            .iter()
                            .zip(&vectors[v])
                            .map(|(a, b)| (a + c * b) % p)
                            .collect();
                        mask |= 1 << index(&sum);
                    }
                }
                next.insert(mask);
            }
        }
        by_dim.push(next);
    }

    // chains[S] = number of flags ending at S.
    let mut chains: HashMap<u64, u64> = HashMap::from([(1u64, 1u64)]);
    for subspaces in by_dim.iter().skip(1) {
        let mut level = HashMap::new();
        for &s in subspaces {
            let count = chains
                .iter()
                .filter(|(t, _)| (*t & s) == **t && t.count_ones() < s.count_ones())
                .map(|(_, c)| c)
                .sum::<u64>();
            level.insert(s, count);
        }
        chains = level;
    }
    Ok(chains.values().sum())
}

/// `exp(Σ_{m=1..order} N_{q^m} t^m / m)` where `counts[m−1] = N_{q^m}`.
pub fn zeta_from_counts(counts: &[BigInt], order: usize) -> Result<TruncatedSeries, Error> {
    if counts.len() < order {
        return Err(Error::MissingCounts {
            needed: order,
            got: counts.len(),
        });
    }
    let mut log = vec![BigRational::zero()];
    for (m, n) in counts.iter().take(order).enumerate() {
        log.push(BigRational::new(n.clone(), BigInt::from(m + 1)));
    }
    TruncatedSeries::new(log, order).exp()
}

/// Checks `exp(Σ (1 + q^m) t^m/m) = 1/((1−t)(1−qt))` to order `order`.
pub fn verify_p1_zeta(q: u64, order: usize) -> Result<bool, Error> {
    check_field(q)?;
    let q = BigInt::from(q);
    let counts: Vec<BigInt> = (1..=order as u32).map(|m| BigInt::one() + Pow::pow(&q, m)).collect();
    let zeta = zeta_from_counts(&counts, order)?;
    let den = &IntPolynomial::binomial(1, -1) * &IntPolynomial::new(vec![BigInt::one(), -q]);
    let expected = TruncatedSeries::from_polynomial(&den, order).inverse()?;
    Ok(zeta == expected && zeta.is_integral())
}

/// A curve over `F_q` described by its Frobenius eigenvalue pairs
/// `(ω, q/ω)`, each given by its integer trace `a = ω + q/ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub q: u64,
    pub traces: Vec<i64>,
}

impl Curve {
    pub fn new(q: u64, traces: Vec<i64>) -> Result<Self, Error> {
        check_field(q)?;
        Ok(Self { q, traces })
    }

    pub fn genus(&self) -> usize {
        self.traces.len()
    }

    /// `∏_j (1 − ω_j t) = ∏_pairs (1 − a t + q t²)`.
    pub fn numerator(&self) -> IntPolynomial {
        let q = BigInt::from(self.q);
        self.traces.iter().fold(IntPolynomial::one(), |acc, a| {
            &acc * &IntPolynomial::new(vec![BigInt::one(), BigInt::from(-a), q.clone()])
        })
    }

    /// `Z(t) = ∏_j (1 − ω_j t) / ((1 − t)(1 − qt))` to order `order`.
    pub fn zeta(&self, order: usize) -> Result<TruncatedSeries, Error> {
        let den =
            &IntPolynomial::binomial(1, -1) * &IntPolynomial::new(vec![BigInt::one(), BigInt::from(-(self.q as i128))]);
        TruncatedSeries::from_polynomial(&self.numerator(), order)
            .divide(&TruncatedSeries::from_polynomial(&den, order))
    }

    /// `N_{q^m} = q^m + 1 − Σ_j ω_j^m` for `m = 1..=count`.
    ///
    /// Power sums of a pair follow `s_m = a·s_{m−1} − q·s_{m−2}`.
    pub fn point_counts(&self, count: usize) -> Vec<BigInt> {
        let q = BigInt::from(self.q);
        let mut sums = vec![BigInt::zero(); count + 1];
        for a in &self.traces {
            let a = BigInt::from(*a);
            let (mut prev, mut cur) = (BigInt::from(2), a.clone());
            for s in sums.iter_mut().skip(1) {
                *s += &cur;
                let next = &a * &cur - &q * &prev;
                prev = std::mem::replace(&mut cur, next);
            }
        }
        (1..=count)
            .map(|m| Pow::pow(&q, m as u32) + BigInt::one() - &sums[m])
            .collect()
    }

    /// `ζ(s)` at an integer `s`, with `q^{−s}` exact:
    /// `∏_pairs (1 − a q^{−s} + q^{1−2s}) / ((1 − q^{−s})(1 − q^{1−s}))`.
    pub fn zeta_at(&self, s: i32) -> Result<BigRational, Error> {
        let q = BigRational::from_integer(BigInt::from(self.q));
        let x = Pow::pow(&q, -s);
        let one = BigRational::one();
        let num = self.traces.iter().fold(one.clone(), |acc, a| {
            acc * (&one - BigRational::from_integer(BigInt::from(*a)) * &x + &q * &x * &x)
        });
        let den = (&one - &x) * (&one - &q * &x);
        if den.is_zero() {
            return Err(Error::ZetaPole { s });
        }
        Ok(num / den)
    }
}

/// `q^{(n²−1)(g−1)} · ζ(2) ⋯ ζ(n)` for the curve, exactly.
pub fn tamagawa_inverse_measure(curve: &Curve, n: u32) -> Result<BigRational, Error> {
    if n == 0 {
        return Err(Error::InvalidRank { n });
    }
    let g = curve.genus() as i64;
    let exponent = (i64::from(n) * i64::from(n) - 1) * (g - 1);
    let q = BigRational::from_integer(BigInt::from(curve.q));
    let mut value = Pow::pow(&q, exponent as i32);
    for s in 2..=n as i32 {
        value *= curve.zeta_at(s)?;
    }
    Ok(value)
}
