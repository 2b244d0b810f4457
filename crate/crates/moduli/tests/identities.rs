use atiyah_moduli::{
    flag_count, jacobian_poincare, moduli_poincare, morse_decomposition_check, projective_count,
    rank_two_factorization, Curve, DenominatorForm, IntPolynomial, TruncatedSeries,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-20i64..20, 1..8).prop_map(|c| IntPolynomial::from_i64(&c))
}

proptest! {
    #[test]
    fn product_divides_exactly(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let q = (&a * &b).exact_divide(&b).unwrap();
        prop_assert_eq!(q, a);
    }

    #[test]
    fn series_inverse(c in prop::collection::vec(-5i64..5, 1..6)) {
        let mut coeffs = vec![1];
        coeffs.extend(c);
        let s = TruncatedSeries::from_integers(&coeffs, 12);
        let prod = &s * &s.inverse().unwrap();
        prop_assert_eq!(prod, TruncatedSeries::one(12));
    }

    #[test]
    fn counts_agree_with_polynomials(n in 1u32..6, q in 2u64..12) {
        let x = BigInt::from(q);
        prop_assert_eq!(projective_count(n, q).unwrap(), atiyah_moduli::projective_count_polynomial(n).evaluate(&x));
        prop_assert_eq!(flag_count(n, q).unwrap(), atiyah_moduli::flag_count_polynomial(n).evaluate(&x));
    }
}

#[test]
fn genus_two_and_three() {
    assert_eq!(moduli_poincare(2).unwrap().to_string(), "1 + t^2 + 4t^3 + t^4 + t^6");
    let g3 = moduli_poincare(3).unwrap();
    assert_eq!(g3.degree(), Some(12));
    // Euler characteristic of the odd-degree moduli space vanishes.
    assert_eq!(g3.evaluate(&BigInt::from(-1)), BigInt::from(0));
    assert!(moduli_poincare(1).is_err());
}

#[test]
fn poincare_shape_up_to_genus_30() {
    for g in 2..=30 {
        let p = moduli_poincare(g).unwrap();
        assert_eq!(p.degree(), Some(6 * g as usize - 6));
        assert!(p.is_palindromic() && p.is_nonnegative(), "g = {g}");
        assert_eq!(
            jacobian_poincare(g).evaluate(&BigInt::from(1)),
            BigInt::from(1u64 << (2 * g))
        );
    }
}

#[test]
fn series_identities() {
    for g in 2..=6 {
        assert!(morse_decomposition_check(g, 6 * g as usize).unwrap().holds);
        assert!(
            rank_two_factorization(g, 6 * g as usize, DenominatorForm::Squared)
                .unwrap()
                .holds
        );
        assert!(
            !rank_two_factorization(g, 6 * g as usize, DenominatorForm::Unsquared)
                .unwrap()
                .holds
        );
    }
}

#[test]
fn elliptic_curve_counts() {
    // y^2 = x^3 + x over F_5: 3 affine points plus infinity, trace 2.
    let e = Curve::new(5, vec![2]).unwrap();
    let counts = e.point_counts(3);
    assert_eq!(counts[0], BigInt::from(4));
    // Over F_25: q^2 + 1 - (a^2 - 2q) = 26 - (4 - 10) = 32.
    assert_eq!(counts[1], BigInt::from(32));
    assert!(e.zeta(8).unwrap().is_integral());
}
