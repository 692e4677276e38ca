//! Property tests for the example families.

use foliate::curves::{first_integral_check, first_integral_degree, is_invariant};
use foliate::exactmath::Rational;
use foliate::families::{
    hypergeometric_poly, hypergeometric_riccati, linear_expected_degree, linear_family,
    linear_first_integral, lins_neto, power_pullback_in, PowerFrame,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::frac(n, d))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::frac(n, d))
}

/// `c` avoiding `0, -1, -2, ...`.
fn admissible_c() -> impl Strategy<Value = Rational> {
    rational().prop_filter("c not a nonpositive integer", |c| {
        !(c.is_integer() && *c <= Rational::zero())
    })
}

fn coprime_pair(bound: i64) -> impl Strategy<Value = (i64, i64)> {
    (-bound..=bound, -bound..=bound).prop_filter("coprime, nonzero", |&(p, q)| {
        p != 0 && q != 0 && num_gcd(p, q) == 1
    })
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lins_neto_has_degree_four(alpha in rational()) {
        prop_assert_eq!(lins_neto(&alpha).degree(), 4);
    }

    #[test]
    fn riccati_curves_are_invariant(k in 1u32..=5, b in rational(), c in admissible_c()) {
        let a = Rational::from(1 - k as i64);
        let fol = hypergeometric_riccati(&a, &b, &c).unwrap();
        let curve = foliate::families::riccati_invariant_curve(k, &b, &c).unwrap();
        let cert = is_invariant(&fol, &curve);
        prop_assert!(cert.is_some());
        prop_assert!(cert.unwrap().verify(&fol));
        prop_assert!(curve.degree() <= k);
    }

    #[test]
    fn pochhammer_ratio_recurrence(k in 1u32..=8, b in positive_rational(), c in positive_rational()) {
        let h = hypergeometric_poly(k, &b, &c).unwrap();
        prop_assert_eq!(h.coeffs.len() as u32, k);
        prop_assert_eq!(&h.coeffs[0], &Rational::one());
        for n in 0..h.coeffs.len() - 1 {
            let nn = Rational::from(n as i64);
            let ratio = (Rational::from(1 - k as i64) + &nn) * (b.clone() + &nn)
                / ((c.clone() + &nn) * (nn.clone() + Rational::one()));
            prop_assert_eq!(h.coeffs[n + 1].clone(), h.coeffs[n].clone() * ratio);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn lins_neto_pullbacks_have_degree_3r_plus_1(r in 1u32..=2, alpha in rational()) {
        let g = power_pullback_in(&lins_neto(&alpha), r, PowerFrame::LinsNeto).unwrap();
        prop_assert_eq!(g.degree(), 3 * r + 1);
    }

    #[test]
    fn linear_family_dichotomy((p, q) in coprime_pair(3)) {
        let (fol, expected) = linear_family(p, q).unwrap();
        prop_assert_eq!(expected, linear_expected_degree(p, q));
        let (num, den) = linear_first_integral(p, q);
        prop_assert!(first_integral_check(&fol, &num, &den));
        prop_assert_eq!(num.degree().max(den.degree()), expected);
        let found = first_integral_degree(&fol, expected).unwrap().map(|(m, _)| m);
        prop_assert_eq!(found, Some(expected));
    }
}
