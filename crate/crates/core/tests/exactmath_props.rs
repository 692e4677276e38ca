//! Property tests for the exact arithmetic layer.

use foliate::exactmath::roots::count_roots;
use foliate::exactmath::{gcd, isolate_roots, refine, resultant, xy, MPoly, Rational, UPoly};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::frac(n, d))
}

fn mpoly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, rational()), 0..=max_terms).prop_map(
        move |terms| {
            MPoly::from_terms(
                xy(),
                terms
                    .into_iter()
                    .filter(|(i, j, _)| i + j <= max_deg)
                    .map(|(i, j, c)| (vec![i, j], c)),
            )
        },
    )
}

fn nonzero_mpoly(max_deg: u32) -> impl Strategy<Value = MPoly> {
    mpoly(max_deg, 5).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in mpoly(3, 5), b in mpoly(3, 5), c in mpoly(3, 5)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn gcd_divides_both(a in nonzero_mpoly(3), b in nonzero_mpoly(3), c in nonzero_mpoly(2)) {
        let (f, g) = (a.mul(&c), b.mul(&c));
        let h = gcd(&f, &g);
        prop_assert!(f.div_exact(&h).is_some());
        prop_assert!(g.div_exact(&h).is_some());
        // the planted common factor divides the gcd
        prop_assert!(h.div_exact(&c.primitive()).is_some() || c.is_constant());
    }

    #[test]
    fn resultant_detects_planted_roots(
        r in rational(), y0 in rational(), a in nonzero_mpoly(2), b in nonzero_mpoly(2),
    ) {
        // f, g vanish along the line x = r, so the resultant in x is zero
        // identically and every specialization shares the root r
        let root = MPoly::parse("x", &["x", "y"]).unwrap()
            .sub(&MPoly::from_rational(xy(), r.clone()));
        let f = root.mul(&a);
        let g = root.mul(&b);
        prop_assert!(resultant(&f, &g, "x").unwrap().is_zero());
        let f0 = f.eval_var(1, &y0).to_upoly(0);
        let g0 = g.eval_var(1, &y0).to_upoly(0);
        if !f0.is_zero() && !g0.is_zero() {
            prop_assert!(f0.eval(&r).is_zero() && g0.eval(&r).is_zero());
        }
    }

    #[test]
    fn resultant_vanishes_iff_common_root(
        roots_f in prop::collection::vec(-5i64..=5, 1..=3),
        roots_g in prop::collection::vec(-5i64..=5, 1..=3),
    ) {
        let lin = |r: i64| UPoly::new(vec![Rational::from(-r), Rational::one()]);
        let prod = |rs: &[i64]| rs.iter().fold(UPoly::constant(Rational::one()), |acc, &r| acc.mul(&lin(r)));
        let (uf, ug) = (prod(&roots_f), prod(&roots_g));
        let f = MPoly::from_upoly(xy(), 0, &uf);
        let g = MPoly::from_upoly(xy(), 0, &ug).add(&MPoly::parse("y", &["x", "y"]).unwrap());
        // Res_x(f, g)(y0) = 0 iff f and g(., y0) share a root; at y0 = 0 that
        // is a shared root of uf and ug
        let res = resultant(&f, &g, "x").unwrap();
        let at_zero = res.eval_var(1, &Rational::zero()).constant_term().unwrap_or_else(Rational::zero);
        let shared = roots_f.iter().any(|r| roots_g.contains(r));
        prop_assert_eq!(at_zero.is_zero(), shared);
    }

    #[test]
    fn root_isolation_counts_and_refines(coeffs in prop::collection::vec(-6i64..=6, 2..=5)) {
        let f = UPoly::from_ints(&coeffs);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let width = Rational::frac(1, 4);
        let boxes = isolate_roots(&f, &width).unwrap();
        prop_assert_eq!(boxes.len(), f.squarefree_part().deg());
        let sq = f.squarefree_part();
        for b in &boxes {
            let fine = refine(&sq, b, &Rational::frac(1, 40));
            prop_assert_eq!(count_roots(&sq, &fine).unwrap(), 1);
            prop_assert!(fine.width() <= Rational::frac(1, 40));
        }
    }
}
