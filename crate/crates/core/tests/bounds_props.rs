//! Property tests for the Riemann-Roch gate and the degree bounds.

use foliate::bounds::{
    first_integral_bound_from_height, first_integral_degree_bound, invariant_curve_degree_bound,
    PlurigeneraOracle,
};
use foliate::Error;
use proptest::prelude::*;

/// Sections of the k-th power of the canonical bundle, written out here
/// independently of the library.
fn sections(g: i64, k: i64) -> i64 {
    match (g, k) {
        (0, _) => 0,
        (1, _) => 1,
        (_, 1) => g,
        _ => (2 * g - 2) * k - g + 1,
    }
}

/// First `n` with `P_n > sections(g, n) + n z`, if the list reaches it.
fn oracle_n0(p: &[i64], g: i64, z: i64) -> Option<u64> {
    p.iter()
        .enumerate()
        .map(|(i, &v)| (i as i64 + 1, v))
        .find(|&(n, v)| v > sections(g, n) + n * z)
        .map(|(n, _)| n as u64)
}

fn plurigenera() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..=80, 1..=12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn n0_is_the_first_firing_index(p in plurigenera(), d in 1u64..=6, g in 0i64..=5, z in 0i64..=4) {
        let oracle = PlurigeneraOracle::explicit(p.clone());
        match (invariant_curve_degree_bound(d, g, &oracle, z), oracle_n0(&p, g, z)) {
            (Ok(r), Some(n0)) => {
                prop_assert_eq!(r.n0, n0);
                prop_assert_eq!(r.bound, n0 * (d - 1));
                prop_assert!(r.verify_trace());
            }
            (Err(Error::OracleExhausted { .. }), None) => {}
            (other, expected) => prop_assert!(false, "{:?} vs {:?}", other.map(|r| r.n0), expected),
        }
    }

    #[test]
    fn larger_oracles_never_raise_n0(
        p in plurigenera(), bumps in prop::collection::vec(0i64..=20, 12),
        d in 2u64..=6, g in 0i64..=5, z in 0i64..=4,
    ) {
        let q: Vec<i64> = p.iter().zip(&bumps).map(|(a, b)| a + b).collect();
        let small = invariant_curve_degree_bound(d, g, &PlurigeneraOracle::explicit(p), z);
        let big = invariant_curve_degree_bound(d, g, &PlurigeneraOracle::explicit(q), z);
        if let Ok(s) = small {
            prop_assert!(big.unwrap().n0 <= s.n0);
        }
    }

    #[test]
    fn larger_z_or_genus_never_lowers_n0(
        p in plurigenera(), d in 2u64..=6, g in 0i64..=5, z in 0i64..=4, dg in 0i64..=2, dz in 0i64..=2,
    ) {
        let oracle = PlurigeneraOracle::explicit(p);
        let base = invariant_curve_degree_bound(d, g, &oracle, z);
        let more = invariant_curve_degree_bound(d, g + dg, &oracle, z + dz);
        if let Ok(m) = more {
            prop_assert!(base.unwrap().n0 <= m.n0);
        }
    }

    #[test]
    fn zero_z_matches_the_first_integral_bound(p in plurigenera(), d in 1u64..=6, g in 2i64..=6) {
        let oracle = PlurigeneraOracle::explicit(p);
        let a = first_integral_degree_bound(d, g, &oracle).map(|r| (r.n0, r.bound));
        let b = invariant_curve_degree_bound(d, g, &oracle, 0).map(|r| (r.n0, r.bound));
        prop_assert_eq!(a.ok(), b.ok());
    }

    #[test]
    fn incoherent_heights_are_rejected(h in 1u64..=3, n in 1u64..=4, g in 2i64..=4) {
        // P_{h n} one below the guaranteed binom(n + 2, 2)
        let idx = (h * n) as usize;
        let mut p = vec![100i64; idx];
        p[idx - 1] = ((n + 1) * (n + 2) / 2) as i64 - 1;
        let oracle = PlurigeneraOracle { explicit: Some(p), height: Some(h) };
        prop_assert!(matches!(
            first_integral_degree_bound(3, g, &oracle),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn height_bound_scans_multiples(h in 1u64..=4, d in 2u64..=6, g in 2i64..=5) {
        let r = first_integral_bound_from_height(d, g, h).unwrap();
        prop_assert!(r.verify_trace());
        let n = r.n0 as i64;
        let fires = |n: i64| (n + 1) * (n + 2) / 2 > sections(g, h as i64 * n);
        prop_assert!(fires(n));
        prop_assert!((1..n).all(|m| !fires(m)));
        prop_assert_eq!(r.bound, h * r.n0 * (d - 1));
    }
}
