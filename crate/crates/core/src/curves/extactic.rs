//! Extactic polynomials and rational first integrals.
//!
//! `E_m` is the determinant of the matrix whose rows are `v, X(v), X²(v),
//! ...` for the monomial basis `v` of degree at most `m`. Every invariant
//! curve of degree at most `m` divides it, and it vanishes identically
//! exactly when the field has a rational first integral of degree at most `m`.
//!
//! [`extactic`] computes `E_m` symbolically by Bareiss elimination.
//! [`extactic_decision`] only decides whether `E_m` vanishes: a nonzero
//! value at a rational point proves `E_m ≠ 0`; vanishing is proved by a
//! rational first integral `g1 / g2` of degree at most `m`, whose level
//! curves give infinitely many invariant curves dividing `E_m`. The
//! candidates `g1`, `g2` are read off the kernel of the evaluated matrix.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::linalg::{det_field, kernel_field};
use crate::exactmath::{det_bareiss, gcd, xy, MPoly, Rational};
use crate::foliation::Foliation;

/// Largest basis size for which the symbolic determinant is attempted as a
/// fallback.
pub const SYMBOLIC_LIMIT: usize = 28;

/// Monomials of degree at most `m` in graded order.
pub fn monomial_basis(m: u32) -> Vec<MPoly> {
    let mut out = Vec::new();
    for deg in 0..=m {
        for i in (0..=deg).rev() {
            out.push(MPoly::monomial(xy(), vec![i, deg - i], Rational::one()));
        }
    }
    out
}

/// Rows `X^k(v)` for `k = 0 .. N-1`.
pub fn extactic_matrix(fol: &Foliation, m: u32) -> Vec<Vec<MPoly>> {
    let v = monomial_basis(m);
    let n = v.len();
    let mut rows = vec![v];
    for k in 1..n {
        let next: Vec<MPoly> = rows[k - 1].iter().map(|f| fol.apply(f)).collect();
        rows.push(next);
    }
    rows
}

/// The extactic polynomial `E_m`, `m >= 1`.
pub fn extactic(fol: &Foliation, m: u32) -> Result<MPoly> {
    if m == 0 {
        return Err(Error::InvalidInput(
            "extactic order must be at least 1".into(),
        ));
    }
    Ok(det_bareiss(extactic_matrix(fol, m)))
}

/// `X(num)·den - num·X(den) = 0`.
pub fn first_integral_check(fol: &Foliation, num: &MPoly, den: &MPoly) -> bool {
    let v = xy();
    let (num, den) = (num.with_vars_lossy(&v), den.with_vars_lossy(&v));
    if den.is_zero() {
        return false;
    }
    fol.apply(&num)
        .mul(&den)
        .sub(&num.mul(&fol.apply(&den)))
        .is_zero()
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExtacticDecision {
    /// `E_m` is nonzero at the rational point.
    NonZero {
        point: [Rational; 2],
        value: Rational,
    },
    /// `E_m ≡ 0`, certified by the first integral `numerator / denominator`.
    Vanishes {
        numerator: MPoly,
        denominator: MPoly,
    },
    /// `E_m ≡ 0` by symbolic expansion.
    VanishesSymbolic,
}

impl ExtacticDecision {
    pub fn vanishes(&self) -> bool {
        !matches!(self, ExtacticDecision::NonZero { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            ExtacticDecision::NonZero { point, value } => json!({
                "vanishes": false,
                "witness": {"point": [point[0].to_string(), point[1].to_string()], "value": value.to_string()},
            }),
            ExtacticDecision::Vanishes {
                numerator,
                denominator,
            } => json!({
                "vanishes": true,
                "first_integral": {"numerator": numerator.to_string(), "denominator": denominator.to_string()},
            }),
            ExtacticDecision::VanishesSymbolic => {
                json!({"vanishes": true, "certificate": "symbolic"})
            }
        }
    }
}

fn evaluate(rows: &[Vec<MPoly>], pt: &[Rational; 2]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|f| f.eval(pt).unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect()
}

fn random_point(rng: &mut StdRng) -> [Rational; 2] {
    let mut r = || Rational::frac(rng.gen_range(-97..=97), rng.gen_range(1..=23));
    [r(), r()]
}

/// The common factor of all curves of degree at most `m` in the kernel at
/// `pt`: the invariant curve through `pt` when a first integral exists.
fn kernel_curve(rows: &[Vec<MPoly>], basis: &[MPoly], pt: &[Rational; 2]) -> Option<MPoly> {
    let ker = kernel_field(&evaluate(rows, pt));
    let mut g: Option<MPoly> = None;
    for v in ker {
        let f = basis
            .iter()
            .zip(&v)
            .fold(MPoly::zero(xy()), |acc, (b, c)| acc.add(&b.scale(c)));
        g = Some(match g {
            None => f.primitive(),
            Some(h) => gcd(&h, &f),
        });
    }
    g.filter(|g| !g.is_constant())
}

/// Decides whether `E_m` vanishes identically.
pub fn extactic_decision(fol: &Foliation, m: u32) -> Result<ExtacticDecision> {
    if m == 0 {
        return Err(Error::InvalidInput(
            "extactic order must be at least 1".into(),
        ));
    }
    let rows = extactic_matrix(fol, m);
    let basis = monomial_basis(m);
    let mut rng = StdRng::seed_from_u64(0x00ec_7ac7 ^ m as u64);
    let mut curves: Vec<MPoly> = Vec::new();
    for _ in 0..4 {
        let pt = random_point(&mut rng);
        let value = det_field(evaluate(&rows, &pt));
        if !value.is_zero() {
            return Ok(ExtacticDecision::NonZero { point: pt, value });
        }
        if let Some(g) = kernel_curve(&rows, &basis, &pt) {
            for h in &curves {
                if first_integral_check(fol, &g, h) && !proportional(&g, h) {
                    let c = gcd(&g, h);
                    let num = g.div_exact(&c).unwrap();
                    let den = h.div_exact(&c).unwrap();
                    return Ok(ExtacticDecision::Vanishes {
                        numerator: num,
                        denominator: den,
                    });
                }
            }
            curves.push(g);
        }
    }
    if rows.len() <= SYMBOLIC_LIMIT {
        let e = det_bareiss(rows);
        return Ok(if e.is_zero() {
            ExtacticDecision::VanishesSymbolic
        } else {
            let pt = (1..)
                .map(|i| [Rational::from(i), Rational::from(2 * i + 1)])
                .find(|pt| !e.eval(pt).unwrap_or_else(Rational::zero).is_zero())
                .unwrap();
            let value = e.eval(&pt).unwrap();
            ExtacticDecision::NonZero { point: pt, value }
        });
    }
    Err(Error::Undetermined(format!(
        "extactic E_{m}: vanishes at sample points but no first integral was found"
    )))
}

fn proportional(a: &MPoly, b: &MPoly) -> bool {
    let (Some((_, ca)), Some((_, cb))) = (a.leading_term(), b.leading_term()) else {
        return false;
    };
    a.scale(cb).sub(&b.scale(ca)).is_zero()
}

/// Smallest `m <= max_m` with `E_m ≡ 0`, with its certificate.
pub fn first_integral_degree(
    fol: &Foliation,
    max_m: u32,
) -> Result<Option<(u32, ExtacticDecision)>> {
    for m in 1..=max_m {
        let d = extactic_decision(fol, m)?;
        if d.vanishes() {
            return Ok(Some((m, d)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::poly;

    fn fol(p: &str, q: &str) -> Foliation {
        Foliation::from_strs(p, q).unwrap()
    }

    #[test]
    fn documented_extactics() {
        let e = extactic(&fol("x", "2*y"), 1).unwrap();
        assert!(!e.is_zero());
        assert!(e.div_exact(&poly("x")).is_some());
        assert!(e.div_exact(&poly("y")).is_some());
        assert!(extactic(&fol("x", "y"), 1).unwrap().is_zero());
        // alpha = 2/3: first integral y^3 / x^2
        let f = fol("3*x", "2*y");
        assert!(!extactic(&f, 2).unwrap().is_zero());
        assert!(extactic(&f, 3).unwrap().is_zero());
    }

    #[test]
    fn decision_agrees_with_symbolic_determinant() {
        for (p, q) in [
            ("x", "2*y"),
            ("x", "y"),
            ("3*x", "2*y"),
            ("x", "-y"),
            ("y", "x^2 - x"),
        ] {
            let f = fol(p, q);
            for m in 1..=3 {
                let sym = extactic(&f, m).unwrap().is_zero();
                assert_eq!(
                    extactic_decision(&f, m).unwrap().vanishes(),
                    sym,
                    "{p}, {q}, m = {m}"
                );
            }
        }
    }

    #[test]
    fn documented_first_integrals() {
        let (m, cert) = first_integral_degree(&fol("3*x", "2*y"), 5)
            .unwrap()
            .unwrap();
        assert_eq!(m, 3);
        let ExtacticDecision::Vanishes {
            numerator,
            denominator,
        } = cert
        else {
            panic!("expected a first integral")
        };
        assert!(first_integral_check(
            &fol("3*x", "2*y"),
            &numerator,
            &denominator
        ));
        assert_eq!(
            first_integral_degree(&fol("x", "-y"), 5)
                .unwrap()
                .unwrap()
                .0,
            2
        );
        assert!(first_integral_check(&fol("x", "y"), &poly("y"), &poly("x")));
        assert!(first_integral_check(
            &fol("2*x", "3*y"),
            &poly("y^2"),
            &poly("x^3")
        ));
        assert!(!first_integral_check(
            &fol("x", "2*y"),
            &poly("y"),
            &poly("x")
        ));
    }
}
