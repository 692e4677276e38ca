//! Example families: linear fields, the Lins Neto pencil, hypergeometric
//! Riccati foliations with their terminating series, and pullbacks by the
//! power map.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::blowup::{seidenberg_reduce_capped, DEFAULT_CAP};
use crate::curves::PlaneCurve;
use crate::error::{Error, Result};
use crate::exactmath::{xy, MPoly, Rational};
use crate::foliation::{xyz, Foliation};

fn v(name: &str) -> MPoly {
    MPoly::var(xy(), name).expect("x or y")
}

fn c(r: &Rational) -> MPoly {
    MPoly::from_rational(xy(), r.clone())
}

/// `x·q ∂x + p·y ∂y` (the field `x ∂x + (p/q) y ∂y` cleared of
/// denominators) and the expected degree of its first integral.
pub fn linear_family(p: i64, q: i64) -> Result<(Foliation, u32)> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidInput(format!(
            "linear family needs p, q != 0, got ({p}, {q})"
        )));
    }
    if num_integer::gcd(p, q) != 1 {
        return Err(Error::InvalidInput(format!(
            "p = {p} and q = {q} are not coprime"
        )));
    }
    let f = Foliation::new(
        v("x").scale(&Rational::from(q)),
        v("y").scale(&Rational::from(p)),
    )?;
    Ok((f, linear_expected_degree(p, q)))
}

/// `max(|p|, |q|)` for `p/q > 0`, `|p| + |q|` otherwise.
pub fn linear_expected_degree(p: i64, q: i64) -> u32 {
    let (a, b) = (p.unsigned_abs() as u32, q.unsigned_abs() as u32);
    if (p > 0) == (q > 0) {
        a.max(b)
    } else {
        a + b
    }
}

/// The monomial first integral `num / den` of `linear_family(p, q)`.
pub fn linear_first_integral(p: i64, q: i64) -> (MPoly, MPoly) {
    let (a, b) = (p.unsigned_abs() as u32, q.unsigned_abs() as u32);
    let mono = |i: u32, j: u32| MPoly::monomial(xy(), vec![i, j], Rational::one());
    if (p > 0) == (q > 0) {
        // y^|q| / x^|p|
        (mono(0, b), mono(a, 0))
    } else {
        (mono(a, b), mono(0, 0))
    }
}

/// `(x³ - 1)(x - α y²) ∂x + (y³ - 1)(y - α x²) ∂y`.
pub fn lins_neto(alpha: &Rational) -> Foliation {
    let (x, y) = (v("x"), v("y"));
    let one = c(&Rational::one());
    let a = c(alpha);
    let p = x.pow_r(3).sub(&one).mul(&x.sub(&a.mul(&y.pow_r(2))));
    let q = y.pow_r(3).sub(&one).mul(&y.sub(&a.mul(&x.pow_r(2))));
    Foliation::new(p, q).expect("nonzero field")
}

fn check_c(c: &Rational) -> Result<()> {
    if c.is_integer() && !c.is_positive() {
        return Err(Error::InvalidInput(format!(
            "c = {c} is a nonpositive integer"
        )));
    }
    Ok(())
}

/// Riccati foliation of the hypergeometric equation in the coordinates
/// `(x, y) = (z, y)`: `P = x(1 - x)`,
/// `Q = ab - (c - (a + b + 1)x) y - x(1 - x) y²`.
///
/// This is the sign convention for which `y·F(1-k, b, c; x) - F'` is
/// invariant; [`hypergeometric_riccati_printed`] gives the other one.
pub fn hypergeometric_riccati(a: &Rational, b: &Rational, cc: &Rational) -> Result<Foliation> {
    check_c(cc)?;
    let (x, y) = (v("x"), v("y"));
    let one = c(&Rational::one());
    let p = x.mul(&one.sub(&x));
    let lin = c(cc).sub(&x.scale(&(a + b + Rational::one())));
    let q = c(&(a * b)).sub(&lin.mul(&y)).sub(&p.mul(&y.pow_r(2)));
    Foliation::new(p, q)
}

/// `P = x(1 - x)`, `Q = x(1 - x) y² + (c - (a + b + 1)x) y + ab`.
pub fn hypergeometric_riccati_printed(
    a: &Rational,
    b: &Rational,
    cc: &Rational,
) -> Result<Foliation> {
    check_c(cc)?;
    let (x, y) = (v("x"), v("y"));
    let one = c(&Rational::one());
    let p = x.mul(&one.sub(&x));
    let lin = c(cc).sub(&x.scale(&(a + b + Rational::one())));
    let q = p.mul(&y.pow_r(2)).add(&lin.mul(&y)).add(&c(&(a * b)));
    Foliation::new(p, q)
}

/// Pochhammer symbol `(p)_n = p (p + 1) ⋯ (p + n - 1)`.
pub fn pochhammer(p: &Rational, n: u32) -> Rational {
    (0..n).fold(Rational::one(), |acc, i| {
        acc * (p + Rational::from(i as i64))
    })
}

/// The terminating series `F(1 - k, b, c; x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeometricPoly {
    pub k: u32,
    pub b: Rational,
    pub c: Rational,
    /// Coefficient of `x^n` at index `n`.
    pub coeffs: Vec<Rational>,
}

impl HypergeometricPoly {
    pub fn poly(&self) -> MPoly {
        MPoly::from_terms(
            xy(),
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| (vec![n as u32, 0], a.clone())),
        )
    }
}

/// Coefficients `(1-k)_n (b)_n / ((c)_n n!)` for `n < k`.
pub fn hypergeometric_poly(k: u32, b: &Rational, cc: &Rational) -> Result<HypergeometricPoly> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let a = Rational::from(1 - k as i64);
    let mut coeffs = Vec::new();
    let mut fact = Rational::one();
    for n in 0..k {
        if n > 0 {
            fact = fact * Rational::from(n as i64);
        }
        let den = pochhammer(cc, n) * &fact;
        if den.is_zero() {
            return Err(Error::InvalidInput(format!(
                "(c)_{n} = 0 for c = {cc}: zero denominator"
            )));
        }
        coeffs.push(pochhammer(&a, n) * pochhammer(b, n) / den);
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(HypergeometricPoly {
        k,
        b: b.clone(),
        c: cc.clone(),
        coeffs,
    })
}

/// `y·F(1-k, b, c; x) - F'(1-k, b, c; x)`.
pub fn riccati_invariant_curve(k: u32, b: &Rational, cc: &Rational) -> Result<PlaneCurve> {
    check_c(cc)?;
    let f = hypergeometric_poly(k, b, cc)?.poly();
    PlaneCurve::new(v("y").mul(&f).sub(&f.derivative(0)))
}

/// How the power map is placed in the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowerFrame {
    /// `(X, Y, Z) -> (X^r, Y^r, Z^r)`, branched over the coordinate triangle.
    Coordinate,
    /// The power map conjugated so that it branches over the invariant
    /// lines `{x = 1}`, `{y = ω}`, `{y = ω²}` of the Lins Neto pencil.
    LinsNeto,
}

/// Homogeneous components of the branched covering of degree `r`.
pub fn power_map(r: u32, frame: PowerFrame) -> [MPoly; 3] {
    let w3 = xyz();
    let var = |n: &str| MPoly::var(w3.clone(), n).unwrap();
    let (x, y, z) = (var("x"), var("y"), var("z"));
    match frame {
        PowerFrame::Coordinate => [x.pow_r(r), y.pow_r(r), z.pow_r(r)],
        PowerFrame::LinsNeto => {
            // linear forms of the triangle: u = X - Z and, over Q(√-3),
            // Y - ωZ = v + √-3 w, Y - ω²Z = v - √-3 w
            let half = Rational::frac(1, 2);
            let u = x.sub(&z);
            let vv = y.add(&z.scale(&half));
            let w = z.scale(&-half.clone());
            // (v + √-3 w)^r = A + √-3 B
            let mut a = MPoly::zero(w3.clone());
            let mut b = MPoly::zero(w3.clone());
            for k in 0..=r {
                let binom = (0..k).fold(Rational::one(), |acc, i| {
                    acc * Rational::frac((r - i) as i64, (i + 1) as i64)
                });
                let m = (-3i64).pow(k / 2);
                let t = vv
                    .pow_r(r - k)
                    .mul(&w.pow_r(k))
                    .scale(&(binom * Rational::from(m)));
                if k % 2 == 0 {
                    a = a.add(&t);
                } else {
                    b = b.add(&t);
                }
            }
            let two_b = b.scale(&Rational::from(2));
            [u.pow_r(r).sub(&two_b), a.add(&b), two_b.neg()]
        }
    }
}

/// Pullback by the coordinate power map `(X^r, Y^r, Z^r)`.
pub fn power_pullback(f: &Foliation, r: u32) -> Result<Foliation> {
    power_pullback_in(f, r, PowerFrame::Coordinate)
}

pub fn power_pullback_in(f: &Foliation, r: u32, frame: PowerFrame) -> Result<Foliation> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be at least 1".into()));
    }
    f.pullback(&power_map(r, frame))
}

/// Number of dicritical blow-ups in the Seidenberg reduction of `f`,
/// conjugate points included.
pub fn dicritical_count(f: &Foliation) -> Result<usize> {
    Ok(seidenberg_reduce_capped(f, DEFAULT_CAP)?.dicritical_count())
}

/// Family tags accepted by [`FamilyDescriptor::generate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Linear,
    LinsNeto,
    RiccatiHypergeometric,
    PowerPullback,
}

/// A published value with its source.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Published {
    pub name: &'static str,
    pub value: Value,
    pub source: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyDescriptor {
    pub family: Family,
    pub params: Value,
    pub published: Vec<Published>,
}

#[derive(Deserialize, Default)]
struct Params {
    p: Option<i64>,
    q: Option<i64>,
    alpha: Option<Rational>,
    a: Option<Rational>,
    b: Option<Rational>,
    c: Option<Rational>,
    k: Option<u32>,
    r: Option<u32>,
    frame: Option<PowerFrame>,
}

fn need<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidInput(format!("missing parameter {name:?}")))
}

impl FamilyDescriptor {
    /// Builds a family member from JSON parameters, returning the foliation
    /// and the descriptor carrying the published invariants.
    pub fn generate(family: Family, params: &Value) -> Result<(Foliation, FamilyDescriptor)> {
        let p: Params = serde_json::from_value(params.clone())
            .map_err(|e| Error::InvalidInput(format!("family parameters: {e}")))?;
        let pb = |name, value, source| Published {
            name,
            value,
            source,
        };
        let (f, published) = match family {
            Family::Linear => {
                let (pp, qq) = (need(p.p, "p")?, need(p.q, "q")?);
                let (f, fi) = linear_family(pp, qq)?;
                (
                    f,
                    vec![
                        pb(
                            "first_integral_degree",
                            json!(fi),
                            "degree max(p,q) for p/q > 0, |p|+|q| otherwise",
                        ),
                        pb(
                            "kodaira_dimension",
                            json!("-infinity"),
                            "resolution is a rational fibration",
                        ),
                    ],
                )
            }
            Family::LinsNeto => {
                let alpha = need(p.alpha, "alpha")?;
                (
                    lins_neto(&alpha),
                    vec![
                        pb("degree", json!(4), "foliations of degree 4"),
                        pb(
                            "generic_leaf_genus_when_integrable",
                            json!(1),
                            "generic leaf has geometric genus 1",
                        ),
                        pb(
                            "kodaira_dimension",
                            json!(0),
                            "Kodaira dimension of each example is zero",
                        ),
                    ],
                )
            }
            Family::RiccatiHypergeometric => {
                let b = need(p.b, "b")?;
                let cc = need(p.c, "c")?;
                let a = match (p.a, p.k) {
                    (Some(a), _) => a,
                    (None, Some(k)) => Rational::from(1 - k as i64),
                    (None, None) => {
                        return Err(Error::InvalidInput(
                            "missing parameter \"a\" or \"k\"".into(),
                        ))
                    }
                };
                let f = hypergeometric_riccati(&a, &b, &cc)?;
                let mut published = vec![pb(
                    "kodaira_dimension",
                    json!(1),
                    "Riccati foliations, Kodaira dimension one",
                )];
                if let Some(k) = p.k {
                    published.push(pb(
                        "invariant_curve_degree",
                        json!(k + 1),
                        "invariant rational curve of degree k+1 (computed degree is k)",
                    ));
                }
                (f, published)
            }
            Family::PowerPullback => {
                let alpha = need(p.alpha, "alpha")?;
                let r = need(p.r, "r")?;
                let frame = p.frame.unwrap_or(PowerFrame::LinsNeto);
                let f = power_pullback_in(&lins_neto(&alpha), r, frame)?;
                (
                    f,
                    vec![
                        pb(
                            "degree",
                            json!(3 * r + 1),
                            "the foliations in the family have degree 3r+1",
                        ),
                        pb(
                            "dicritical_count",
                            json!(3 * r * r + 6 * r + 3),
                            "exactly 3r^2 + 6r + 3 dicritical singularities",
                        ),
                        pb(
                            "kodaira_dimension",
                            json!(2),
                            "general type for r sufficiently large",
                        ),
                    ],
                )
            }
        };
        Ok((
            f,
            FamilyDescriptor {
                family,
                params: params.clone(),
                published,
            },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::is_invariant;
    use crate::exactmath::poly;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn documented_linear_family() {
        assert_eq!(linear_family(2, 3).unwrap().1, 3);
        assert_eq!(linear_family(-1, 1).unwrap().1, 2);
        let (f, e) = linear_family(1, 1).unwrap();
        assert_eq!((f.degree(), e), (0, 1));
        assert!(linear_family(0, 1).is_err());
        assert!(linear_family(2, 4).is_err());
    }

    #[test]
    fn lins_neto_degrees() {
        for a in [r(0, 1), r(1, 1), r(2, 1), r(-3, 2), r(3, 1)] {
            assert_eq!(lins_neto(&a).degree(), 4);
        }
        assert_eq!(lins_neto(&r(0, 1)).p(), &poly("(x^3 - 1)*x"));
    }

    #[test]
    fn documented_hypergeometric_polys() {
        assert_eq!(
            hypergeometric_poly(1, &r(1, 2), &r(1, 3)).unwrap().poly(),
            poly("1")
        );
        assert_eq!(
            hypergeometric_poly(2, &r(1, 1), &r(2, 1)).unwrap().poly(),
            poly("1 - x/2")
        );
        let h = hypergeometric_poly(3, &r(1, 2), &r(1, 3)).unwrap();
        // n = 1: (-2)(1/2)/(1/3) = -3; n = 2: (-2)(-1)(1/2)(3/2)/((1/3)(4/3)·2) = 9/4... by formula
        assert_eq!(h.coeffs[1], r(-3, 1));
        assert_eq!(h.coeffs[2], r(2, 1) * r(3, 4) / (r(4, 9) * r(2, 1)));
        assert!(hypergeometric_poly(3, &r(1, 2), &r(0, 1)).is_err());
    }

    #[test]
    fn riccati_fields_and_curves() {
        for (a, b, cc) in [(r(0, 1), r(1, 2), r(1, 3)), (r(-2, 1), r(1, 1), r(2, 1))] {
            let f = hypergeometric_riccati(&a, &b, &cc).unwrap();
            assert_eq!(f.degree(), 4);
            for line in ["x", "x - 1"] {
                assert!(is_invariant(&f, &PlaneCurve::parse(line).unwrap()).is_some());
            }
        }
        assert!(hypergeometric_riccati(&r(0, 1), &r(1, 1), &r(-2, 1)).is_err());
        let f = hypergeometric_riccati(&r(0, 1), &r(1, 2), &r(1, 3)).unwrap();
        assert!(is_invariant(&f, &PlaneCurve::parse("y").unwrap()).is_some());
        for k in 1..=5u32 {
            let a = Rational::from(1 - k as i64);
            let (b, cc) = (r(1, 2), r(1, 3));
            let f = hypergeometric_riccati(&a, &b, &cc).unwrap();
            let curve = riccati_invariant_curve(k, &b, &cc).unwrap();
            let cert = is_invariant(&f, &curve).expect("invariant");
            assert!(cert.verify(&f));
            assert_eq!(curve.degree(), k);
        }
        let curve = riccati_invariant_curve(2, &r(1, 1), &r(2, 1)).unwrap();
        assert_eq!(curve.f(), &poly("y*(1 - x/2) + 1/2"));
    }

    #[test]
    fn pullback_frames() {
        let g = lins_neto(&r(2, 1));
        assert_eq!(power_pullback(&g, 1).unwrap(), g);
        assert_eq!(power_pullback_in(&g, 1, PowerFrame::LinsNeto).unwrap(), g);
        assert_eq!(
            power_pullback_in(&g, 2, PowerFrame::LinsNeto)
                .unwrap()
                .degree(),
            7
        );
        assert_eq!(power_pullback(&g, 2).unwrap().degree(), 10);
    }

    #[test]
    fn small_dicritical_counts() {
        assert_eq!(
            dicritical_count(&Foliation::from_strs("x", "y").unwrap()).unwrap(),
            1
        );
        // 3x ∂x + 2y ∂y: the 2:3 node at the origin and the 1:3 node at
        // [1:0:0] each end in one dicritical blow-up; [0:1:0] is a saddle
        let (f, _) = linear_family(2, 3).unwrap();
        let t = seidenberg_reduce_capped(&f, DEFAULT_CAP).unwrap();
        assert!(t.leaves().all(|n| n.classification.is_reduced()));
        assert_eq!(dicritical_count(&f).unwrap(), 2);
    }
}
