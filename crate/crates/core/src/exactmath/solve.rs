//! Exact common zeros of bivariate polynomials, grouped into Galois orbits.
//!
//! A point is stored once per orbit with coordinates in a number field
//! `L = Q(θ)`; the orbit size is `[L : Q]`. The x-coordinates come from the
//! irreducible factors of `Res_y(P, Q)`; over each factor field the
//! y-coordinates are the roots of `gcd_y(P(θ, y), Q(θ, y))`, adjoined with a
//! primitive element when they are not already in the field.

use std::sync::Arc;

use super::factor::irreducible_factors;
use super::field::Field;
use super::linalg::resultant;
use super::mpoly::{vars_of, MPoly};
use super::numfield::{AlgNum, NumberField};
use super::rational::Rational;
use super::roots::{isolate_roots, ComplexBox};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// A Galois orbit of points in the affine plane.
#[derive(Clone, Debug, PartialEq)]
pub struct Orbit {
    pub field: Arc<NumberField>,
    pub x: AlgNum,
    pub y: AlgNum,
}

impl Orbit {
    pub fn rational(x: Rational, y: Rational) -> Self {
        let k = NumberField::rationals();
        Orbit {
            x: AlgNum::from_rational(&k, x),
            y: AlgNum::from_rational(&k, y),
            field: k,
        }
    }

    /// Number of conjugate points represented.
    pub fn size(&self) -> usize {
        self.field.degree()
    }

    pub fn is_rational(&self) -> bool {
        self.field.degree() == 1
    }

    /// Exact description, e.g. `(t, -t - 1) with t^2 + t + 1 = 0`.
    pub fn describe(&self) -> String {
        if self.is_rational() {
            format!(
                "({}, {})",
                self.x.as_rational().unwrap(),
                self.y.as_rational().unwrap()
            )
        } else {
            format!(
                "({}, {}) with {} = 0",
                self.x,
                self.y,
                self.field.modulus().fmt_in(self.field.name())
            )
        }
    }

    /// Certified boxes for the conjugates of the field generator.
    pub fn generator_boxes(&self, width: &Rational) -> Vec<ComplexBox> {
        if self.is_rational() {
            return Vec::new();
        }
        isolate_roots(self.field.modulus(), width).unwrap_or_default()
    }

    fn sort_key(&self) -> (usize, Vec<Rational>, String, String) {
        (
            self.field.degree(),
            self.field.modulus().coeffs().to_vec(),
            self.x.to_string(),
            self.y.to_string(),
        )
    }
}

/// Field of a monic irreducible polynomial, Q itself for linear input.
pub fn field_of(m: &UPoly<Rational>) -> (Arc<NumberField>, AlgNum) {
    let m = m.monic();
    if m.deg() == 1 {
        let k = NumberField::rationals();
        let root = m.coeffs()[0].clone() * Rational::from(-1);
        let a = AlgNum::from_rational(&k, root);
        return (k, a);
    }
    let k = NumberField::new(&m, "t");
    let g = AlgNum::generator(&k);
    (k, g)
}

/// One representative per Galois orbit of roots of `f`.
pub fn univariate_orbits(f: &UPoly<Rational>) -> Vec<(Arc<NumberField>, AlgNum)> {
    irreducible_factors(f).iter().map(field_of).collect()
}

/// Maps an element of `Q(θ)` into a field where θ has image `theta`.
pub fn embed(a: &AlgNum, theta: &AlgNum) -> AlgNum {
    let mut acc = theta.zero_like();
    for c in a.rep().coeffs().iter().rev() {
        acc = acc.mul(theta).add(&theta.from_rational_like(c));
    }
    acc
}

/// A root of `h` in an extension of `K`: the extension field, the image of
/// K's generator in it, and the root.
#[derive(Clone, Debug)]
pub struct ExtRoot {
    pub field: Arc<NumberField>,
    pub theta: AlgNum,
    pub root: AlgNum,
}

/// One representative per orbit (over Q) of the roots of `h` in `K[y]`.
///
/// Linear factors give roots in `K` itself; otherwise the primitive element
/// `s = y + c*θ` is used with `N(s) = Res_t(m(t), h(t, s - c*t))`, choosing
/// the first `c` in 0, 1, -1, 2, -2, ... making `N` squarefree.
pub fn roots_over(k: &Arc<NumberField>, h: &UPoly<AlgNum>) -> Vec<ExtRoot> {
    let Some(d) = h.degree() else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let h = h.squarefree_part();
    // for Q itself the generator is irrelevant: embeddings only see constants
    let theta = AlgNum::generator(k);
    if h.deg() == 1 {
        let root = h.coeffs()[0].div(&h.coeffs()[1]).neg();
        return vec![ExtRoot {
            field: k.clone(),
            theta,
            root,
        }];
    }
    if k.degree() == 1 {
        // h has rational coefficients
        let hq = h.map(|c| c.as_rational().unwrap());
        return univariate_orbits(&hq)
            .into_iter()
            .map(|(l, r)| ExtRoot {
                theta: AlgNum::from_rational(&l, Rational::zero()),
                field: l,
                root: r,
            })
            .collect();
    }
    // lift h to Q[t, y], monic in y
    let h = h.monic();
    let tv = vars_of(&["t", "s"]);
    let mut lifted = MPoly::zero(tv.clone());
    for (j, c) in h.coeffs().iter().enumerate() {
        for (i, q) in c.rep().coeffs().iter().enumerate() {
            lifted = lifted.add(&MPoly::monomial(
                tv.clone(),
                vec![i as u32, j as u32],
                q.clone(),
            ));
        }
    }
    let m = MPoly::from_upoly(tv.clone(), 0, k.modulus());
    let t = MPoly::var(tv.clone(), "t").unwrap();
    let s = MPoly::var(tv.clone(), "s").unwrap();
    for c in shear_sequence() {
        // y = s - c t
        let y_img = s.sub(&t.scale(&c));
        let sub = lifted.compose(&[t.clone(), y_img]);
        let n = resultant(&m, &sub, "t")
            .expect("m depends on t")
            .to_upoly(1);
        if n.is_constant() || !n.gcd(&n.derivative()).is_constant() {
            continue;
        }
        let mut out = Vec::new();
        for g in irreducible_factors(&n) {
            let (l, s0) = field_of(&g);
            // gcd over L of m(t) and h(t, s0 - c t), linear in t
            let mt = k.modulus().map(|q| AlgNum::from_rational(&l, q.clone()));
            let ht = sub
                .map_coeffs(|q| AlgNum::from_rational(&l, q.clone()))
                .eval_var(1, &s0)
                .to_upoly(0);
            let lin = mt.gcd(&ht);
            assert_eq!(lin.deg(), 1, "primitive element did not separate the roots");
            let t0 = lin.coeffs()[0].neg();
            let y0 = s0.sub(&t0.mul_rational(&c));
            out.push(ExtRoot {
                field: l,
                theta: t0,
                root: y0,
            });
        }
        return out;
    }
    unreachable!("no separating shear found")
}

fn shear_sequence() -> impl Iterator<Item = Rational> {
    (0..200i64).map(|i| {
        let k = (i + 1) / 2;
        Rational::from(if i % 2 == 1 { k } else { -k })
    })
}

/// Substitutes `x = a` into a bivariate rational polynomial in `(x, y)`
/// (variable indices 0 and 1), giving a univariate polynomial over a's field.
pub fn specialize_x(p: &MPoly<Rational>, a: &AlgNum) -> UPoly<AlgNum> {
    let dy = p.degree_in(1) as usize;
    let zero = a.zero_like();
    let mut coeffs = vec![zero; dy + 1];
    for (mono, c) in p.terms() {
        let e = mono.exps();
        let v = a.pow(e[0]).mul_rational(c);
        coeffs[e[1] as usize] = coeffs[e[1] as usize].add(&v);
    }
    UPoly::new(coeffs)
}

/// All common zeros of `p` and `q` in the affine plane `(x, y)` as orbits.
/// The inputs must be coprime; a common factor is reported as an error.
pub fn common_zeros(p: &MPoly<Rational>, q: &MPoly<Rational>) -> Result<Vec<Orbit>> {
    assert_eq!(p.nvars(), 2);
    let (p, q) = super::mpoly::align(p, q);
    if (p.is_zero() && q.is_constant()) || (q.is_zero() && p.is_constant()) {
        return Ok(Vec::new());
    }
    if p.is_zero() || q.is_zero() {
        return Err(Error::NonIsolated(if p.is_zero() {
            q.to_string()
        } else {
            p.to_string()
        }));
    }
    let g = super::gcd::gcd(&p, &q);
    if !g.is_constant() {
        return Err(Error::NonIsolated(g.to_string()));
    }
    let r = if p.degree_in(1) == 0 && q.degree_in(1) == 0 {
        // coprime univariate polynomials in x have no common zero
        return Ok(Vec::new());
    } else {
        resultant(&p, &q, &p.vars()[1].clone())?
    };
    let r = r.to_upoly(0);
    let mut out = Vec::new();
    for m in irreducible_factors(&r) {
        let (k, theta) = field_of(&m);
        let pk = specialize_x(&p, &theta);
        let qk = specialize_x(&q, &theta);
        let h = pk.gcd(&qk);
        if h.is_constant() {
            continue;
        }
        for er in roots_over(&k, &h) {
            out.push(Orbit {
                x: embed(&theta, &er.theta),
                y: er.root.clone(),
                field: er.field.clone(),
            });
        }
    }
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        MPoly::parse(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn rational_and_quadratic_points() {
        // x^2 = 2 and y = x + 1: one orbit of size 2
        let z = common_zeros(&p("x^2 - 2"), &p("y - x - 1")).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].size(), 2);
        let (x, y) = (&z[0].x, &z[0].y);
        assert!(x
            .mul(x)
            .sub(&x.from_rational_like(&Rational::from(2)))
            .is_zero());
        assert!(y.sub(x).sub(&x.one_like()).is_zero());
    }

    #[test]
    fn points_needing_a_primitive_element() {
        // x^2 = 2, y^2 = 3: four points, one orbit of size 4
        let z = common_zeros(&p("x^2 - 2"), &p("y^2 - 3")).unwrap();
        assert_eq!(z.iter().map(|o| o.size()).sum::<usize>(), 4);
        for o in &z {
            let two = o.x.from_rational_like(&Rational::from(2));
            let three = o.x.from_rational_like(&Rational::from(3));
            assert!(o.x.mul(&o.x).sub(&two).is_zero());
            assert!(o.y.mul(&o.y).sub(&three).is_zero());
        }
    }

    #[test]
    fn common_factor_is_reported() {
        assert!(matches!(
            common_zeros(&p("x*(x+1)"), &p("y*(x+1)")),
            Err(Error::NonIsolated(_))
        ));
    }

    #[test]
    fn diagonal_conic_intersection() {
        // x^2 + y^2 = 1 and x = y: orbit of size 2
        let z = common_zeros(&p("x^2 + y^2 - 1"), &p("x - y")).unwrap();
        assert_eq!(z.iter().map(|o| o.size()).sum::<usize>(), 2);
    }
}
