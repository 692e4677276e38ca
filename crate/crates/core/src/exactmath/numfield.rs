//! Simple algebraic extensions `Q[t]/(m)` with `m` monic and irreducible.
//!
//! Irrational singular points are handled as Galois orbits: one point with
//! coordinates in `Q(θ)`, `θ` a root of the orbit's minimal polynomial. Every
//! exact computation at the point (Milnor number, linear part, blow-ups) then
//! runs over this field and is valid simultaneously for all conjugates.

use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::rational::Rational;
use super::upoly::UPoly;

#[derive(Debug, PartialEq)]
pub struct NumberField {
    modulus: UPoly<Rational>,
    name: String,
}

impl NumberField {
    /// `modulus` must be irreducible over Q; it is made monic here.
    pub fn new(modulus: &UPoly<Rational>, name: &str) -> Arc<Self> {
        assert!(modulus.deg() >= 1, "modulus must be non-constant");
        Arc::new(NumberField {
            modulus: modulus.monic(),
            name: name.to_string(),
        })
    }

    /// Q itself, presented as `Q[t]/(t)`.
    pub fn rationals() -> Arc<Self> {
        NumberField::new(&UPoly::x(), "t")
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn modulus(&self) -> &UPoly<Rational> {
        &self.modulus
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

#[derive(Clone)]
pub struct AlgNum {
    field: Arc<NumberField>,
    rep: UPoly<Rational>,
}

impl AlgNum {
    pub fn new(field: &Arc<NumberField>, rep: UPoly<Rational>) -> Self {
        let rep = if rep.deg() >= field.degree() {
            rep.rem(&field.modulus)
        } else {
            rep
        };
        AlgNum {
            field: field.clone(),
            rep,
        }
    }

    pub fn from_rational(field: &Arc<NumberField>, r: Rational) -> Self {
        AlgNum {
            field: field.clone(),
            rep: UPoly::constant(r),
        }
    }

    /// The generator `θ`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        AlgNum::new(field, UPoly::x())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn rep(&self) -> &UPoly<Rational> {
        &self.rep
    }

    fn same(&self, other: &AlgNum) -> &Arc<NumberField> {
        debug_assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "mixing elements of different number fields"
        );
        &self.field
    }
}

impl PartialEq for AlgNum {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
            && self.rep == other.rep
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rep.fmt_in(&self.field.name))
    }
}

impl fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} mod ({})",
            self,
            self.field.modulus.fmt_in(&self.field.name)
        )
    }
}

impl Field for AlgNum {
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn is_one(&self) -> bool {
        self.rep.degree() == Some(0) && self.rep.coeffs()[0].is_one()
    }
    fn zero_like(&self) -> Self {
        AlgNum {
            field: self.field.clone(),
            rep: UPoly::zero(),
        }
    }
    fn one_like(&self) -> Self {
        AlgNum::from_rational(&self.field, Rational::one())
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        AlgNum::from_rational(&self.field, r.clone())
    }
    fn add(&self, rhs: &Self) -> Self {
        let f = self.same(rhs);
        AlgNum {
            field: f.clone(),
            rep: self.rep.add(&rhs.rep),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        let f = self.same(rhs);
        AlgNum {
            field: f.clone(),
            rep: self.rep.sub(&rhs.rep),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let f = self.same(rhs);
        if self.rep.is_constant() || rhs.rep.is_constant() {
            return AlgNum {
                field: f.clone(),
                rep: self.rep.mul(&rhs.rep),
            };
        }
        AlgNum::new(f, self.rep.mul(&rhs.rep))
    }
    fn neg(&self) -> Self {
        AlgNum {
            field: self.field.clone(),
            rep: self.rep.neg(),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        if self.rep.is_constant() {
            return AlgNum::from_rational(&self.field, self.rep.coeffs()[0].recip());
        }
        let (g, s, _) = self.rep.ext_gcd(&self.field.modulus);
        assert!(g.is_constant(), "modulus is not irreducible");
        AlgNum::new(&self.field, s)
    }
    fn mul_rational(&self, r: &Rational) -> Self {
        AlgNum {
            field: self.field.clone(),
            rep: self.rep.scale(r),
        }
    }
    fn as_rational(&self) -> Option<Rational> {
        match self.rep.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.rep.coeffs()[0].clone()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_integers() {
        let k = NumberField::new(&UPoly::from_ints(&[1, 0, 1]), "i");
        let i = AlgNum::generator(&k);
        assert_eq!(i.mul(&i), AlgNum::from_rational(&k, Rational::from(-1)));
        let z = i.add(&i.one_like());
        let w = z.inv();
        assert!(z.mul(&w).is_one());
        assert_eq!(w.to_string(), "-1/2*i + 1/2");
    }

    #[test]
    fn cube_root_of_unity_field() {
        let k = NumberField::new(&UPoly::from_ints(&[1, 1, 1]), "w");
        let w = AlgNum::generator(&k);
        assert!(w.pow(3).is_one());
        assert!(w.pow(2).add(&w).add(&w.one_like()).is_zero());
    }
}
