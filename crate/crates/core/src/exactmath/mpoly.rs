//! Sparse multivariate polynomials over an exact coefficient field.
//!
//! Terms live in a map keyed by exponent vectors ordered graded
//! lexicographically; the zero polynomial has no terms and no stored term is
//! zero. Two polynomials are combined after aligning their variable lists
//! (the union keeps the order of the left operand, then new names).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::Field;
use super::rational::Rational;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Exponent vector with graded-lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, divisor: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Vars = Arc<Vec<String>>;

pub fn vars_of(names: &[&str]) -> Vars {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

#[derive(Clone)]
pub struct MPoly<C: Field = Rational> {
    vars: Vars,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Field> PartialEq for MPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = align(self, other);
        a.terms == b.terms
    }
}

impl<C: Field> MPoly<C> {
    pub fn zero(vars: Vars) -> Self {
        MPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vars, c: C) -> Self {
        let n = vars.len();
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    /// The monomial `c * vars^exps`.
    pub fn monomial(vars: Vars, exps: Vec<u32>, c: C) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    /// The variable with index `i`, using `one` as the unit.
    pub fn var_with(vars: Vars, i: usize, one: C) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        MPoly::monomial(vars, e, one)
    }

    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut p = MPoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len());
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Option<&C> {
        self.terms.get(&Monomial(exps.to_vec()))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Any coefficient, used to reach the coefficient field's context.
    pub fn some_coeff(&self) -> Option<&C> {
        self.terms.values().next()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Lowest total degree of a term (order of vanishing at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Option<C> {
        self.terms.get(&Monomial::one(self.nvars())).cloned()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn neg(&self) -> Self {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return MPoly::zero(self.vars.clone());
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.mul(s)))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.vars != other.vars {
            let (a, b) = align(self, other);
            return a.add(&b);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        if self.vars != other.vars {
            let (a, b) = align(self, other);
            return a.sub(&b);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.vars != other.vars {
            let (a, b) = align(self, other);
            return a.mul(&b);
        }
        let mut out = MPoly::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_monomial(&self, exps: &[u32], c: &C) -> Self {
        let m = Monomial(exps.to_vec());
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(k, v)| {
                    let p = v.mul(c);
                    (!p.is_zero()).then(|| (k.mul(&m), p))
                })
                .collect(),
        }
    }

    /// `self^e`; `one` supplies the unit for `e = 0`.
    pub fn pow_with(&self, e: u32, one: &C) -> Self {
        let mut base = self.clone();
        let mut acc = MPoly::constant(self.vars.clone(), one.one_like());
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        match self.some_coeff() {
            Some(c) => self.pow_with(e, &c.one_like()),
            None if e == 0 => panic!("0^0 without a coefficient context"),
            None => self.clone(),
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = MPoly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.0[var] -= 1;
            out.add_term(nm, c.mul_rational(&Rational::from(e as i64)));
        }
        out
    }

    pub fn partial_derivative(&self, name: &str) -> Result<Self> {
        let i = self.var_index(name)?;
        Ok(self.derivative(i))
    }

    /// Full evaluation at a point.
    pub fn eval(&self, point: &[C]) -> Option<C> {
        assert_eq!(point.len(), self.nvars());
        let mut acc: Option<C> = None;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul(&x.pow(e));
                }
            }
            acc = Some(match acc {
                Some(a) => a.add(&t),
                None => t,
            });
        }
        acc.or_else(|| point.first().map(|p| p.zero_like()))
    }

    /// Evaluation that always succeeds, using `zero` for the empty sum.
    pub fn eval_or(&self, point: &[C], zero: &C) -> C {
        self.eval(point).unwrap_or_else(|| zero.zero_like())
    }

    /// Substitutes a constant for one variable; the variable list is kept.
    pub fn eval_var(&self, var: usize, value: &C) -> Self {
        let mut out = MPoly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut nm = m.clone();
            nm.0[var] = 0;
            let t = if e == 0 {
                c.clone()
            } else {
                c.mul(&value.pow(e))
            };
            out.add_term(nm, t);
        }
        out
    }

    /// Simultaneous substitution `x_i -> images[i]`; the result lives in the
    /// variable set of the images.
    pub fn compose(&self, images: &[MPoly<C>]) -> MPoly<C> {
        assert_eq!(images.len(), self.nvars());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let images: Vec<MPoly<C>> = images
            .iter()
            .map(|p| {
                if p.vars == target {
                    p.clone()
                } else {
                    p.with_vars(target.clone())
                }
            })
            .collect();
        let mut out = MPoly::zero(target.clone());
        let Some(one) = self.some_coeff().map(|c| c.one_like()) else {
            return out;
        };
        // cache powers per variable
        let mut powers: Vec<Vec<MPoly<C>>> = images
            .iter()
            .map(|p| vec![MPoly::constant(target.clone(), one.clone()), p.clone()])
            .collect();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    /// Replaces one variable by a polynomial in the same variable set.
    pub fn substitute(&self, var: usize, image: &MPoly<C>) -> MPoly<C> {
        let images: Vec<MPoly<C>> = (0..self.nvars())
            .map(|i| {
                if i == var {
                    image.clone()
                } else {
                    MPoly::var_with(self.vars.clone(), i, self.unit())
                }
            })
            .collect();
        self.compose(&images)
    }

    /// `x_i -> x_i + shift_i`.
    pub fn translate(&self, shift: &[C]) -> MPoly<C> {
        let one = self.unit();
        let images: Vec<MPoly<C>> = (0..self.nvars())
            .map(|i| {
                MPoly::var_with(self.vars.clone(), i, one.clone())
                    .add(&MPoly::constant(self.vars.clone(), shift[i].clone()))
            })
            .collect();
        self.compose(&images)
    }

    fn unit(&self) -> C {
        self.some_coeff()
            .map(|c| c.one_like())
            .expect("unit of the zero polynomial")
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of `var^k` for k = 0..=deg, as polynomials with
    /// `var`-exponent zero (same variable list).
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly<C>> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![MPoly::zero(self.vars.clone()); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut nm = m.clone();
            nm.0[var] = 0;
            out[e].terms.insert(nm, c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    pub fn from_coeffs_in(vars: Vars, var: usize, coeffs: &[MPoly<C>]) -> Self {
        let mut out = MPoly::zero(vars.clone());
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut nm = m.clone();
                nm.0[var] += k as u32;
                out.add_term(nm, v.clone());
            }
        }
        out
    }

    /// Largest power of `var` dividing the polynomial.
    pub fn valuation_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0)
    }

    /// Divides by `var^k`; the caller guarantees divisibility.
    pub fn div_var_power(&self, var: usize, k: u32) -> Self {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut nm = m.clone();
                    nm.0[var] -= k;
                    (nm, c.clone())
                })
                .collect(),
        }
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut out = MPoly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Re-expresses the polynomial over another variable list, matching by
    /// name. Panics if a used variable is missing.
    pub fn with_vars(&self, vars: Vars) -> Self {
        let idx: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = MPoly::zero(vars.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    let j =
                        idx[i].unwrap_or_else(|| panic!("variable {} not in target", self.vars[i]));
                    e[j] = k;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Same exponent vectors under a new variable list of equal length.
    pub fn rename(&self, vars: Vars) -> Self {
        assert_eq!(vars.len(), self.nvars());
        MPoly {
            vars,
            terms: self.terms.clone(),
        }
    }

    /// Multivariate division by a single divisor (graded-lex leading terms).
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.vars != divisor.vars {
            let (a, b) = align(self, divisor);
            return a.div_rem(&b);
        }
        let (lm, lc) = divisor
            .leading_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        let lc_inv = lc.inv();
        let mut rem = self.clone();
        let mut quo = MPoly::zero(self.vars.clone());
        let mut out_rem = MPoly::zero(self.vars.clone());
        while let Some((m, c)) = rem
            .terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
        {
            if lm.divides(&m) {
                let qm = m.quotient(&lm);
                let qc = c.mul(&lc_inv);
                rem = rem.sub(&divisor.mul_monomial(&qm.0, &qc));
                quo.add_term(qm, qc);
            } else {
                rem.terms.remove(&m);
                out_rem.add_term(m, c);
            }
        }
        (quo, out_rem)
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Univariate view in variable `var`. Panics if other variables occur.
    pub fn to_upoly(&self, var: usize) -> UPoly<C> {
        let mut coeffs: Vec<Option<C>> = vec![None; self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            assert!(
                m.0.iter().enumerate().all(|(i, &e)| i == var || e == 0),
                "polynomial is not univariate"
            );
            coeffs[m.0[var] as usize] = Some(c.clone());
        }
        match self.some_coeff() {
            None => UPoly::zero(),
            Some(c) => {
                let zero = c.zero_like();
                UPoly::new(
                    coeffs
                        .into_iter()
                        .map(|c| c.unwrap_or_else(|| zero.clone()))
                        .collect(),
                )
            }
        }
    }

    pub fn from_upoly(vars: Vars, var: usize, u: &UPoly<C>) -> Self {
        let n = vars.len();
        MPoly::from_terms(
            vars,
            u.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; n];
                e[var] = k as u32;
                (e, c.clone())
            }),
        )
    }

    /// Makes the graded-lex leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }
}

/// Aligns two polynomials to a common variable list.
pub fn align<C: Field>(a: &MPoly<C>, b: &MPoly<C>) -> (MPoly<C>, MPoly<C>) {
    if a.vars == b.vars {
        return (a.clone(), b.clone());
    }
    let mut names: Vec<String> = a.vars.as_ref().clone();
    for v in b.vars.iter() {
        if !names.contains(v) {
            names.push(v.clone());
        }
    }
    let vars = Arc::new(names);
    (a.with_vars(vars.clone()), b.with_vars(vars))
}

impl MPoly<Rational> {
    pub fn var(vars: Vars, name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(MPoly::var_with(vars, i, Rational::one()))
    }

    pub fn from_rational(vars: Vars, c: Rational) -> Self {
        MPoly::constant(vars, c)
    }

    pub fn one(vars: Vars) -> Self {
        MPoly::constant(vars, Rational::one())
    }

    pub fn pow_r(&self, e: u32) -> Self {
        self.pow_with(e, &Rational::one())
    }

    /// Scales to an integer polynomial with coprime coefficients and a
    /// positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        use num_integer::Integer;
        let den = Rational::common_denominator(self.terms.values());
        let scaled = self.scale(&Rational::from_integer(den));
        let g = scaled
            .terms
            .values()
            .fold(num_bigint::BigInt::from(0), |acc, c| acc.gcd(c.numer()));
        let mut out = scaled.scale(&Rational::new(1, g).unwrap());
        if out.leading_term().unwrap().1.is_negative() {
            out = out.neg();
        }
        out
    }

    pub fn homogenize(&self, new_var: &str, degree: u32) -> Self {
        let mut names = self.vars.as_ref().clone();
        names.push(new_var.to_string());
        let vars = Arc::new(names);
        MPoly::from_terms(
            vars,
            self.terms.iter().map(|(m, c)| {
                let mut e = m.0.clone();
                e.push(degree - m.degree());
                (e, c.clone())
            }),
        )
    }
}

impl<C: Field> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            self.vars[i].clone()
                        } else {
                            format!("{}^{}", self.vars[i], e)
                        }
                    })
                    .collect();
            let mono = mono.join("*");
            let (negative, coef) = match c.as_rational() {
                Some(r) => (r.is_negative(), Some(r.abs())),
                None => (false, None),
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match coef {
                Some(r) => {
                    if mono.is_empty() {
                        write!(f, "{r}")?;
                    } else if r.is_one() {
                        write!(f, "{mono}")?;
                    } else {
                        write!(f, "{r}*{mono}")?;
                    }
                }
                None => {
                    if mono.is_empty() {
                        write!(f, "({c})")?;
                    } else {
                        write!(f, "({c})*{mono}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.vars.join(","), self)
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident) => {
        impl<C: Field> $tr<&MPoly<C>> for &MPoly<C> {
            type Output = MPoly<C>;
            fn $method(self, rhs: &MPoly<C>) -> MPoly<C> {
                MPoly::$method(self, rhs)
            }
        }
    };
}

poly_binop!(Add, add);
poly_binop!(Sub, sub);
poly_binop!(Mul, mul);

impl<C: Field> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        MPoly::neg(self)
    }
}

impl<C: Field> Neg for MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        MPoly::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        MPoly::parse(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x+y") + &p("x-y"), p("2*x"));
        assert_eq!(&p("x+1") * &p("x-1"), p("x^2-1"));
        assert!((&p("0") * &p("x^3+y")).is_zero());
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x^2*y").partial_derivative("x").unwrap(), p("2*x*y"));
        assert!(p("y^3").partial_derivative("x").unwrap().is_zero());
        let z = MPoly::parse("z*(1-z)", &["z"]).unwrap();
        assert_eq!(
            z.partial_derivative("z").unwrap(),
            MPoly::parse("1-2*z", &["z"]).unwrap()
        );
        assert!(matches!(
            p("x").partial_derivative("w"),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn display_is_graded_lex_descending() {
        assert_eq!(p("-1 + 3/2*y*x^2").to_string(), "3/2*x^2*y - 1");
        assert_eq!(p("y + x").to_string(), "x + y");
        assert_eq!(p("y^2 + x*y + x^2").to_string(), "x^2 + x*y + y^2");
    }

    #[test]
    fn exact_division() {
        let f = p("x^3*y - x*y^3 + x - y");
        let g = p("x - y");
        let q = f.div_exact(&g).unwrap();
        assert_eq!(&q * &g, f);
        assert!(p("x^2 + 1").div_exact(&p("x - 1")).is_none());
    }

    #[test]
    fn composition_and_translation() {
        let f = p("x^2 - y");
        let t = f.translate(&[Rational::from(1), Rational::from(2)]);
        assert_eq!(t, p("x^2 + 2*x + 1 - y - 2"));
        let comp = f.compose(&[p("x*y"), p("y")]);
        assert_eq!(comp, p("x^2*y^2 - y"));
    }

    #[test]
    fn auto_extension_of_variables() {
        let a = MPoly::parse("x", &["x"]).unwrap();
        let b = MPoly::parse("y", &["y"]).unwrap();
        let s = &a + &b;
        assert_eq!(s.vars().as_ref(), &vec!["x".to_string(), "y".to_string()]);
        assert_eq!(s.to_string(), "x + y");
    }
}
