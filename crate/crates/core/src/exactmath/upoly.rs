//! Dense univariate polynomials over an exact field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::rational::Rational;

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct UPoly<C: Field = Rational> {
    coeffs: Vec<C>,
}

impl<C: Field> UPoly<C> {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        UPoly::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![c.zero_like(); k + 1];
        v[k] = c;
        UPoly { coeffs: v }
    }

    /// `x - a`.
    pub fn linear_root(a: &C) -> Self {
        UPoly {
            coeffs: vec![a.neg(), a.one_like()],
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Option<&C> {
        self.coeffs.get(k)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UPoly::new(v)
    }

    pub fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut v = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        UPoly::new(v)
    }

    pub fn scale(&self, s: &C) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![self.coeffs[0].zero_like(); k];
        v.extend(self.coeffs.iter().cloned());
        UPoly { coeffs: v }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = UPoly::constant(
            self.coeffs
                .first()
                .map(|c| c.one_like())
                .expect("power of the zero polynomial"),
        );
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) if !l.is_one() => self.scale(&l.inv()),
            _ => self.clone(),
        }
    }

    /// Euclidean division. Panics when `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(nd) = self.degree() else {
            return (UPoly::zero(), UPoly::zero());
        };
        if nd < dd {
            return (UPoly::zero(), self.clone());
        }
        let inv = d.lead().unwrap().inv();
        let mut r = self.coeffs.clone();
        let zero = inv.zero_like();
        let mut q = vec![zero.clone(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = r[k + dd].mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(dc));
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; zero when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let one = self
            .coeffs
            .first()
            .or(other.coeffs.first())
            .map(|c| c.one_like())
            .expect("gcd of two zero polynomials");
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UPoly::constant(one.clone()), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::constant(one));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let l = r0.lead().unwrap().inv();
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_rational(&Rational::from(k as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&UPoly::constant(c.clone()));
        }
        acc
    }

    /// Squarefree part (monic), characteristic zero.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).unwrap().monic()
    }

    /// Yun's algorithm: `self = lc * prod f_i^i` with monic, squarefree,
    /// pairwise coprime `f_i`. Returns `(i, f_i)` for non-constant factors.
    pub fn squarefree_decomposition(&self) -> Vec<(u32, Self)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).unwrap();
        let mut c = df.div_exact(&a0).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((i, a.clone()));
            }
            b = b.div_exact(&a).unwrap();
            if b.is_constant() {
                break;
            }
            c = d.div_exact(&a).unwrap();
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> UPoly<D> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn fmt_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = match c.as_rational() {
                Some(r) => (r.is_negative(), r.abs().to_string()),
                None => (false, format!("({c})")),
            };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                s.push_str(&body);
            } else if body == "1" {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{body}*{mono}"));
            }
        }
        s
    }
}

impl<C: Field> fmt::Display for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_in("x"))
    }
}

impl UPoly<Rational> {
    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&k| Rational::from(k)).collect())
    }

    pub fn x() -> Self {
        UPoly::from_ints(&[0, 1])
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn to_primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = Rational::common_denominator(self.coeffs.iter());
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c.numer() * &den) / c.denom())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap() < &BigInt::zero() {
            g = -g;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    pub fn from_integers(c: &[BigInt]) -> Self {
        UPoly::new(c.iter().map(|k| Rational::from(k.clone())).collect())
    }

    pub fn primitive(&self) -> Self {
        UPoly::from_integers(&self.to_primitive_integer())
    }

    /// Monic gcd through primitive remainders, which keeps the coefficient
    /// growth of the Euclidean algorithm over Q in check.
    pub fn gcd_q(&self, other: &Self) -> Self {
        let mut a = self.to_primitive_integer();
        let mut b = other.to_primitive_integer();
        while !b.is_empty() {
            let mut r = prem_abs(&a, &b);
            remove_content(&mut r);
            a = b;
            b = r;
        }
        UPoly::from_integers(&a).monic()
    }

    /// `-rem(self, other)` scaled by a positive rational to content one:
    /// the next term of a Sturm sequence.
    pub fn sturm_step(&self, other: &Self) -> Self {
        let scaled = |p: &Self| {
            let den = Rational::common_denominator(p.coeffs.iter());
            p.coeffs
                .iter()
                .map(|c| (c.numer() * &den) / c.denom())
                .collect::<Vec<BigInt>>()
        };
        let mut r: Vec<BigInt> = prem_abs(&scaled(self), &scaled(other))
            .into_iter()
            .map(|c| -c)
            .collect();
        remove_content(&mut r);
        UPoly::from_integers(&r)
    }

    /// Squarefree part (monic) computed with [`UPoly::gcd_q`].
    pub fn squarefree_q(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd_q(&self.derivative());
        self.div_exact(&g).unwrap().monic()
    }

    /// Rational roots, each once, sorted ascending.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut roots = Vec::new();
        if self.is_constant() {
            return roots;
        }
        let mut f = self.squarefree_part();
        // strip the root 0
        if f.coeffs[0].is_zero() {
            roots.push(Rational::zero());
            f = f.div_exact(&UPoly::x()).unwrap();
        }
        if f.is_constant() {
            return roots;
        }
        let ints = f.to_primitive_integer();
        let a0 = ints[0].clone();
        let an = ints.last().unwrap().clone();
        let ps = divisors(&a0);
        let qs = divisors(&an);
        for p in &ps {
            for q in &qs {
                if p.gcd(q) != BigInt::one() {
                    continue;
                }
                for sign in [1, -1] {
                    let r = Rational::new(p * BigInt::from(sign), q.clone()).unwrap();
                    if f.eval(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Number of sign changes in the coefficient sequence.
    pub fn sign_changes(&self) -> usize {
        let mut last = 0;
        let mut n = 0;
        for c in &self.coeffs {
            let s = c.signum();
            if s != 0 {
                if last != 0 && s != last {
                    n += 1;
                }
                last = s;
            }
        }
        n
    }

    /// Cauchy bound: every complex root has modulus below the result.
    pub fn root_bound(&self) -> Rational {
        let lead = self.lead().unwrap().abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }
}

/// Positive divisors of |n| (n != 0). Intended for the small constant and
/// leading coefficients met in rational-root search.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = if n < &BigInt::zero() { -n } else { n.clone() };
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
        }
        d += 1;
        if d > BigInt::from(1_000_000) {
            break;
        }
    }
    large.reverse();
    small.extend(large);
    small
}


/// `|lc(b)|^(deg a - deg b + 1) · a mod b` over the integers, coefficients
/// in increasing degree with no trailing zeros.
fn prem_abs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = b[db].abs();
    let sb: Vec<BigInt> = if b[db].is_negative() {
        b.iter().map(|c| -c).collect()
    } else {
        b.to_vec()
    };
    let mut r = a.to_vec();
    let mut steps = (a.len() + 1).saturating_sub(b.len());
    while r.len() > db {
        let lr = r.pop().expect("nonempty");
        let shift = r.len() - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, c) in sb[..db].iter().enumerate() {
            r[shift + i] -= &lr * c;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        steps -= 1;
    }
    if steps > 0 {
        let f = num_traits::Pow::pow(&lb, steps as u32);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

fn remove_content(r: &mut [BigInt]) {
    let g = r.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in r.iter_mut() {
            *c /= &g;
        }
    }
}
