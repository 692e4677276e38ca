//! Factorization of univariate polynomials over Q.
//!
//! Classical Zassenhaus: factor modulo a few small primes (distinct-degree
//! then equal-degree splitting), keep the prime with the fewest factors,
//! Hensel-lift quadratically past a coefficient bound, and recombine by
//! trial division over the integers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::rational::Rational;
use super::upoly::UPoly;

/// Monic irreducible factors of `f` with multiplicities, sorted by degree
/// and then by coefficients. Constants have no factors.
pub fn factor(f: &UPoly<Rational>) -> Vec<(UPoly<Rational>, u32)> {
    let mut out = Vec::new();
    for (mult, part) in f.squarefree_decomposition() {
        for g in factor_squarefree(&part) {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
    out
}

/// Distinct monic irreducible factors of `f`.
pub fn irreducible_factors(f: &UPoly<Rational>) -> Vec<UPoly<Rational>> {
    factor(f).into_iter().map(|(g, _)| g).collect()
}

pub fn is_irreducible(f: &UPoly<Rational>) -> bool {
    let fs = factor(f);
    fs.len() == 1 && fs[0].1 == 1
}

fn cmp_poly(a: &UPoly<Rational>, b: &UPoly<Rational>) -> std::cmp::Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Factors a squarefree polynomial into monic irreducibles.
fn factor_squarefree(f: &UPoly<Rational>) -> Vec<UPoly<Rational>> {
    let mut out = Vec::new();
    let mut f = f.monic();
    if f.coeffs()[0].is_zero() {
        out.push(UPoly::x());
        f = f.div_exact(&UPoly::x()).unwrap();
    }
    if f.deg() == 0 {
        return out;
    }
    if f.deg() == 1 {
        out.push(f);
        return out;
    }
    let ints = f.to_primitive_integer();
    for g in zassenhaus(&ints) {
        out.push(UPoly::from_integers(&g).monic());
    }
    out
}

// ---------------------------------------------------------------------------
// arithmetic in F_p[x], coefficients low to high, no trailing zeros

#[derive(Clone, Copy)]
struct Fp {
    p: u64,
}

type Pp = Vec<u64>;

fn trim(mut v: Pp) -> Pp {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl Fp {
    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(self, a: u64) -> u64 {
        assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    fn reduce(self, f: &[BigInt]) -> Pp {
        let p = BigInt::from(self.p);
        trim(
            f.iter()
                .map(|c| c.mod_floor(&p).to_u64().unwrap())
                .collect(),
        )
    }

    fn psub(self, a: &Pp, b: &Pp) -> Pp {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    fn pmul(self, a: &Pp, b: &Pp) -> Pp {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                v[i + j] = self.add(v[i + j], self.mul(x, y));
            }
        }
        trim(v)
    }

    fn pdivrem(self, a: &Pp, b: &Pp) -> (Pp, Pp) {
        assert!(!b.is_empty());
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let inv = self.inv(*b.last().unwrap());
        let mut r = a.clone();
        let db = b.len() - 1;
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            if c == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[k + j] = self.sub(r[k + j], self.mul(c, y));
            }
            q[k] = c;
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    fn prem(self, a: &Pp, b: &Pp) -> Pp {
        self.pdivrem(a, b).1
    }

    fn pmonic(self, a: &Pp) -> Pp {
        match a.last() {
            None => Vec::new(),
            Some(&l) => {
                let inv = self.inv(l);
                a.iter().map(|&c| self.mul(c, inv)).collect()
            }
        }
    }

    fn pgcd(self, a: &Pp, b: &Pp) -> Pp {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.prem(&a, &b);
            a = b;
            b = r;
        }
        self.pmonic(&a)
    }

    /// `(s, t)` with `s*a + t*b = 1`; requires coprime inputs.
    fn pext_gcd(self, a: &Pp, b: &Pp) -> (Pp, Pp) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.pdivrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.psub(&s0, &self.pmul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.psub(&t0, &self.pmul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        assert_eq!(r0.len(), 1, "inputs are not coprime mod p");
        let inv = self.inv(r0[0]);
        (
            s0.iter().map(|&c| self.mul(c, inv)).collect(),
            t0.iter().map(|&c| self.mul(c, inv)).collect(),
        )
    }

    fn ppowmod(self, base: &Pp, e: &BigUint, m: &Pp) -> Pp {
        let mut result = vec![1u64];
        let base = self.prem(base, m);
        for i in (0..e.bits()).rev() {
            result = self.prem(&self.pmul(&result, &result), m);
            if e.bit(i) {
                result = self.prem(&self.pmul(&result, &base), m);
            }
        }
        result
    }

    fn derivative(self, a: &Pp) -> Pp {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| self.mul(c, k as u64 % self.p))
                .collect(),
        )
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    fn ddf(self, f: &Pp) -> Vec<(Pp, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let pe = BigUint::from(self.p);
        let mut i = 0;
        while f.len() - 1 >= 2 * (i + 1) {
            i += 1;
            h = self.ppowmod(&h, &pe, &f);
            let g = self.pgcd(&self.psub(&h, &x), &f);
            if g.len() > 1 {
                f = self.pdivrem(&f, &g).0;
                h = self.prem(&h, &f);
                out.push((g, i));
            }
        }
        if f.len() > 1 {
            let d = f.len() - 1;
            out.push((f, d));
        }
        out
    }

    /// Equal-degree splitting (Cantor–Zassenhaus, odd p).
    fn edf(self, f: &Pp, d: usize, rng: &mut StdRng, out: &mut Vec<Pp>) {
        let n = f.len() - 1;
        if n == d {
            out.push(self.pmonic(f));
            return;
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: Pp = trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() <= 1 {
                continue;
            }
            let g = self.pgcd(&a, f);
            let split = if g.len() > 1 && g.len() < f.len() {
                g
            } else {
                let b = self.psub(&self.ppowmod(&a, &e, f), &vec![1u64]);
                self.pgcd(&b, f)
            };
            if split.len() > 1 && split.len() < f.len() {
                let rest = self.pdivrem(f, &split).0;
                self.edf(&split, d, rng, out);
                self.edf(&rest, d, rng, out);
                return;
            }
        }
    }

    fn factor_monic(self, f: &Pp, rng: &mut StdRng) -> Vec<Pp> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            self.edf(&g, d, rng, &mut out);
        }
        out
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// integer polynomial helpers modulo m

type Zp = Vec<BigInt>;

fn ztrim(mut v: Zp) -> Zp {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmod(a: &[BigInt], m: &BigInt) -> Zp {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsym(a: &[BigInt], m: &BigInt) -> Zp {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> Zp {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> Zp {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    ztrim(v)
}

/// Division by a monic polynomial modulo m.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Zp, Zp) {
    let a = zmod(a, m);
    if a.len() < b.len() {
        return (Vec::new(), a);
    }
    let db = b.len() - 1;
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * y).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(db);
    (zmod(&q, m), zmod(&r, m))
}

fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

fn to_z(a: &Pp) -> Zp {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from `f = g*h mod m`, `s*g + t*h = 1 mod m`
/// (h monic) to the same relations modulo m^2.
fn hensel_step(f: &Zp, g: &Zp, h: &Zp, s: &Zp, t: &Zp, m: &BigInt) -> (Zp, Zp, Zp, Zp) {
    let m2 = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, &m2);
    let g2 = zmod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &m2);
    let h2 = zmod(&zadd(h, &r), &m2);
    let b = zmod(
        &zsub(&zadd(&zmul(s, &g2), &zmul(t, &h2)), &[BigInt::one()]),
        &m2,
    );
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h2, &m2);
    let s2 = zmod(&zsub(s, &d), &m2);
    let t2 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g2)), &m2);
    (g2, h2, s2, t2)
}

/// Lifts `f = lc(f) * prod(factors) mod p` to monic factors modulo `p^(2^k)`
/// reaching at least `target`.
fn multifactor_lift(f: &Zp, factors: &[Pp], fp: Fp, target: &BigInt) -> Vec<Zp> {
    if factors.len() == 1 {
        let mut m = BigInt::from(fp.p);
        while &m < target {
            m = &m * &m;
        }
        let lc = f.last().unwrap();
        let inv = inv_mod(lc, &m);
        return vec![zmod(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &m)];
    }
    let k = factors.len() / 2;
    let p = BigInt::from(fp.p);
    let lcp = fp.reduce(&[f.last().unwrap().clone()])[0];
    let mut g = vec![lcp];
    for a in &factors[..k] {
        g = fp.pmul(&g, a);
    }
    let mut h = vec![1u64];
    for a in &factors[k..] {
        h = fp.pmul(&h, a);
    }
    let (s, t) = fp.pext_gcd(&g, &h);
    let (mut gz, mut hz, mut sz, mut tz) = (to_z(&g), to_z(&h), to_z(&s), to_z(&t));
    let mut m = p;
    while &m < target {
        let (g2, h2, s2, t2) = hensel_step(f, &gz, &hz, &sz, &tz, &m);
        gz = g2;
        hz = h2;
        sz = s2;
        tz = t2;
        m = &m * &m;
    }
    let mut out = multifactor_lift(&gz, &factors[..k], fp, target);
    out.extend(multifactor_lift(&hz, &factors[k..], fp, target));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn zprimitive(a: &[BigInt]) -> Zp {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut v: Zp = a.iter().map(|c| c / &g).collect();
    if v.last().is_some_and(|c| c.is_negative()) {
        v = v.into_iter().map(|c| -c).collect();
    }
    v
}

/// Exact division over Z, `None` when not exact.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<Zp> {
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| ztrim(q))
}

/// Irreducible factors over Z of a primitive squarefree integer polynomial
/// of degree at least 2 with nonzero constant term.
fn zassenhaus(f: &[BigInt]) -> Vec<Zp> {
    let n = f.len() - 1;
    let lc = f.last().unwrap().clone();
    let mut rng = StdRng::seed_from_u64(0x5eed_f00d);

    // choose a good prime
    let mut best: Option<(Fp, Vec<Pp>)> = None;
    let mut tried = 0;
    let mut p = 101u64.max(2 * n as u64 + 1);
    while tried < 5 {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        let fp = Fp { p };
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fm = fp.reduce(f);
        let g = fp.pgcd(&fm, &fp.derivative(&fm));
        if g.len() != 1 {
            continue;
        }
        tried += 1;
        let facs = fp.factor_monic(&fp.pmonic(&fm), &mut rng);
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((fp, facs));
        }
    }
    let (fp, mut facs) = best.unwrap();
    facs.sort();

    // coefficient bound for lc * (any factor)
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    let bound = lc.abs() * (BigInt::one() << n) * norm;
    let target = bound * 2 + BigInt::one();
    let lifted = multifactor_lift(&f.to_vec(), &facs, fp, &target);
    let mut m = BigInt::from(fp.p);
    while m < target {
        m = &m * &m;
    }

    // recombination
    let mut remaining = lifted;
    let mut cur = f.to_vec();
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let b = cur.last().unwrap().clone();
        for combo in combinations(remaining.len(), s) {
            let mut g = vec![b.clone()];
            for &i in &combo {
                g = zmod(&zmul(&g, &remaining[i]), &m);
            }
            let g = zprimitive(&zsym(&g, &m));
            if let Some(q) = zdiv_exact(&cur, &g) {
                out.push(g);
                cur = zprimitive(&q);
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, v)| v)
                    .collect();
                continue 'outer;
            }
        }
        s += 1;
    }
    if cur.len() > 1 {
        out.push(cur);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prod(fs: &[UPoly<Rational>]) -> UPoly<Rational> {
        fs.iter().fold(UPoly::from_ints(&[1]), |acc, f| acc.mul(f))
    }

    #[test]
    fn cyclotomic_split() {
        let f = UPoly::from_ints(&[-1, 0, 0, 0, 0, 0, 1]); // x^6 - 1
        let fs = irreducible_factors(&f);
        let degs: Vec<usize> = fs.iter().map(|g| g.deg()).collect();
        assert_eq!(degs, vec![1, 1, 2, 2]);
        assert_eq!(prod(&fs), f);
    }

    #[test]
    fn swinnerton_dyer_is_irreducible() {
        // minimal polynomial of sqrt2 + sqrt3
        let f = UPoly::from_ints(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible(&f));
    }

    #[test]
    fn multiplicities_and_content() {
        let a = UPoly::from_ints(&[1, 0, 3]); // 3x^2 + 1
        let b = UPoly::from_ints(&[-2, 0, 0, 1]); // x^3 - 2
        let f = a.pow(2).mul(&b).scale(&Rational::frac(5, 7));
        let fs = factor(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0], (a.monic(), 2));
        assert_eq!(fs[1], (b, 1));
    }

    #[test]
    fn non_monic_recombination() {
        let fs = [
            UPoly::from_ints(&[1, 2]),
            UPoly::from_ints(&[-3, 5]),
            UPoly::from_ints(&[7, 1, 3]),
            UPoly::from_ints(&[1, 1, 0, 2]),
        ];
        let f = prod(&fs);
        let got = irreducible_factors(&f);
        assert_eq!(got.len(), 4);
        assert_eq!(prod(&got), f.monic());
    }
}
