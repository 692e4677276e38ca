//! Certified isolation of the complex roots of a rational polynomial.
//!
//! Root counts inside a rectangle come from the argument principle evaluated
//! exactly: along each edge `f = U + iV` with `U, V` in `Q[t]`, the real
//! roots of `U*V` are isolated with Sturm sequences, and the quadrant of
//! `f` is read off at rational sample points between them. No floating
//! point is involved, so a box reported as certified holds exactly one root.

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::upoly::UPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexBox {
    pub re: (Rational, Rational),
    pub im: (Rational, Rational),
    pub certified: bool,
}

impl ComplexBox {
    pub fn new(re: (Rational, Rational), im: (Rational, Rational)) -> Self {
        ComplexBox {
            re,
            im,
            certified: false,
        }
    }

    /// Largest side length.
    pub fn width(&self) -> Rational {
        let a = &self.re.1 - &self.re.0;
        let b = &self.im.1 - &self.im.0;
        a.max(b)
    }

    pub fn center(&self) -> (Rational, Rational) {
        (
            self.re.0.midpoint(&self.re.1),
            self.im.0.midpoint(&self.im.1),
        )
    }

    pub fn contains(&self, re: &Rational, im: &Rational) -> bool {
        &self.re.0 <= re && re <= &self.re.1 && &self.im.0 <= im && im <= &self.im.1
    }

    pub fn is_real(&self) -> bool {
        self.im.0.is_zero() && self.im.1.is_zero()
    }

    fn quadrants(&self, cx: &Rational, cy: &Rational) -> [ComplexBox; 4] {
        let (x0, x1) = self.re.clone();
        let (y0, y1) = self.im.clone();
        [
            ComplexBox::new((x0.clone(), cx.clone()), (y0.clone(), cy.clone())),
            ComplexBox::new((cx.clone(), x1.clone()), (y0, cy.clone())),
            ComplexBox::new((x0, cx.clone()), (cy.clone(), y1.clone())),
            ComplexBox::new((cx.clone(), x1), (cy.clone(), y1)),
        ]
    }
}

impl std::fmt::Display for ComplexBox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}, {}] + i[{}, {}]",
            self.re.0, self.re.1, self.im.0, self.im.1
        )
    }
}

// ---------------------------------------------------------------------------
// Sturm sequences

struct Sturm {
    seq: Vec<UPoly<Rational>>,
}

impl Sturm {
    fn new(p: &UPoly<Rational>) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].sturm_step(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq.retain(|q| !q.is_zero());
        Sturm { seq }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut last = 0;
        let mut n = 0;
        for q in &self.seq {
            let s = q.eval(x).signum();
            if s != 0 {
                if last != 0 && s != last {
                    n += 1;
                }
                last = s;
            }
        }
        n
    }

    /// Distinct roots in the open interval (a, b).
    fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        let vb = self.variations(b);
        let va = self.variations(a);
        let at_b = self.seq[0].eval(b).is_zero() as usize;
        va - vb - at_b
    }
}

/// An isolated real root: exact, or strictly inside an open interval whose
/// endpoints are not roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    Exact(Rational),
    Interval(Rational, Rational),
}

impl RealRoot {
    pub fn lower(&self) -> &Rational {
        match self {
            RealRoot::Exact(r) => r,
            RealRoot::Interval(a, _) => a,
        }
    }

    pub fn upper(&self) -> &Rational {
        match self {
            RealRoot::Exact(r) => r,
            RealRoot::Interval(_, b) => b,
        }
    }
}

/// Isolates the distinct real roots of `p` in the open interval (a, b),
/// sorted ascending.
pub fn real_roots_in(p: &UPoly<Rational>, a: &Rational, b: &Rational) -> Vec<RealRoot> {
    if p.is_constant() {
        return Vec::new();
    }
    let p = p.squarefree_q();
    let st = Sturm::new(&p);
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone(), st.count_open(a, b))];
    while let Some((lo, hi, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 && !p.eval(&lo).is_zero() && !p.eval(&hi).is_zero() {
            out.push(RealRoot::Interval(lo, hi));
            continue;
        }
        let m = lo.midpoint(&hi);
        if p.eval(&m).is_zero() {
            out.push(RealRoot::Exact(m.clone()));
        }
        let left = st.count_open(&lo, &m);
        let right = st.count_open(&m, &hi);
        stack.push((lo, m.clone(), left));
        stack.push((m, hi, right));
    }
    out.sort_by(|x, y| x.lower().cmp(y.lower()));
    out
}

/// All real roots of `p`.
pub fn real_roots(p: &UPoly<Rational>) -> Vec<RealRoot> {
    if p.is_constant() {
        return Vec::new();
    }
    let r = p.root_bound();
    real_roots_in(p, &-&r, &r)
}

/// Shrinks an isolating interval below `width`.
pub fn refine_real(p: &UPoly<Rational>, root: &RealRoot, width: &Rational) -> RealRoot {
    let (mut a, mut b) = match root {
        RealRoot::Exact(_) => return root.clone(),
        RealRoot::Interval(a, b) => (a.clone(), b.clone()),
    };
    let sa = p.eval(&a).signum();
    while &(&b - &a) > width {
        let m = a.midpoint(&b);
        let sm = p.eval(&m).signum();
        if sm == 0 {
            return RealRoot::Exact(m);
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
    RealRoot::Interval(a, b)
}

// ---------------------------------------------------------------------------
// winding numbers

/// Restriction of `f` to the segment `A + t*D`, `t` in [0, 1], as U + iV.
fn restrict(
    f: &UPoly<Rational>,
    a: (&Rational, &Rational),
    d: (&Rational, &Rational),
) -> (UPoly<Rational>, UPoly<Rational>) {
    let zr = UPoly::new(vec![a.0.clone(), d.0.clone()]);
    let zi = UPoly::new(vec![a.1.clone(), d.1.clone()]);
    let mut ur = UPoly::zero();
    let mut ui = UPoly::zero();
    for c in f.coeffs().iter().rev() {
        let nr = ur.mul(&zr).sub(&ui.mul(&zi));
        let ni = ur.mul(&zi).add(&ui.mul(&zr));
        ur = nr.add(&UPoly::constant(c.clone()));
        ui = ni;
    }
    (ur, ui)
}

/// Direction of `u + iv` among the eight half-axes and open quadrants,
/// counted counter-clockwise from the positive real axis.
fn octant(u: i32, v: i32) -> i32 {
    match (u, v) {
        (1, 0) => 0,
        (1, 1) => 1,
        (0, 1) => 2,
        (-1, 1) => 3,
        (-1, 0) => 4,
        (-1, -1) => 5,
        (0, -1) => 6,
        (1, -1) => 7,
        _ => unreachable!("sample point is a zero of f"),
    }
}

struct BoundaryRoot;

/// Sample points in (0, 1) separating the real roots of `g` there.
fn samples(g: &UPoly<Rational>) -> Vec<Rational> {
    let zero = Rational::zero();
    let one = Rational::one();
    let mut roots = real_roots_in(g, &zero, &one);
    let sq = g.squarefree_q();
    // keep isolating intervals away from the segment ends
    for r in roots.iter_mut() {
        loop {
            let w = match &*r {
                RealRoot::Interval(a, b) if !(a.is_positive() && b < &one) => {
                    (b - a) / Rational::from(2)
                }
                _ => break,
            };
            *r = refine_real(&sq, r, &w);
        }
    }
    if roots.is_empty() {
        return vec![Rational::frac(1, 2)];
    }
    let mut out = Vec::with_capacity(roots.len() + 1);
    out.push(match &roots[0] {
        RealRoot::Exact(r) => r / &Rational::from(2),
        RealRoot::Interval(a, _) => a.clone(),
    });
    for w in roots.windows(2) {
        out.push(match (&w[0], &w[1]) {
            (RealRoot::Interval(_, b), _) => b.clone(),
            (RealRoot::Exact(r), RealRoot::Interval(a, _)) => r.midpoint(a),
            (RealRoot::Exact(r), RealRoot::Exact(s)) => r.midpoint(s),
        });
    }
    out.push(match roots.last().unwrap() {
        RealRoot::Exact(r) => r.midpoint(&one),
        RealRoot::Interval(_, b) => b.clone(),
    });
    out
}

/// Number of roots of `f` inside `bx`, or `BoundaryRoot` when a root lies on
/// the boundary.
fn winding(f: &UPoly<Rational>, bx: &ComplexBox) -> std::result::Result<usize, BoundaryRoot> {
    let (x0, x1) = (&bx.re.0, &bx.re.1);
    let (y0, y1) = (&bx.im.0, &bx.im.1);
    let w = x1 - x0;
    let h = y1 - y0;
    let zero = Rational::zero();
    let corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)];
    let dirs = [
        (w.clone(), zero.clone()),
        (zero.clone(), h.clone()),
        (-&w, zero.clone()),
        (zero.clone(), -&h),
    ];
    let mut qs: Vec<i32> = Vec::new();
    for k in 0..4 {
        let (u, v) = restrict(f, corners[k], (&dirs[k].0, &dirs[k].1));
        let g = u.gcd_q(&v);
        if !g.is_constant() {
            let one = Rational::one();
            if g.eval(&zero).is_zero()
                || g.eval(&one).is_zero()
                || !real_roots_in(&g, &zero, &one).is_empty()
            {
                return Err(BoundaryRoot);
            }
        }
        // a component vanishing identically on the edge has no roots to separate
        let sep = match (u.is_zero(), v.is_zero()) {
            (true, _) => v.clone(),
            (_, true) => u.clone(),
            _ => u.mul(&v),
        };
        for t in samples(&sep) {
            qs.push(octant(u.eval(&t).signum(), v.eval(&t).signum()));
        }
    }
    let mut total = 0i32;
    for i in 0..qs.len() {
        let d = (qs[(i + 1) % qs.len()] - qs[i]).rem_euclid(8);
        total += match d {
            0..=3 => d,
            5..=7 => d - 8,
            _ => unreachable!("half-turn between adjacent samples"),
        };
    }
    debug_assert!(total % 8 == 0 && total >= 0);
    Ok((total / 8) as usize)
}

/// Counts the roots of `f` in `bx`; errors if one lies on the boundary.
pub fn count_roots(f: &UPoly<Rational>, bx: &ComplexBox) -> Result<usize> {
    winding(&f.squarefree_q(), bx)
        .map_err(|_| Error::InvalidInput(format!("a root lies on the boundary of {bx}")))
}

/// Splits `bx` into four children with known root counts, nudging the split
/// point off any root.
fn split(f: &UPoly<Rational>, bx: &ComplexBox, total: usize) -> Vec<(ComplexBox, usize)> {
    let (cx, cy) = bx.center();
    let w = &bx.re.1 - &bx.re.0;
    let h = &bx.im.1 - &bx.im.0;
    for k in 0..64i64 {
        let (sx, sy) = if k == 0 {
            (cx.clone(), cy.clone())
        } else {
            let j = Rational::frac(k, 131 + 2 * k);
            (
                &cx + &(&w * &j) / Rational::from(4),
                &cy + &(&h * &j) / Rational::from(5),
            )
        };
        let kids = bx.quadrants(&sx, &sy);
        let mut counts = Vec::with_capacity(4);
        let mut ok = true;
        for kid in &kids[..3] {
            match winding(f, kid) {
                Ok(c) => counts.push(c),
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let s: usize = counts.iter().sum();
        if s > total {
            continue;
        }
        // the last child is checked too, so that its edges are root free
        match winding(f, &kids[3]) {
            Ok(c) if c + s == total => counts.push(c),
            _ => continue,
        }
        return kids.into_iter().zip(counts).collect();
    }
    unreachable!("could not find a root-free split line")
}

/// One certified box per distinct complex root of `f`, each of width at
/// most `width`. Constant input yields no boxes.
pub fn isolate_roots(f: &UPoly<Rational>, width: &Rational) -> Result<Vec<ComplexBox>> {
    if !width.is_positive() {
        return Err(Error::InvalidInput("width must be positive".into()));
    }
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let f = f.squarefree_q();
    let n = f.deg();
    let r = f.root_bound();
    // round the bound up to a power of two for tidy box endpoints
    let mut b = Rational::one();
    while b < r {
        b = &b * &Rational::from(2);
    }
    let start = ComplexBox::new((-&b, b.clone()), (-&b, b.clone()));
    let mut queue = vec![(start, n)];
    let mut out = Vec::new();
    while let Some((bx, c)) = queue.pop() {
        if c == 0 {
            continue;
        }
        if c == 1 && &bx.width() <= width {
            out.push(ComplexBox {
                certified: true,
                ..bx
            });
            continue;
        }
        queue.extend(split(&f, &bx, c));
    }
    out.sort_by(|a, b| (&a.re.0, &a.im.0).cmp(&(&b.re.0, &b.im.0)));
    Ok(out)
}

/// Shrinks a certified box below `width`, keeping exactly its root.
pub fn refine(f: &UPoly<Rational>, bx: &ComplexBox, width: &Rational) -> ComplexBox {
    let f = f.squarefree_q();
    let mut cur = bx.clone();
    while &cur.width() > width {
        cur = split(&f, &cur, 1)
            .into_iter()
            .find(|(_, c)| *c == 1)
            .map(|(b, _)| b)
            .expect("root kept by a child");
    }
    cur.certified = true;
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let f = UPoly::from_ints(&[-2, 0, 1]);
        let boxes = isolate_roots(&f, &Rational::frac(1, 100)).unwrap();
        assert_eq!(boxes.len(), 2);
        for b in &boxes {
            assert!(b.certified);
            assert!(b.width() <= Rational::frac(1, 100));
            let (cx, _) = b.center();
            let v = &cx * &cx;
            assert!((v - Rational::from(2)).abs() < Rational::frac(1, 10));
        }
    }

    #[test]
    fn roots_of_unity() {
        let f = UPoly::from_ints(&[-1, 0, 0, 1]);
        let boxes = isolate_roots(&f, &Rational::frac(1, 16)).unwrap();
        assert_eq!(boxes.len(), 3);
        assert_eq!(
            boxes
                .iter()
                .filter(|b| b.contains(&Rational::one(), &Rational::zero()))
                .count(),
            1
        );
    }

    #[test]
    fn rational_root_box() {
        let f = UPoly::new(vec![Rational::frac(-3, 2), Rational::one()]);
        let boxes = isolate_roots(&f, &Rational::frac(1, 8)).unwrap();
        assert_eq!(boxes.len(), 1);
        assert!(boxes[0].contains(&Rational::frac(3, 2), &Rational::zero()));
    }

    #[test]
    fn sturm_counts() {
        let f = UPoly::from_ints(&[0, -1, 0, 1]); // x^3 - x
        let r = real_roots(&f);
        assert_eq!(r.len(), 3);
        assert_eq!(r[1], RealRoot::Exact(Rational::zero()));
    }
}
