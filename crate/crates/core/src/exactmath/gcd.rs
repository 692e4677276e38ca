//! Multivariate gcd over Q by recursive primitive remainder sequences.

use super::mpoly::{align, MPoly};
use super::rational::Rational;

/// Greatest common divisor normalized to an integer polynomial with
/// content 1 and positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(f: &MPoly, g: &MPoly) -> MPoly {
    let (f, g) = align(f, g);
    normalize(&gcd_rec(&f, &g))
}

fn normalize(f: &MPoly) -> MPoly {
    if f.is_zero() {
        f.clone()
    } else if f.is_constant() {
        MPoly::one(f.vars().clone())
    } else {
        f.primitive()
    }
}

/// The variable of lowest combined degree among those both polynomials
/// involve, else any variable one of them involves.
fn main_var(f: &MPoly, g: &MPoly) -> Option<usize> {
    (0..f.nvars())
        .filter(|&v| f.involves(v) && g.involves(v))
        .min_by_key(|&v| f.degree_in(v) + g.degree_in(v))
        .or_else(|| {
            (0..f.nvars())
                .rev()
                .find(|&v| f.involves(v) || g.involves(v))
        })
}

fn gcd_rec(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let Some(v) = main_var(f, g) else {
        return MPoly::one(f.vars().clone());
    };
    if !f.involves(v) {
        return gcd_rec(f, &content(g, v));
    }
    if !g.involves(v) {
        return gcd_rec(&content(f, v), g);
    }
    let cf = content(f, v);
    let cg = content(g, v);
    let c = normalize(&gcd_rec(&cf, &cg));
    let mut a = f.div_exact(&cf).expect("content divides");
    let mut b = g.div_exact(&cg).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    // subresultant remainder sequence: exact divisions keep the
    // coefficients small without content computations at each step
    let one = MPoly::one(f.vars().clone());
    let (mut g, mut h) = (one.clone(), one.clone());
    let h = loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            break b;
        }
        if r.degree_in(v) == 0 {
            break one;
        }
        let divisor = g.mul(&h.pow_r(delta));
        a = b;
        b = r
            .div_exact(&divisor)
            .expect("subresultant division is exact");
        g = lead_in(&a, v);
        h = if delta == 0 {
            h
        } else {
            g.pow_r(delta)
                .div_exact(&h.pow_r(delta - 1))
                .expect("subresultant division is exact")
        };
    };
    primitive_part(&h, v).mul(&c)
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `v`.
pub fn content(f: &MPoly, v: usize) -> MPoly {
    let mut acc = MPoly::zero(f.vars().clone());
    for c in f.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = normalize(&gcd_rec(&acc, &c));
        if acc.is_constant() {
            break;
        }
    }
    if acc.is_constant() && !acc.is_zero() {
        // keep the rational content so the primitive part is integral
        return MPoly::one(f.vars().clone());
    }
    acc
}

pub fn primitive_part(f: &MPoly, v: usize) -> MPoly {
    if f.is_zero() {
        return f.clone();
    }
    let c = content(f, v);
    normalize(&f.div_exact(&c).expect("content divides"))
}

fn lead_in(f: &MPoly, v: usize) -> MPoly {
    f.coeffs_in(v).pop().expect("nonzero polynomial")
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` in the variable `v`.
fn pseudo_rem(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let db = b.degree_in(v);
    let lb = lead_in(b, v);
    let mut r = a.clone();
    let n = a.nvars();
    let mut steps = a.degree_in(v) + 1 - db;
    while !r.is_zero() && r.degree_in(v) >= db {
        steps -= 1;
        let dr = r.degree_in(v);
        let lr = r.coeffs_in(v).pop().unwrap();
        let mut e = vec![0; n];
        e[v] = dr - db;
        let shifted = b.mul(&lr).mul_monomial(&e, &Rational::one());
        r = r.mul(&lb).sub(&shifted);
    }
    r.mul(&lb.pow_r(steps))
}

/// Squarefree part `f / gcd(f, df/dx_1, ..., df/dx_n)`, normalized.
pub fn squarefree_part(f: &MPoly) -> MPoly {
    if f.is_constant() {
        return normalize(f);
    }
    let mut g = f.clone();
    for v in 0..f.nvars() {
        if f.involves(v) {
            g = gcd(&g, &f.derivative(v));
        }
    }
    normalize(&f.div_exact(&g).expect("gcd divides"))
}

pub fn is_squarefree(f: &MPoly) -> bool {
    squarefree_part(f).degree() == f.degree()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        MPoly::parse(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn documented_gcds() {
        assert_eq!(gcd(&p("x^2 - 1"), &p("x - 1")), p("x - 1"));
        assert_eq!(gcd(&p("x"), &p("y")), p("1"));
        let f = p("(x^3 - 1)*(x - 2)");
        assert_eq!(gcd(&f, &p("x^3 - 1")), p("x^3 - 1"));
        assert!(gcd(&p("0"), &p("0")).is_zero());
    }

    #[test]
    fn bivariate_common_factor() {
        let c = p("x*y - y^2 + 3");
        let a = c.mul(&p("x^2 + y"));
        let b = c.mul(&p("x - y^3 + 1")).scale(&Rational::frac(-2, 3));
        assert_eq!(gcd(&a, &b), c.primitive());
    }

    #[test]
    fn squarefree_removes_repeats() {
        let f = p("(x - y)^2 * (x + 1)");
        assert_eq!(squarefree_part(&f), p("(x - y)*(x + 1)").primitive());
        assert!(!is_squarefree(&f));
    }
}
