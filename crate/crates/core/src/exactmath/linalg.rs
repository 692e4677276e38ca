//! Fraction-free determinants and Sylvester resultants.

use super::field::Field;
use super::mpoly::MPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Determinant of a square matrix of polynomials by Bareiss elimination.
///
/// Every intermediate division is exact, so entries stay polynomials and
/// their size grows linearly with the step instead of exponentially.
pub fn det_bareiss<C: Field>(mut m: Vec<Vec<MPoly<C>>>) -> MPoly<C> {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix is not square");
    assert!(n > 0, "empty matrix");
    let vars = m[0][0].vars().clone();
    let mut negate = false;
    let mut prev: Option<MPoly<C>> = None;
    for k in 0..n.saturating_sub(1) {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return MPoly::zero(vars);
        };
        if piv != k {
            m.swap(piv, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = match &prev {
                    None => t,
                    Some(p) => t.div_exact(p).expect("Bareiss division is exact"),
                };
            }
            m[i][k] = MPoly::zero(vars.clone());
        }
        prev = Some(m[k][k].clone());
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Determinant over a field by Gaussian elimination.
pub fn det_field<C: Field>(mut m: Vec<Vec<C>>) -> C {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n));
    let mut det = m[0][0].one_like();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return det.zero_like();
        };
        if piv != k {
            m.swap(piv, k);
            det = det.neg();
        }
        let inv = m[k][k].inv();
        det = det.mul(&m[k][k]);
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].mul(&inv);
            for j in k..n {
                let t = m[i][j].sub(&f.mul(&m[k][j]));
                m[i][j] = t;
            }
        }
    }
    det
}

/// Basis of the right kernel `{c : M c = 0}` of a matrix over a field.
pub fn kernel_field<C: Field>(m: &[Vec<C>]) -> Vec<Vec<C>> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<C>> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let inv = a[r][c].inv();
        for j in c..cols {
            a[r][j] = a[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = a[i][j].sub(&f.mul(&a[r][j]));
                    a[i][j] = t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let zero = m[0][0].zero_like();
    let one = zero.one_like();
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); cols];
        v[free] = one.clone();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = a[i][free].neg();
        }
        out.push(v);
    }
    out
}

/// Sylvester matrix of `f` and `g` with respect to variable `var`.
pub fn sylvester<C: Field>(f: &MPoly<C>, g: &MPoly<C>, var: usize) -> Vec<Vec<MPoly<C>>> {
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    let size = m + n;
    let zero = MPoly::zero(f.vars().clone());
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in fc.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in gc.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Classical resultant eliminating `var`; the result keeps the variable
/// list with `var` absent from every term.
pub fn resultant<C: Field>(f: &MPoly<C>, g: &MPoly<C>, var: &str) -> Result<MPoly<C>> {
    let (f, g) = super::mpoly::align(f, g);
    if f.is_zero() || g.is_zero() {
        return Err(Error::InvalidInput("resultant of a zero polynomial".into()));
    }
    let v = f.var_index(var)?;
    let m = f.degree_in(v);
    let n = g.degree_in(v);
    match (m, n) {
        (0, 0) => Err(Error::ConstantInVariable(var.to_string())),
        (0, _) => Ok(f.pow(n)),
        (_, 0) => Ok(g.pow(m)),
        _ => Ok(det_bareiss(sylvester(&f, &g, v))),
    }
}

/// Resultant of two rational polynomials (convenience wrapper).
pub fn resultant_q(f: &MPoly<Rational>, g: &MPoly<Rational>, var: &str) -> Result<MPoly<Rational>> {
    resultant(f, g, var)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one_matrix() {
        let r = |v: i64| Rational::from(v);
        let m = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]];
        let k = kernel_field(&m);
        assert_eq!(k.len(), 2);
        for v in k {
            for row in &m {
                let s = row.iter().zip(&v).fold(r(0), |acc, (a, b)| acc + a * b);
                assert!(s.is_zero());
            }
        }
    }

    fn p(s: &str) -> MPoly {
        MPoly::parse(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn documented_resultants() {
        assert_eq!(
            resultant(&p("x^2 - y"), &p("x - 1"), "x").unwrap(),
            p("1 - y")
        );
        assert_eq!(resultant(&p("x"), &p("y"), "x").unwrap(), p("y"));
        assert_eq!(
            resultant(&p("x^2 + 1"), &p("x^2 - 1"), "x").unwrap(),
            p("4")
        );
        assert!(matches!(
            resultant(&p("y"), &p("y + 1"), "x"),
            Err(Error::ConstantInVariable(_))
        ));
    }

    #[test]
    fn bareiss_matches_field_elimination() {
        let m: Vec<Vec<Rational>> = vec![
            vec![2.into(), 3.into(), 1.into()],
            vec![4.into(), 1.into(), (-2).into()],
            vec![0.into(), 5.into(), 7.into()],
        ];
        let vars = crate::exactmath::vars_of(&["x"]);
        let mp: Vec<Vec<MPoly>> = m
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| MPoly::constant(vars.clone(), c.clone()))
                    .collect()
            })
            .collect();
        let d1 = det_field(m);
        let d2 = det_bareiss(mp)
            .constant_term()
            .unwrap_or_else(Rational::zero);
        assert_eq!(d1, d2);
        assert_eq!(d1, Rational::from(-30));
    }
}
