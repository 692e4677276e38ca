//! Vanishing order of a vector field along a smooth invariant branch.
//!
//! The branch `{g = 0}` is parameterized as a graph over whichever
//! coordinate axis it is transverse to, as a truncated power series. The
//! component of the field along the parameter, restricted to the branch,
//! vanishes to order `k`; the truncation is doubled until its leading
//! coefficient is seen.

use crate::error::{Error, Result};
use crate::exactmath::{Field, MPoly};

/// Default largest truncation order tried by [`z_index`].
pub const MAX_TRUNCATION: usize = 4096;

/// Truncated power series `Σ a_i t^i`, `i < len`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C: Field> {
    pub coeffs: Vec<C>,
}

impl<C: Field> Series<C> {
    fn zeros(zero: &C, n: usize) -> Self {
        Series {
            coeffs: vec![zero.clone(); n],
        }
    }

    fn len(&self) -> usize {
        self.coeffs.len()
    }

    fn sub(&self, o: &Self) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let n = self.len();
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Series { coeffs: out }
    }

    /// Inverse of a series with nonzero constant term.
    fn inv(&self) -> Self {
        let n = self.len();
        let a0 = self.coeffs[0].inv();
        let mut out = vec![a0.zero_like(); n];
        out[0] = a0.clone();
        for k in 1..n {
            let mut s = a0.zero_like();
            for i in 1..=k {
                s = s.add(&self.coeffs[i].mul(&out[k - i]));
            }
            out[k] = s.mul(&a0).neg();
        }
        Series { coeffs: out }
    }

    /// Order of vanishing, `None` if zero to this truncation.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn truncate(&self, n: usize) -> Self {
        let zero = self.coeffs[0].zero_like();
        let mut c: Vec<C> = self.coeffs.iter().take(n).cloned().collect();
        c.resize(n, zero);
        Series { coeffs: c }
    }
}

/// A smooth branch through the origin: the coordinate `1 - param` equals a
/// power series in the coordinate `param`.
#[derive(Clone, Debug)]
pub struct Branch<C: Field> {
    pub param: usize,
    pub graph: Series<C>,
}

impl<C: Field> Branch<C> {
    /// Text like `y = 2*t^2 + ...` in the variable names of `vars`.
    pub fn describe(&self, vars: &[String]) -> String {
        let other = &vars[1 - self.param];
        let name = &vars[self.param];
        let mut parts = Vec::new();
        for (i, c) in self.graph.coeffs.iter().enumerate().take(6) {
            if c.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => format!("{c}"),
                1 => format!("({c})*{name}"),
                _ => format!("({c})*{name}^{i}"),
            });
        }
        let body = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        };
        format!("{other} = {body} + O({name}^{})", self.graph.len().min(6))
    }
}

/// Substitutes `param = t`, other coordinate `= s(t)` into `f`.
fn restrict<C: Field>(f: &MPoly<C>, param: usize, s: &Series<C>) -> Series<C> {
    let n = s.len();
    let zero = s.coeffs[0].zero_like();
    let one = zero.one_like();
    let other = 1 - param;
    let mut pows: Vec<Series<C>> = vec![{
        let mut c = Series::zeros(&zero, n);
        c.coeffs[0] = one.clone();
        c
    }];
    let mut out = Series::zeros(&zero, n);
    for (m, c) in f.terms() {
        let e = m.exps();
        let (a, b) = (e[param] as usize, e[other] as usize);
        if a >= n {
            continue;
        }
        while pows.len() <= b {
            let next = pows.last().unwrap().mul(s);
            pows.push(next);
        }
        for (i, v) in pows[b].coeffs.iter().take(n - a).enumerate() {
            if !v.is_zero() {
                out.coeffs[i + a] = out.coeffs[i + a].add(&v.mul(c));
            }
        }
    }
    out
}

/// Power series of the branch `{g = 0}` through the origin to order `n`.
pub fn smooth_branch<C: Field>(g: &MPoly<C>, n: usize) -> Result<Branch<C>> {
    let Some(c) = g.some_coeff() else {
        return Err(Error::InvalidInput("zero curve".into()));
    };
    let zero = c.zero_like();
    if g.constant_term().is_some() {
        return Err(Error::InvalidInput(
            "curve does not pass through the point".into(),
        ));
    }
    let gx = g.coefficient(&[1, 0]).cloned();
    let gy = g.coefficient(&[0, 1]).cloned();
    let param = match (gx, gy) {
        (_, Some(_)) => 0,
        (Some(_), None) => 1,
        (None, None) => return Err(Error::SingularBranch("origin".into())),
    };
    let other = 1 - param;
    let dg = g.derivative(other);
    // Newton iteration s <- s - g(t, s) / g_other(t, s), doubling precision
    let mut s = Series::zeros(&zero, 1);
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        s = s.truncate(prec);
        let num = restrict(g, param, &s);
        let den = restrict(&dg, param, &s);
        s = s.sub(&num.mul(&den.inv()));
    }
    let s = s.truncate(n.max(1));
    Ok(Branch { param, graph: s })
}

/// `Z(X, {g = 0}, 0)` for a polynomial field `(p, q)` and a branch `g` that
/// is smooth at the origin and invariant (`g` divides `X(g)`).
pub fn z_index<C: Field>(p: &MPoly<C>, q: &MPoly<C>, g: &MPoly<C>) -> Result<u32> {
    z_index_capped(p, q, g, MAX_TRUNCATION)
}

pub fn z_index_capped<C: Field>(
    p: &MPoly<C>,
    q: &MPoly<C>,
    g: &MPoly<C>,
    cap: usize,
) -> Result<u32> {
    let vars = g.vars().clone();
    let (p, q) = (p.with_vars(vars.clone()), q.with_vars(vars));
    let xg = p.mul(&g.derivative(0)).add(&q.mul(&g.derivative(1)));
    if !xg.is_zero() && xg.div_exact(&g).is_none() {
        return Err(Error::NotInvariant);
    }
    Ok(z_index_of_branch(&p, &q, smooth_branch(g, 8)?, g, cap)?.0)
}

/// Vanishing order and the branch used, truncation doubled from the
/// branch's length up to `cap`.
pub fn z_index_of_branch<C: Field>(
    p: &MPoly<C>,
    q: &MPoly<C>,
    mut branch: Branch<C>,
    g: &MPoly<C>,
    cap: usize,
) -> Result<(u32, Branch<C>)> {
    loop {
        let n = branch.graph.len();
        let comp = if branch.param == 0 { p } else { q };
        let r = restrict(comp, branch.param, &branch.graph);
        if let Some(k) = r.valuation() {
            return Ok((k as u32, branch));
        }
        if 2 * n > cap {
            return Err(Error::TruncationExhausted(n));
        }
        branch = smooth_branch(g, 2 * n)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::poly;
    use crate::foliation::intersection_multiplicity;

    #[test]
    fn documented_indices() {
        // radial field along y = 0
        assert_eq!(z_index(&poly("x"), &poly("y"), &poly("y")).unwrap(), 1);
        // saddle-nodes x^m dx + y dy: strong separatrix x = 0, weak y = 0
        for m in 2..6u32 {
            let p = poly(&format!("x^{m}"));
            assert_eq!(z_index(&p, &poly("y"), &poly("x")).unwrap(), 1);
            assert_eq!(z_index(&p, &poly("y"), &poly("y")).unwrap(), m);
        }
    }

    #[test]
    fn branch_series_solves_the_curve() {
        let g = poly("y - x^2 - x*y^2 + 3*x^3");
        let b = smooth_branch(&g, 12).unwrap();
        let r = restrict(&g, b.param, &b.graph);
        assert!(r.valuation().is_none());
        assert_eq!(b.param, 0);
    }

    #[test]
    fn curved_branch_matches_intersection_multiplicity() {
        // X = d/dx + 2x d/dy has y = x^2 invariant everywhere; at the origin
        // the field is regular so the index is 0
        assert_eq!(
            z_index(&poly("1"), &poly("2*x"), &poly("y - x^2")).unwrap(),
            0
        );
        // y' = 2y/x-type field with the parabola as a separatrix through a node
        let (p, q, g) = (poly("x"), poly("2*y"), poly("y - x^2"));
        let k = z_index(&p, &q, &g).unwrap();
        assert_eq!(k, intersection_multiplicity(&p, &g).unwrap());
        assert_eq!(k, 1);
    }

    #[test]
    fn non_invariant_branch_is_rejected() {
        assert!(matches!(
            z_index(&poly("x"), &poly("-y + x"), &poly("y")),
            Err(Error::NotInvariant)
        ));
        assert!(matches!(
            z_index(&poly("2*x"), &poly("3*y"), &poly("y^2 - x^3")),
            Err(Error::SingularBranch(_))
        ));
    }
}
