//! Local intersection multiplicity at the origin (Fulton's algorithm).

use crate::error::{Error, Result};
use crate::exactmath::{Field, MPoly};

/// Restriction to `y = 0` as dense coefficients in `x`.
fn on_x_axis<C: Field>(f: &MPoly<C>) -> Vec<Option<C>> {
    let mut out: Vec<Option<C>> = Vec::new();
    for (m, c) in f.terms() {
        let e = m.exps();
        if e[1] == 0 {
            let k = e[0] as usize;
            if out.len() <= k {
                out.resize(k + 1, None);
            }
            out[k] = Some(c.clone());
        }
    }
    out
}

fn lowest<C: Field>(v: &[Option<C>]) -> u32 {
    v.iter()
        .position(|c| c.is_some())
        .expect("nonzero restriction") as u32
}

/// `I_0(f, g)` for polynomials in `(x, y)` (variable indices 0 and 1).
///
/// Zero when either polynomial is nonzero at the origin. A common component
/// through the origin makes the multiplicity infinite and is reported as
/// [`Error::NonIsolated`].
pub fn intersection_multiplicity<C: Field>(f: &MPoly<C>, g: &MPoly<C>) -> Result<u32> {
    let (mut f, mut g) = crate::exactmath::mpoly::align(f, g);
    let n = f.nvars();
    let mut total = 0u32;
    for _ in 0..100_000 {
        if f.is_zero() || g.is_zero() {
            break;
        }
        if f.constant_term().is_some() || g.constant_term().is_some() {
            return Ok(total);
        }
        let fx = on_x_axis(&f);
        let gx = on_x_axis(&g);
        match (fx.is_empty(), gx.is_empty()) {
            (true, true) => break,
            (false, true) | (true, false) => {
                // one of them is divisible by y: I(F, yH) = I(F, y) + I(F, H)
                if fx.is_empty() {
                    std::mem::swap(&mut f, &mut g);
                }
                let fx = on_x_axis(&f);
                total += lowest(&fx);
                g = g.div_var_power(1, 1);
            }
            (false, false) => {
                let (r, s) = (fx.len() - 1, gx.len() - 1);
                if r > s {
                    std::mem::swap(&mut f, &mut g);
                }
                let (fx, gx) = (on_x_axis(&f), on_x_axis(&g));
                let (r, s) = (fx.len() - 1, gx.len() - 1);
                let lf = fx[r].clone().unwrap();
                let lg = gx[s].clone().unwrap();
                let mut e = vec![0u32; n];
                e[0] = (s - r) as u32;
                g = g.scale(&lf).sub(&f.mul_monomial(&e, &lg));
            }
        }
    }
    Err(Error::NonIsolated(format!(
        "common component through the origin of {f} and {g}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::poly;

    #[test]
    fn documented_milnor_numbers() {
        assert_eq!(
            intersection_multiplicity(&poly("x"), &poly("y")).unwrap(),
            1
        );
        assert_eq!(
            intersection_multiplicity(&poly("x^2"), &poly("y")).unwrap(),
            2
        );
        assert_eq!(
            intersection_multiplicity(&poly("x^2 - y^3"), &poly("y")).unwrap(),
            2
        );
    }

    #[test]
    fn classical_values() {
        // cusp against its tangent line and two tangent parabolas
        assert_eq!(
            intersection_multiplicity(&poly("y^2 - x^3"), &poly("y")).unwrap(),
            3
        );
        assert_eq!(
            intersection_multiplicity(&poly("y - x^2"), &poly("y + x^2")).unwrap(),
            2
        );
        assert_eq!(
            intersection_multiplicity(&poly("x + 1"), &poly("y")).unwrap(),
            0
        );
        // (y^2 - x^3) and (y^3 - x^2): 4
        assert_eq!(
            intersection_multiplicity(&poly("y^2 - x^3"), &poly("y^3 - x^2")).unwrap(),
            4
        );
        assert!(intersection_multiplicity(&poly("x*y"), &poly("x*(y+1)")).is_err());
    }
}
