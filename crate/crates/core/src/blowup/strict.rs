//! Strict transforms of curves through a resolution tree and the total
//! index `Z` of a curve.

use serde::Serialize;

use super::index::{smooth_branch, z_index_of_branch, MAX_TRUNCATION};
use super::{chart_substitute, embed_poly, Location, ResolutionNode, ResolutionTree};
use crate::error::{Error, Result};
use crate::exactmath::{vars_of, xy, AlgNum, Field, MPoly, Rational};
use crate::foliation::{singular_points, Chart, Foliation};

/// The curve `{f = 0}` in the coordinates of a projective chart, named `x`, `y`.
pub fn chart_curve(f: &MPoly, chart: Chart) -> MPoly {
    let f = f.with_vars_lossy(&xy());
    let one = Rational::one();
    let h = f.homogenize("z", f.degree());
    match chart {
        Chart::Affine => f,
        Chart::InfinityX => h
            .eval_var(0, &one)
            .with_vars_lossy(&vars_of(&["y", "z"]))
            .rename(xy()),
        Chart::InfinityY => h
            .eval_var(1, &one)
            .with_vars_lossy(&vars_of(&["x", "z"]))
            .rename(xy()),
    }
}

/// Strict transform of `g` (a curve through the origin) in a blow-up chart.
pub fn strict_in_chart<C: Field>(g: &MPoly<C>, chart: u8) -> MPoly<C> {
    let m = g.order().unwrap_or(0);
    let t = chart_substitute(g, chart);
    t.div_var_power(if chart == 1 { 0 } else { 1 }, m)
}

/// One blown point the strict transform passes through.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictRecord {
    pub point: String,
    pub weight: usize,
    /// Multiplicity of the (strict transform of the) curve at the point.
    pub multiplicity: u32,
    pub ell: u32,
    pub dicritical: bool,
}

/// Index of the resolved foliation along the strict transform at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexRecord {
    pub point: String,
    pub weight: usize,
    pub branch: String,
    pub z_index: u32,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ZReport {
    /// `Z(G, C̄)` summed over all points (conjugates included).
    pub total: u64,
    /// `Σ (ℓ - 1) · mult` over the blown points on the curve.
    pub correction: u64,
    pub records: Vec<IndexRecord>,
    pub strict: Vec<StrictRecord>,
}

impl ZReport {
    /// `Z` of the curve for the original foliation, recovered from the
    /// resolved one. Equals the direct count when the curve is smooth.
    pub fn original_z(&self) -> u64 {
        self.total + self.correction
    }
}

fn lift(f: &MPoly, node: &ResolutionNode) -> MPoly<AlgNum> {
    let z = &node.point[0];
    let g = f.map_coeffs(|c| z.from_rational_like(c));
    if g.is_zero() {
        g
    } else {
        g.translate(&node.point)
    }
}

fn visit(
    node: &ResolutionNode,
    g: &MPoly<AlgNum>,
    with_index: bool,
    out: &mut ZReport,
) -> Result<()> {
    if g.constant_term().is_some() {
        return Ok(());
    }
    let m = g.order().unwrap_or(0);
    match &node.blowup {
        None => {
            if !with_index {
                return Ok(());
            }
            if m > 1 {
                return Err(Error::SingularBranch(node.describe()));
            }
            let branch = smooth_branch(g, 8)?;
            let (k, branch) =
                z_index_of_branch(&node.local.p, &node.local.q, branch, g, MAX_TRUNCATION)?;
            out.total += k as u64 * node.weight as u64;
            out.records.push(IndexRecord {
                point: node.describe(),
                weight: node.weight,
                branch: branch.describe(g.vars()),
                z_index: k,
            });
        }
        Some(b) => {
            out.correction += (b.ell as u64 - 1) * m as u64 * node.weight as u64;
            out.strict.push(StrictRecord {
                point: node.describe(),
                weight: node.weight,
                multiplicity: m,
                ell: b.ell,
                dicritical: b.dicritical,
            });
            for child in &b.children {
                let Location::Exceptional(chart) = child.location else {
                    unreachable!("children lie on the exceptional divisor")
                };
                let s = strict_in_chart(g, chart);
                let s = embed_poly(&s, &child.theta);
                let s = s.translate(&child.point);
                visit(child, &s, with_index, out)?;
            }
        }
    }
    Ok(())
}

fn walk_curve(tree: &ResolutionTree, f: &MPoly, with_index: bool) -> Result<ZReport> {
    check_invariant(&tree.root, f)?;
    let mut out = ZReport::default();
    for node in &tree.nodes {
        let Location::Root(chart) = node.location else {
            unreachable!("tree roots are singular points of the foliation")
        };
        let g = lift(&chart_curve(f, chart), node);
        visit(node, &g, with_index, &mut out)?;
    }
    Ok(out)
}

fn check_invariant(fol: &Foliation, f: &MPoly) -> Result<()> {
    let f = f.with_vars_lossy(&xy());
    let xf = fol.apply(&f);
    if !xf.is_zero() && xf.div_exact(&f).is_none() {
        return Err(Error::NotInvariant);
    }
    Ok(())
}

/// The blown points the strict transform of `{f = 0}` passes through,
/// with multiplicities.
pub fn strict_transform(f: &MPoly, tree: &ResolutionTree) -> Result<Vec<StrictRecord>> {
    Ok(walk_curve(tree, f, false)?.strict)
}

/// `Z(G, C̄)` for the resolved foliation `G` of `tree` and the strict
/// transform of the invariant curve `{f = 0}`, with the per-point breakdown.
pub fn total_z(tree: &ResolutionTree, f: &MPoly) -> Result<ZReport> {
    walk_curve(tree, f, true)
}

/// `Z(F, C)` computed directly at the singular points of `F`, for a curve
/// smooth at each of them.
pub fn curve_z(fol: &Foliation, f: &MPoly) -> Result<ZReport> {
    check_invariant(fol, f)?;
    let mut out = ZReport::default();
    for sp in singular_points(fol)? {
        let node = super::ResolutionNode::from_singular_point(&sp);
        let g = lift(&chart_curve(f, sp.chart), &node);
        visit(&node, &g, true, &mut out)?;
    }
    Ok(out)
}

/// Multiplicities of the curve at the origin and at the successive
/// infinitely near points it passes through, for up to `steps` blow-ups.
/// Stops early when the strict transform meets the exceptional divisor in
/// more than one point or at an irrational point.
pub fn multiplicity_sequence(g: &MPoly, steps: usize) -> Vec<u32> {
    let mut g = g.with_vars_lossy(&xy());
    let mut out = Vec::new();
    for _ in 0..steps {
        if g.constant_term().is_some() {
            break;
        }
        out.push(g.order().unwrap_or(0));
        let g1 = strict_in_chart(&g, 1);
        let g2 = strict_in_chart(&g, 2);
        let on_e = g1.eval_var(0, &Rational::zero()).to_upoly(1);
        let mut next = Vec::new();
        if !on_e.is_constant() {
            let roots = on_e.rational_roots();
            let distinct = on_e.squarefree_part().deg();
            if roots.len() != distinct {
                break;
            }
            for r in roots {
                next.push(g1.translate(&[Rational::zero(), r]));
            }
        }
        if g2.constant_term().is_none() {
            next.push(g2);
        }
        if next.len() != 1 {
            break;
        }
        g = next.pop().unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::{safe_resolution, seidenberg_reduce};
    use crate::exactmath::poly;

    #[test]
    fn cusp_multiplicities() {
        assert_eq!(multiplicity_sequence(&poly("y^2 - x^3"), 3), vec![2, 1, 1]);
        assert_eq!(multiplicity_sequence(&poly("y - x^2"), 2), vec![1, 1]);
    }

    #[test]
    fn strict_transform_of_a_line() {
        let s = strict_in_chart(&poly("y"), 1);
        assert_eq!(s, poly("y"));
        // {x = 0} lives in chart 2, where it is the line {u = 0} transverse to {v = 0}
        let s = strict_in_chart(&poly("x"), 2);
        assert_eq!(s, poly("x"));
    }

    #[test]
    fn documented_totals() {
        // parabola for d/dx + 2x d/dy: Z = 2 (both at infinity)
        let f = Foliation::from_strs("1", "2*x").unwrap();
        let c = poly("y - x^2");
        let direct = curve_z(&f, &c).unwrap();
        assert_eq!(direct.total, 2);
        let t = safe_resolution(&f).unwrap();
        let z = total_z(&t, &c).unwrap();
        assert_eq!(z.original_z(), 2);
        // saddle with its invariant line
        let f = Foliation::from_strs("x", "-y").unwrap();
        assert_eq!(curve_z(&f, &poly("y")).unwrap().total, 2);
        let t = safe_resolution(&f).unwrap();
        assert_eq!(total_z(&t, &poly("y")).unwrap().original_z(), 2);
        // a curve through no singular point
        let f = Foliation::from_strs("x", "-y").unwrap();
        assert!(matches!(
            curve_z(&f, &poly("x + y")),
            Err(Error::NotInvariant)
        ));
    }

    #[test]
    fn minimal_tree_and_nodal_curve() {
        // the invariant pair of lines x*y = 0 is nodal at the saddle
        let f = Foliation::from_strs("x", "-y").unwrap();
        let t = seidenberg_reduce(&f).unwrap();
        assert!(matches!(
            total_z(&t, &poly("x*y")),
            Err(Error::SingularBranch(_))
        ));
        let t = safe_resolution(&f).unwrap();
        let z = total_z(&t, &poly("x*y")).unwrap();
        // two disjoint rational components after the extra blow-up: 0 = -4 + Z
        assert_eq!(z.original_z(), 4);
    }
}
