//! Singular points, Milnor numbers and Seidenberg classification.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::milnor::intersection_multiplicity;
use super::Foliation;
use crate::error::{Error, Result};
use crate::exactmath::solve::{common_zeros, univariate_orbits, Orbit};
use crate::exactmath::{AlgNum, Field, MPoly, NumberField, Rational};

/// The three standard affine charts of the projective plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chart {
    /// `Z = 1`, coordinates `(x, y)`.
    Affine,
    /// `X = 1`, coordinates `(Y/X, Z/X)`; used for points `[1 : y : 0]`.
    InfinityX,
    /// `Y = 1`, coordinates `(X/Y, Z/Y)`; used for the point `[0 : 1 : 0]`.
    InfinityY,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    ReducedNondegenerate,
    ReducedSaddleNode,
    NonReduced,
    Undetermined,
}

impl Classification {
    pub fn is_reduced(self) -> bool {
        matches!(
            self,
            Classification::ReducedNondegenerate | Classification::ReducedSaddleNode
        )
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::ReducedNondegenerate => "reduced-nondegenerate",
            Classification::ReducedSaddleNode => "reduced-saddle-node",
            Classification::NonReduced => "non-reduced",
            Classification::Undetermined => "undetermined",
        })
    }
}

/// A vector field translated so that the point sits at the origin, with
/// coefficients in the point's number field.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalField {
    pub p: MPoly<AlgNum>,
    pub q: MPoly<AlgNum>,
}

impl LocalField {
    /// Lifts a rational field to `field` and moves `(a, b)` to the origin.
    pub fn at(p: &MPoly, q: &MPoly, a: &AlgNum, b: &AlgNum) -> LocalField {
        let lift = |f: &MPoly| f.map_coeffs(|c| a.from_rational_like(c));
        let shift = [a.clone(), b.clone()];
        let tp = lift(p);
        let tq = lift(q);
        LocalField {
            p: if tp.is_zero() {
                tp
            } else {
                tp.translate(&shift)
            },
            q: if tq.is_zero() {
                tq
            } else {
                tq.translate(&shift)
            },
        }
    }

    pub fn is_singular(&self) -> bool {
        self.p.constant_term().is_none() && self.q.constant_term().is_none()
    }

    /// Jacobian matrix at the origin, `[[P_x, P_y], [Q_x, Q_y]]`.
    pub fn linear_part(&self, zero: &AlgNum) -> [[AlgNum; 2]; 2] {
        let c = |f: &MPoly<AlgNum>, e: [u32; 2]| {
            f.coefficient(&e)
                .cloned()
                .unwrap_or_else(|| zero.zero_like())
        };
        [
            [c(&self.p, [1, 0]), c(&self.p, [0, 1])],
            [c(&self.q, [1, 0]), c(&self.q, [0, 1])],
        ]
    }

    pub fn milnor(&self) -> Result<u32> {
        intersection_multiplicity(&self.p, &self.q)
    }
}

/// Seidenberg classification from the linear part. Also returns the
/// eigenvalue ratio `λ1/λ2` (with `|λ1| >= |λ2|` convention `>= 1` in
/// absolute value) whenever it is rational.
pub fn classify_linear_part(j: &[[AlgNum; 2]; 2]) -> (Classification, Option<Rational>) {
    let t = j[0][0].add(&j[1][1]);
    let d = j[0][0].mul(&j[1][1]).sub(&j[0][1].mul(&j[1][0]));
    if d.is_zero() {
        return if t.is_zero() {
            (Classification::NonReduced, None)
        } else {
            (Classification::ReducedSaddleNode, Some(Rational::zero()))
        };
    }
    // ρ + 1/ρ + 2 = T²/D for the ratio ρ of the eigenvalues
    let s = t.mul(&t).div(&d);
    let Some(s) = s.as_rational() else {
        return (Classification::ReducedNondegenerate, None);
    };
    let disc = &s * &(&s - &Rational::from(4));
    let Some(r) = disc.sqrt_exact() else {
        return (Classification::ReducedNondegenerate, None);
    };
    let two = Rational::from(2);
    let rho1 = (&(&s - &two) + &r) / &two;
    let rho2 = (&(&s - &two) - &r) / &two;
    let rho = if rho1.abs() >= rho2.abs() { rho1 } else { rho2 };
    if rho.is_positive() {
        (Classification::NonReduced, Some(rho))
    } else {
        (Classification::ReducedNondegenerate, Some(rho))
    }
}

#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub chart: Chart,
    /// Coordinates in the chart, one representative of a Galois orbit.
    pub orbit: Orbit,
    pub milnor_number: u32,
    pub linear_part: [[AlgNum; 2]; 2],
    pub classification: Classification,
    /// Eigenvalue ratio when rational (0 for saddle-nodes).
    pub eigen_ratio: Option<Rational>,
    /// Exact classification; always true for exactly located points.
    pub certified: bool,
    pub local: LocalField,
}

impl SingularPoint {
    fn build(chart: Chart, orbit: Orbit, p: &MPoly, q: &MPoly) -> Result<Self> {
        let local = LocalField::at(p, q, &orbit.x, &orbit.y);
        if !local.is_singular() {
            return Err(Error::NotSingular(orbit.describe()));
        }
        let linear_part = local.linear_part(&orbit.x);
        let det = linear_part[0][0]
            .mul(&linear_part[1][1])
            .sub(&linear_part[0][1].mul(&linear_part[1][0]));
        let milnor_number = if det.is_zero() { local.milnor()? } else { 1 };
        let (classification, eigen_ratio) = classify_linear_part(&linear_part);
        Ok(SingularPoint {
            chart,
            orbit,
            milnor_number,
            linear_part,
            classification,
            eigen_ratio,
            certified: true,
            local,
        })
    }

    /// Number of conjugate points this entry stands for.
    pub fn count(&self) -> usize {
        self.orbit.size()
    }

    /// Homogeneous coordinates of the representative, as text.
    pub fn projective(&self) -> String {
        let (a, b) = (&self.orbit.x, &self.orbit.y);
        let wrap = |v: &AlgNum| {
            let s = v.to_string();
            if v.as_rational().is_some() {
                s
            } else {
                format!("({s})")
            }
        };
        let tail = if self.orbit.is_rational() {
            String::new()
        } else {
            let k = &self.orbit.field;
            format!(" with {} = 0", k.modulus().fmt_in(k.name()))
        };
        match self.chart {
            Chart::Affine => format!("[{} : {} : 1]{tail}", wrap(a), wrap(b)),
            Chart::InfinityX => format!("[1 : {} : 0]{tail}", wrap(a)),
            Chart::InfinityY => format!("[0 : 1 : 0]{tail}"),
        }
    }

    pub fn report(&self, width: &Rational) -> Value {
        let lp: Vec<Vec<String>> = self
            .linear_part
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect();
        let boxes: Vec<Value> = self
            .orbit
            .generator_boxes(width)
            .into_iter()
            .map(|b| serde_json::to_value(b).unwrap())
            .collect();
        json!({
            "chart": self.chart,
            "location": self.projective(),
            "orbit_size": self.count(),
            "field": if self.orbit.is_rational() { Value::Null } else {
                Value::String(self.orbit.field.modulus().fmt_in(self.orbit.field.name()))
            },
            "generator_boxes": boxes,
            "milnor_number": self.milnor_number,
            "linear_part": lp,
            "eigen_ratio": self.eigen_ratio.as_ref().map(|r| r.to_string()),
            "classification": self.classification,
            "certified": self.certified,
        })
    }
}

/// Every singular point of `f` on the projective plane, one entry per Galois
/// orbit, sorted by chart and then by the exact coordinates.
pub fn singular_points(f: &Foliation) -> Result<Vec<SingularPoint>> {
    let mut jobs: Vec<(Chart, Orbit)> = Vec::new();
    for o in common_zeros(f.p(), f.q())? {
        jobs.push((Chart::Affine, o));
    }
    // line at infinity away from [0:1:0]
    let (u, v) = f.chart_field(Chart::InfinityX);
    let zero = Rational::zero();
    let u0 = u.eval_var(1, &zero).to_upoly(0);
    let v0 = v.eval_var(1, &zero).to_upoly(0);
    let g = u0.gcd(&v0);
    if g.is_zero() {
        return Err(Error::NonIsolated("z".into()));
    }
    for (k, a) in univariate_orbits(&g) {
        let z = AlgNum::from_rational(&k, Rational::zero());
        jobs.push((
            Chart::InfinityX,
            Orbit {
                field: k,
                x: a,
                y: z,
            },
        ));
    }
    let (u, v) = f.chart_field(Chart::InfinityY);
    if u.constant_term().is_none() && v.constant_term().is_none() {
        jobs.push((Chart::InfinityY, Orbit::rational(zero.clone(), zero)));
    }
    let fields: Vec<(Chart, (MPoly, MPoly))> = [Chart::Affine, Chart::InfinityX, Chart::InfinityY]
        .into_iter()
        .map(|c| (c, f.chart_field(c)))
        .collect();
    jobs.into_par_iter()
        .map(|(chart, orbit)| {
            let (p, q) = &fields.iter().find(|(c, _)| *c == chart).unwrap().1;
            SingularPoint::build(chart, orbit, p, q)
        })
        .collect()
}

/// Sum of Milnor numbers over all points (conjugates included).
pub fn total_milnor(points: &[SingularPoint]) -> u64 {
    points
        .iter()
        .map(|p| p.milnor_number as u64 * p.count() as u64)
        .sum()
}

/// Milnor number of `f` at an exact point of a chart.
pub fn milnor_number(f: &Foliation, chart: Chart, x: &AlgNum, y: &AlgNum) -> Result<u32> {
    let (p, q) = f.chart_field(chart);
    let local = LocalField::at(&p, &q, x, y);
    if !local.is_singular() {
        return Err(Error::NotSingular(format!("({x}, {y})")));
    }
    local.milnor()
}

/// Classification of `f` at an exact point of a chart.
pub fn classify_singularity(
    f: &Foliation,
    chart: Chart,
    x: &AlgNum,
    y: &AlgNum,
) -> Result<Classification> {
    let (p, q) = f.chart_field(chart);
    let local = LocalField::at(&p, &q, x, y);
    if !local.is_singular() {
        return Err(Error::NotSingular(format!("({x}, {y})")));
    }
    Ok(classify_linear_part(&local.linear_part(x)).0)
}

/// Rational point helper for the functions above.
pub fn rational_point(x: Rational, y: Rational) -> (AlgNum, AlgNum) {
    let k = NumberField::rationals();
    (AlgNum::from_rational(&k, x), AlgNum::from_rational(&k, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(a: i64, b: i64) -> [[AlgNum; 2]; 2] {
        let k = NumberField::rationals();
        let r = |v: i64| AlgNum::from_rational(&k, Rational::from(v));
        [[r(a), r(0)], [r(0), r(b)]]
    }

    #[test]
    fn documented_classifications() {
        assert_eq!(
            classify_linear_part(&diag(1, -1)).0,
            Classification::ReducedNondegenerate
        );
        assert_eq!(
            classify_linear_part(&diag(1, 2)),
            (Classification::NonReduced, Some(Rational::from(2)))
        );
        assert_eq!(
            classify_linear_part(&diag(0, 1)).0,
            Classification::ReducedSaddleNode
        );
        assert_eq!(
            classify_linear_part(&diag(0, 0)).0,
            Classification::NonReduced
        );
    }

    #[test]
    fn linear_field_has_three_points() {
        let f = Foliation::from_strs("x", "2*y").unwrap();
        let pts = singular_points(&f).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|p| p.milnor_number == 1));
        assert_eq!(total_milnor(&pts), 3);
        let charts: Vec<Chart> = pts.iter().map(|p| p.chart).collect();
        assert_eq!(
            charts,
            vec![Chart::Affine, Chart::InfinityX, Chart::InfinityY]
        );
    }

    #[test]
    fn saddle_node_milnor() {
        let f = Foliation::from_strs("x^2", "y").unwrap();
        let (x, y) = rational_point(Rational::zero(), Rational::zero());
        assert_eq!(milnor_number(&f, Chart::Affine, &x, &y).unwrap(), 2);
        assert_eq!(
            classify_singularity(&f, Chart::Affine, &x, &y).unwrap(),
            Classification::ReducedSaddleNode
        );
        let (a, b) = rational_point(Rational::one(), Rational::zero());
        assert!(matches!(
            milnor_number(&f, Chart::Affine, &a, &b),
            Err(Error::NotSingular(_))
        ));
    }

    #[test]
    fn bezout_on_small_examples() {
        for (p, q) in [
            ("(x^3-1)*(x-2*y^2)", "(y^3-1)*(y-2*x^2)"),
            ("x^2 + y", "x*y - 1"),
            ("y", "-x + x^2"),
            ("x^2", "y"),
            ("1 + x*y", "x^3 - y^2"),
        ] {
            let f = Foliation::from_strs(p, q).unwrap();
            let d = f.degree() as u64;
            let pts = singular_points(&f).unwrap();
            assert_eq!(total_milnor(&pts), d * d + d + 1, "{f}");
        }
    }
}
