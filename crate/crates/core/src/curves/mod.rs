//! Plane algebraic curves: invariance with cofactors, singular points and
//! the geometric genus of nodal curves.

pub mod extactic;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::blowup::strict::chart_curve;
use crate::error::{Error, Result};
use crate::exactmath::solve::{common_zeros, Orbit};
use crate::exactmath::{gcd, xy, AlgNum, Field, MPoly, Rational};
use crate::foliation::{Chart, Foliation};

pub use extactic::{
    extactic, extactic_decision, first_integral_check, first_integral_degree, ExtacticDecision,
};

/// A reduced plane curve `{f = 0}` given by an affine equation in `x`, `y`.
#[derive(Clone, PartialEq)]
pub struct PlaneCurve {
    f: MPoly,
    /// Genus supplied by the caller, trusted as given.
    pub genus: Option<i64>,
    /// Delta invariants of the singular points, supplied by the caller.
    pub delta: Option<Vec<u32>>,
}

impl PlaneCurve {
    pub fn new(f: MPoly) -> Result<Self> {
        let f = f.with_vars_lossy(&xy());
        if f.is_constant() {
            return Err(Error::InvalidInput("curve equation is constant".into()));
        }
        if !crate::exactmath::gcd::is_squarefree(&f) {
            return Err(Error::InvalidInput(format!(
                "curve equation {f} is not squarefree"
            )));
        }
        Ok(PlaneCurve {
            f,
            genus: None,
            delta: None,
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        PlaneCurve::new(MPoly::parse(s, &["x", "y"])?)
    }

    pub fn f(&self) -> &MPoly {
        &self.f
    }

    /// Degree of the projective closure.
    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    /// Arithmetic genus `(n - 1)(n - 2) / 2`.
    pub fn arithmetic_genus(&self) -> i64 {
        let n = self.degree() as i64;
        (n - 1) * (n - 2) / 2
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{} = 0}}", self.f)
    }
}

impl fmt::Debug for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneCurve({})", self.f)
    }
}

#[derive(Serialize)]
struct CurveOut<'a> {
    #[serde(flatten)]
    f: &'a MPoly,
    #[serde(skip_serializing_if = "Option::is_none")]
    genus: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: &'a Option<Vec<u32>>,
}

impl Serialize for PlaneCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveOut {
            f: &self.f,
            genus: self.genus,
            delta: &self.delta,
        }
        .serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CurveIn {
    Text {
        f: String,
        genus: Option<i64>,
        delta: Option<Vec<u32>>,
    },
    Json {
        #[serde(flatten)]
        f: MPoly,
        genus: Option<i64>,
        delta: Option<Vec<u32>>,
    },
}

impl<'de> Deserialize<'de> for PlaneCurve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let (f, genus, delta) = match CurveIn::deserialize(d)? {
            CurveIn::Text { f, genus, delta } => (
                MPoly::parse(&f, &["x", "y"]).map_err(D::Error::custom)?,
                genus,
                delta,
            ),
            CurveIn::Json { f, genus, delta } => (f, genus, delta),
        };
        let mut c = PlaneCurve::new(f).map_err(D::Error::custom)?;
        c.genus = genus;
        c.delta = delta;
        Ok(c)
    }
}

/// `X(f) = h f` certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct CofactorCertificate {
    pub curve: MPoly,
    pub cofactor: MPoly,
}

impl CofactorCertificate {
    /// Re-checks `P f_x + Q f_y - h f = 0`.
    pub fn verify(&self, fol: &Foliation) -> bool {
        fol.apply(&self.curve)
            .sub(&self.cofactor.mul(&self.curve))
            .is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "curve": self.curve.to_string(),
            "cofactor": self.cofactor.to_string(),
            "cofactor_degree": self.cofactor.degree(),
        })
    }
}

/// The cofactor of `f` when `{f = 0}` is invariant, `None` otherwise.
pub fn is_invariant(fol: &Foliation, curve: &PlaneCurve) -> Option<CofactorCertificate> {
    let xf = fol.apply(&curve.f);
    let h = if xf.is_zero() {
        MPoly::zero(xy())
    } else {
        xf.div_exact(&curve.f)?
    };
    Some(CofactorCertificate {
        curve: curve.f.clone(),
        cofactor: h,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SingularityKind {
    Node,
    NonNode,
}

#[derive(Clone, Debug)]
pub struct CurveSingularity {
    pub chart: Chart,
    pub orbit: Orbit,
    pub multiplicity: u32,
    pub kind: SingularityKind,
}

impl CurveSingularity {
    pub fn describe(&self) -> String {
        let pt = self.orbit.describe();
        match self.chart {
            Chart::Affine => pt,
            Chart::InfinityX => format!("{pt} in the chart X = 1"),
            Chart::InfinityY => format!("{pt} in the chart Y = 1"),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "chart": self.chart,
            "point": self.describe(),
            "orbit_size": self.orbit.size(),
            "multiplicity": self.multiplicity,
            "kind": self.kind,
        })
    }
}

/// Singular points of an affine curve `g` in its own coordinates.
fn affine_singular(g: &MPoly) -> Result<Vec<Orbit>> {
    if g.is_constant() {
        // the curve misses this chart entirely
        return Ok(Vec::new());
    }
    let gx = g.derivative(0);
    let gy = g.derivative(1);
    // a directional derivative coprime to g: only lines parallel to the
    // direction can share a factor with it
    let mut partner = None;
    for t in 0..=g.degree() as i64 + 1 {
        let dir = gx.add(&gy.scale(&Rational::from(t)));
        if dir.is_zero() {
            continue;
        }
        if gcd(g, &dir).is_constant() {
            partner = Some(dir);
            break;
        }
    }
    let partner = partner.expect("some direction avoids every linear factor");
    let mut out = Vec::new();
    for o in common_zeros(g, &partner)? {
        let pt = [o.x.clone(), o.y.clone()];
        let ev = |f: &MPoly| {
            f.map_coeffs(|c| o.x.from_rational_like(c))
                .eval(&pt)
                .map_or(true, |v| v.is_zero())
        };
        if ev(&gx) && ev(&gy) {
            out.push(o);
        }
    }
    Ok(out)
}

fn classify_point(g: &MPoly, o: &Orbit) -> (u32, SingularityKind) {
    let local = g.map_coeffs(|c| o.x.from_rational_like(c));
    let local = local.translate(&[o.x.clone(), o.y.clone()]);
    let m = local.order().unwrap_or(0);
    if m != 2 {
        return (m, SingularityKind::NonNode);
    }
    let c = |e: [u32; 2]| {
        local
            .coefficient(&e)
            .cloned()
            .unwrap_or_else(|| o.x.zero_like())
    };
    let (a, b, cc) = (c([2, 0]), c([1, 1]), c([0, 2]));
    let four = o.x.from_rational_like(&Rational::from(4));
    let disc = b.mul(&b).sub(&four.mul(&a).mul(&cc));
    let kind = if disc.is_zero() {
        SingularityKind::NonNode
    } else {
        SingularityKind::Node
    };
    (2, kind)
}

/// Singular points of the projective closure, with node tests.
pub fn curve_singularities(curve: &PlaneCurve) -> Result<Vec<CurveSingularity>> {
    let mut out = Vec::new();
    for chart in [Chart::Affine, Chart::InfinityX, Chart::InfinityY] {
        let g = chart_curve(&curve.f, chart);
        let pts: Vec<Orbit> = match chart {
            Chart::Affine => affine_singular(&g)?,
            // points [1 : y : 0]
            Chart::InfinityX => affine_singular(&g)?
                .into_iter()
                .filter(|o| o.y.is_zero())
                .collect(),
            Chart::InfinityY => {
                let o = Orbit::rational(Rational::zero(), Rational::zero());
                let zero = [o.x.clone(), o.y.clone()];
                let vanishes = |f: &MPoly| {
                    f.map_coeffs(|c| o.x.from_rational_like(c))
                        .eval(&zero)
                        .map_or(true, |v: AlgNum| v.is_zero())
                };
                if vanishes(&g) && vanishes(&g.derivative(0)) && vanishes(&g.derivative(1)) {
                    vec![o]
                } else {
                    vec![]
                }
            }
        };
        for o in pts {
            let (multiplicity, kind) = classify_point(&g, &o);
            out.push(CurveSingularity {
                chart,
                orbit: o,
                multiplicity,
                kind,
            });
        }
    }
    Ok(out)
}

/// Geometric genus `(n - 1)(n - 2)/2 - Σ δ`.
///
/// A genus set on the curve is returned as is. Supplied delta invariants
/// replace the singularity analysis; otherwise every singular point must
/// be an ordinary node (δ = 1 for each conjugate).
pub fn genus(curve: &PlaneCurve) -> Result<i64> {
    if let Some(g) = curve.genus {
        return Ok(g);
    }
    let pa = curve.arithmetic_genus();
    if let Some(delta) = &curve.delta {
        return Ok(pa - delta.iter().map(|&d| d as i64).sum::<i64>());
    }
    let mut nodes = 0i64;
    for s in curve_singularities(curve)? {
        if s.kind != SingularityKind::Node {
            return Err(Error::NonNodal(s.describe()));
        }
        nodes += s.orbit.size() as i64;
    }
    Ok(pa - nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::poly;

    #[test]
    fn documented_invariance() {
        let f = Foliation::from_strs("x", "2*y").unwrap();
        let c = is_invariant(&f, &PlaneCurve::parse("y").unwrap()).unwrap();
        assert_eq!(c.cofactor, poly("2"));
        let c = is_invariant(&f, &PlaneCurve::parse("y - x^2").unwrap()).unwrap();
        assert_eq!(c.cofactor, poly("2"));
        assert!(c.verify(&f));
        assert!(is_invariant(&f, &PlaneCurve::parse("y - x").unwrap()).is_none());
    }

    #[test]
    fn lines_through_the_chart_boundary() {
        // {x = 0} is the constant 1 in the chart X = 1
        assert!(curve_singularities(&PlaneCurve::parse("x").unwrap())
            .unwrap()
            .is_empty());
        assert_eq!(genus(&PlaneCurve::parse("x").unwrap()).unwrap(), 0);
    }

    #[test]
    fn documented_singularities_and_genera() {
        assert!(
            curve_singularities(&PlaneCurve::parse("x^2 + y^2 - 1").unwrap())
                .unwrap()
                .is_empty()
        );
        let nodal = PlaneCurve::parse("y^2 - x^2 - x^3").unwrap();
        let s = curve_singularities(&nodal).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].kind, SingularityKind::Node);
        let cusp = PlaneCurve::parse("y^2 - x^3").unwrap();
        let s = curve_singularities(&cusp).unwrap();
        // the affine cusp, and the flex-cusp [0:1:0] is smooth: y^2 z = x^3 at
        // [0:1:0] reads z = x^3, a smooth point
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].kind, SingularityKind::NonNode);
        assert!(matches!(genus(&cusp), Err(Error::NonNodal(_))));

        assert_eq!(
            genus(&PlaneCurve::parse("x^2 + y^2 - 1").unwrap()).unwrap(),
            0
        );
        assert_eq!(
            genus(&PlaneCurve::parse("x^4 + y^4 - 1").unwrap()).unwrap(),
            3
        );
        assert_eq!(
            genus(&PlaneCurve::parse("y^2 - x^2*(x + 1)").unwrap()).unwrap(),
            0
        );
        let mut c = cusp.clone();
        c.delta = Some(vec![1]);
        assert_eq!(genus(&c).unwrap(), 0);
    }

    #[test]
    fn singular_points_at_infinity() {
        // x*y - 1 is smooth; x^2*y - 1 is singular at [0 : 1 : 0]
        assert!(curve_singularities(&PlaneCurve::parse("x*y - 1").unwrap())
            .unwrap()
            .is_empty());
        let s = curve_singularities(&PlaneCurve::parse("x^2*y - 1").unwrap()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].chart, Chart::InfinityY);
        // four concurrent-free lines: six nodes, genus 3 - 6 = -3
        let lines = PlaneCurve::parse("x*y*(x + y - 1)*(x - y - 2)").unwrap();
        let s = curve_singularities(&lines).unwrap();
        assert_eq!(s.iter().map(|p| p.orbit.size()).sum::<usize>(), 6);
        assert!(s.iter().all(|p| p.kind == SingularityKind::Node));
    }

    #[test]
    fn curve_json_round_trip() {
        let mut c = PlaneCurve::parse("y^2 - x^3 - x").unwrap();
        c.genus = Some(1);
        let s = serde_json::to_string(&c).unwrap();
        let back: PlaneCurve = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let t: PlaneCurve = serde_json::from_str(r#"{"f": "y - x^2", "delta": [0]}"#).unwrap();
        assert_eq!(t.f(), &poly("y - x^2"));
        assert!(serde_json::from_str::<PlaneCurve>(r#"{"f": "x^2"}"#).is_err());
    }
}
