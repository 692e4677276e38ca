//! Foliations of the projective plane given by an affine polynomial vector
//! field `P ∂x + Q ∂y`.
//!
//! Projective data is derived from the homogeneous 1-form
//! `Ω = A dX + B dY + C dZ` with `A = Z·Qh`, `B = -Z·Ph`, `C = Y·Ph - X·Qh`
//! (`Ph`, `Qh` homogenized to the common degree), divided by the gcd of its
//! coefficients. The three standard charts read the foliation off `Ω`.

pub mod milnor;
pub mod singular;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{gcd, vars_of, xy, MPoly, Rational, Vars};

pub use milnor::intersection_multiplicity;
pub use singular::{
    classify_linear_part, classify_singularity, milnor_number, singular_points, Chart,
    Classification, LocalField, SingularPoint,
};

/// Homogeneous coordinates `(x, y, z)` used for 1-forms and pullbacks.
pub fn xyz() -> Vars {
    vars_of(&["x", "y", "z"])
}

#[derive(Clone, PartialEq)]
pub struct Foliation {
    p: MPoly,
    q: MPoly,
    degree: u32,
}

impl Foliation {
    /// Builds the foliation of `P ∂x + Q ∂y`, dividing out `gcd(P, Q)`.
    pub fn new(p: MPoly, q: MPoly) -> Result<Self> {
        let vars = xy();
        for poly in [&p, &q] {
            for (i, v) in poly.vars().iter().enumerate() {
                if !vars.contains(v) && poly.involves(i) {
                    return Err(Error::UnknownVariable(format!(
                        "{v} (foliations use the variables x and y)"
                    )));
                }
            }
        }
        let p = p.with_vars_lossy(&vars);
        let q = q.with_vars_lossy(&vars);
        if p.is_zero() && q.is_zero() {
            return Err(Error::ZeroField);
        }
        let g = gcd(&p, &q);
        let (p, q) = if g.is_constant() {
            (p, q)
        } else {
            (p.div_exact(&g).unwrap(), q.div_exact(&g).unwrap())
        };
        let degree = foliation_degree(&p, &q);
        Ok(Foliation { p, q, degree })
    }

    pub fn from_strs(p: &str, q: &str) -> Result<Self> {
        Foliation::new(MPoly::parse(p, &["x", "y"])?, MPoly::parse(q, &["x", "y"])?)
    }

    pub fn p(&self) -> &MPoly {
        &self.p
    }

    pub fn q(&self) -> &MPoly {
        &self.q
    }

    /// d(F): tangencies with a generic line.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Degree of the cotangent bundle, d(F) - 1.
    pub fn cotangent_degree(&self) -> i64 {
        self.degree as i64 - 1
    }

    /// `X(f) = P f_x + Q f_y`.
    pub fn apply(&self, f: &MPoly) -> MPoly {
        let f = f.with_vars_lossy(&xy());
        self.p
            .mul(&f.derivative(0))
            .add(&self.q.mul(&f.derivative(1)))
    }

    /// Same foliation, field multiplied by a nonzero constant.
    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroField);
        }
        Ok(Foliation {
            p: self.p.scale(c),
            q: self.q.scale(c),
            degree: self.degree,
        })
    }

    /// Coefficients `(A, B, C)` of the homogeneous 1-form, in `(x, y, z)`,
    /// with their common factor removed. Each has degree d(F) + 1.
    pub fn omega(&self) -> [MPoly; 3] {
        let m = self.p.degree().max(self.q.degree());
        let ph = homogenize_to(&self.p, m);
        let qh = homogenize_to(&self.q, m);
        let v = xyz();
        let x = MPoly::var(v.clone(), "x").unwrap();
        let y = MPoly::var(v.clone(), "y").unwrap();
        let z = MPoly::var(v, "z").unwrap();
        let a = z.mul(&qh);
        let b = z.mul(&ph).neg();
        let c = y.mul(&ph).sub(&x.mul(&qh));
        strip_common_factor([a, b, c])
    }

    /// The foliation defined by a homogeneous 1-form `(A, B, C)`.
    pub fn from_omega(omega: &[MPoly; 3]) -> Result<Self> {
        let [a, b, _] = strip_common_factor(omega.clone());
        let z = 2;
        let one = Rational::one();
        let pa = b.neg().eval_var(z, &one).with_vars_lossy(&xy());
        let qa = a.eval_var(z, &one).with_vars_lossy(&xy());
        Foliation::new(pa, qa)
    }

    /// Pulls the foliation back by the rational map `[Φ0 : Φ1 : Φ2]` given
    /// by homogeneous polynomials of equal degree in `(x, y, z)`.
    pub fn pullback(&self, map: &[MPoly; 3]) -> Result<Self> {
        let v = xyz();
        let map: Vec<MPoly> = map.iter().map(|f| f.with_vars_lossy(&v)).collect();
        let omega = self.omega();
        let composed: Vec<MPoly> = omega.iter().map(|a| a.compose(&map)).collect();
        let mut out: [MPoly; 3] = std::array::from_fn(|_| MPoly::zero(v.clone()));
        for (j, o) in out.iter_mut().enumerate() {
            for i in 0..3 {
                *o = o.add(&composed[i].mul(&map[i].derivative(j)));
            }
        }
        if out.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroField);
        }
        Foliation::from_omega(&out)
    }

    /// Local vector field of a chart, in that chart's two coordinates
    /// (stored under the names `x` and `y`).
    pub fn chart_field(&self, chart: Chart) -> (MPoly, MPoly) {
        let [a, b, c] = self.omega();
        let one = Rational::one();
        let v = xy();
        match chart {
            Chart::Affine => (self.p.clone(), self.q.clone()),
            Chart::InfinityX => {
                // X = 1, coordinates (Y/X, Z/X)
                let sub = |f: &MPoly| {
                    f.eval_var(0, &one)
                        .with_vars_lossy(&vars_of(&["y", "z"]))
                        .rename(v.clone())
                };
                (sub(&c).neg(), sub(&b))
            }
            Chart::InfinityY => {
                // Y = 1, coordinates (X/Y, Z/Y)
                let sub = |f: &MPoly| {
                    f.eval_var(1, &one)
                        .with_vars_lossy(&vars_of(&["x", "z"]))
                        .rename(v.clone())
                };
                (sub(&c).neg(), sub(&a))
            }
        }
    }
}

fn homogenize_to(f: &MPoly, m: u32) -> MPoly {
    let v = xyz();
    MPoly::from_terms(
        v,
        f.terms().map(|(mono, c)| {
            let e = mono.exps();
            (vec![e[0], e[1], m - (e[0] + e[1])], c.clone())
        }),
    )
}

fn strip_common_factor(w: [MPoly; 3]) -> [MPoly; 3] {
    let g = gcd(&gcd(&w[0], &w[1]), &w[2]);
    if g.is_constant() {
        return w;
    }
    w.map(|c| {
        if c.is_zero() {
            c
        } else {
            c.div_exact(&g).unwrap()
        }
    })
}

/// Degree of the foliation `P ∂x + Q ∂y` (gcd already removed): with
/// `m = max(deg P, deg Q)`, it is `m - 1` when the top homogeneous parts
/// satisfy `x·Q_m - y·P_m = 0`, else `m`.
pub fn foliation_degree(p: &MPoly, q: &MPoly) -> u32 {
    let v = xy();
    let p = p.with_vars_lossy(&v);
    let q = q.with_vars_lossy(&v);
    let m = p.degree().max(q.degree());
    let pm = p.homogeneous_part(m);
    let qm = q.homogeneous_part(m);
    let x = MPoly::var(v.clone(), "x").unwrap();
    let y = MPoly::var(v, "y").unwrap();
    if x.mul(&qm).sub(&y.mul(&pm)).is_zero() {
        m.saturating_sub(1)
    } else {
        m
    }
}

impl fmt::Display for Foliation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) ∂x + ({}) ∂y", self.p, self.q)
    }
}

impl fmt::Debug for Foliation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Foliation[d={}]({}, {})", self.degree, self.p, self.q)
    }
}

#[derive(Serialize)]
struct FoliationOut<'a> {
    #[serde(rename = "P")]
    p: &'a MPoly,
    #[serde(rename = "Q")]
    q: &'a MPoly,
}

impl Serialize for Foliation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FoliationOut {
            p: &self.p,
            q: &self.q,
        }
        .serialize(s)
    }
}

/// A polynomial given either in JSON form or as text in `x` and `y`.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum PolyInput {
    Json(MPoly),
    Text(String),
}

impl PolyInput {
    pub fn into_poly(self) -> Result<MPoly> {
        match self {
            PolyInput::Json(p) => Ok(p),
            PolyInput::Text(s) => MPoly::parse(&s, &["x", "y"]),
        }
    }
}

#[derive(Deserialize)]
struct FoliationIn {
    #[serde(rename = "P")]
    p: PolyInput,
    #[serde(rename = "Q")]
    q: PolyInput,
}

impl<'de> Deserialize<'de> for Foliation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = FoliationIn::deserialize(d)?;
        let p = raw.p.into_poly().map_err(D::Error::custom)?;
        let q = raw.q.into_poly().map_err(D::Error::custom)?;
        Foliation::new(p, q).map_err(D::Error::custom)
    }
}

impl MPoly<Rational> {
    /// Moves the polynomial to `vars`, dropping variables that do not occur.
    /// Panics if a variable that occurs is missing from `vars`.
    pub fn with_vars_lossy(&self, vars: &Vars) -> MPoly {
        if self.vars() == vars {
            return self.clone();
        }
        self.with_vars(vars.clone())
    }
}
