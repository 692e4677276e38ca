//! Degree bounds from plurigenera.
//!
//! The gate compares the plurigenera `P_n` of the foliation with the
//! number of sections `h⁰(C, (Ω¹_C)^⊗n)` on the generic leaf (or on an
//! invariant curve, plus `n·Z`). The first `n` where the plurigenus wins
//! gives the bound `n·(d - 1)`. Plurigenera are inputs: an explicit list,
//! a height (which gives `P_{h·n} ≥ binom(n + 2, 2)`), or both.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Largest index scanned when the oracle is a height alone.
pub const HEIGHT_SCAN_LIMIT: u64 = 1_000_000;

/// `h⁰(C, (Ω¹_C)^⊗k)` for a smooth curve of genus `g`.
pub fn rr_sections(g: i64, k: i64) -> Result<i64> {
    if k <= 0 {
        return Err(Error::InvalidInput(format!(
            "rr_sections needs k >= 1, got {k}"
        )));
    }
    if g < 0 {
        return Err(Error::InvalidInput(format!("negative genus {g}")));
    }
    Ok(match g {
        0 => 0,
        1 => 1,
        _ if k == 1 => g,
        _ => k * (2 * g - 2) - g + 1,
    })
}

/// `binom(n + 2, 2)`, the lower bound for `P_{h·n}` at height `h`.
pub fn height_lower_bound(h: u64, n: u64) -> Result<i64> {
    if h == 0 {
        return Err(Error::InvalidInput("height must be at least 1".into()));
    }
    let n = n as i64;
    Ok((n + 1) * (n + 2) / 2)
}

/// Plurigenera known exactly (`P[0] = P_1`) and/or through a height.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlurigeneraOracle {
    #[serde(
        rename = "P",
        default,
        skip_serializing_if = "Option::is_none",
        with = "opt_int_strings"
    )]
    pub explicit: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<u64>,
}

mod opt_int_strings {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum IntOrString {
        Int(i64),
        Str(String),
    }

    pub fn serialize<S: Serializer>(v: &Option<Vec<i64>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|xs| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<i64>>, D::Error> {
        use serde::de::Error;
        let raw: Option<Vec<IntOrString>> = Option::deserialize(d)?;
        raw.map(|xs| {
            xs.into_iter()
                .map(|x| match x {
                    IntOrString::Int(i) => Ok(i),
                    IntOrString::Str(s) => s
                        .trim()
                        .parse::<i64>()
                        .map_err(|e| D::Error::custom(format!("plurigenus {s:?}: {e}"))),
                })
                .collect()
        })
        .transpose()
    }
}

impl PlurigeneraOracle {
    pub fn explicit(p: Vec<i64>) -> Self {
        PlurigeneraOracle {
            explicit: Some(p),
            height: None,
        }
    }

    pub fn height(h: u64) -> Self {
        PlurigeneraOracle {
            explicit: None,
            height: Some(h),
        }
    }

    /// Checks the oracle's invariants.
    pub fn validate(&self) -> Result<()> {
        if self.explicit.is_none() && self.height.is_none() {
            return Err(Error::InvalidInput(
                "oracle needs \"P\" or \"height\"".into(),
            ));
        }
        if let Some(p) = &self.explicit {
            if let Some(v) = p.iter().find(|&&v| v < 0) {
                return Err(Error::InvalidInput(format!("negative plurigenus {v}")));
            }
        }
        if let Some(h) = self.height {
            if h == 0 {
                return Err(Error::InvalidInput("height must be at least 1".into()));
            }
            if let Some(p) = &self.explicit {
                for (i, &v) in p.iter().enumerate() {
                    let idx = i as u64 + 1;
                    if idx % h == 0 {
                        let lb = height_lower_bound(h, idx / h)?;
                        if v < lb {
                            return Err(Error::InvalidInput(format!(
                                "P_{idx} = {v} is below the height bound {lb}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Last index the oracle can speak for, `None` when unbounded.
    pub fn range(&self) -> Option<u64> {
        match (self.height, &self.explicit) {
            (Some(_), _) => None,
            (None, Some(p)) => Some(p.len() as u64),
            (None, None) => Some(0),
        }
    }

    /// Best known lower bound for `P_n` (exact when listed).
    pub fn lower_bound(&self, n: u64) -> Option<i64> {
        let exact = self
            .explicit
            .as_ref()
            .and_then(|p| p.get(n as usize - 1).copied());
        let from_height = self
            .height
            .and_then(|h| (n % h == 0).then(|| height_lower_bound(h, n / h).expect("h >= 1")));
        match (exact, from_height) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn describe(&self) -> Value {
        serde_json::to_value(self).expect("oracle serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub n: u64,
    pub lhs: i64,
    pub rhs: i64,
    pub fired: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub d: u64,
    pub g: i64,
    #[serde(rename = "Z", skip_serializing_if = "Option::is_none", default)]
    pub z: Option<i64>,
    pub oracle: Value,
    pub n0: u64,
    pub bound: u64,
    pub trace: Vec<TraceEntry>,
    /// Index scale: the bound is `scale · n0 · (d - 1)` (the height for
    /// height-based bounds, 1 otherwise).
    #[serde(default = "one")]
    pub scale: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

fn one() -> u64 {
    1
}

impl BoundReport {
    /// Re-derives `n0` from the trace: the gate fails before it and fires at it.
    pub fn verify_trace(&self) -> bool {
        let Some(last) = self.trace.last() else {
            return false;
        };
        let prefix_ok = self.trace[..self.trace.len() - 1]
            .iter()
            .all(|t| !t.fired && t.lhs <= t.rhs);
        let consecutive = self
            .trace
            .iter()
            .enumerate()
            .all(|(i, t)| t.n == i as u64 + 1);
        prefix_ok
            && consecutive
            && last.fired
            && last.lhs > last.rhs
            && last.n == self.n0
            && self.bound == self.scale * self.n0 * self.d.saturating_sub(1)
    }
}

fn degenerate_warning(d: u64, warnings: &mut Vec<String>) {
    if d <= 1 {
        warnings.push(format!(
            "d = {d}: the factor d - 1 vanishes, bound 0; such foliations are never of general type"
        ));
    }
}

/// Scans `n = 1, 2, ...` for the first `lhs(n) > rhs(n)`.
fn scan(
    limit: Option<u64>,
    lhs: impl Fn(u64) -> Option<i64>,
    rhs: impl Fn(u64) -> Result<i64>,
) -> Result<(u64, Vec<TraceEntry>)> {
    let mut trace = Vec::new();
    let limit = limit.unwrap_or(HEIGHT_SCAN_LIMIT);
    for n in 1..=limit {
        let r = rhs(n)?;
        let l = lhs(n).unwrap_or(0);
        let fired = l > r;
        trace.push(TraceEntry {
            n,
            lhs: l,
            rhs: r,
            fired,
        });
        if fired {
            return Ok((n, trace));
        }
    }
    Err(Error::OracleExhausted { last: limit })
}

/// Bound on the degree of a rational first integral whose generic leaf has
/// geometric genus `g`.
pub fn first_integral_degree_bound(
    d: u64,
    g: i64,
    oracle: &PlurigeneraOracle,
) -> Result<BoundReport> {
    if g < 2 {
        return Err(Error::Hypothesis(format!(
            "generic leaf genus g = {g}; the gate needs g >= 2"
        )));
    }
    invariant_gate(d, g, oracle, None)
}

/// Bound on the degree of an invariant curve of geometric genus `g_c`, with
/// `Z = Z(F, C)` (exact from a resolution, or the quasi-reduced worst case).
pub fn invariant_curve_degree_bound(
    d: u64,
    g_c: i64,
    oracle: &PlurigeneraOracle,
    z: i64,
) -> Result<BoundReport> {
    if z < 0 {
        return Err(Error::InvalidInput(format!(
            "Z must be nonnegative, got {z}"
        )));
    }
    invariant_gate(d, g_c, oracle, Some(z))
}

fn invariant_gate(
    d: u64,
    g: i64,
    oracle: &PlurigeneraOracle,
    z: Option<i64>,
) -> Result<BoundReport> {
    if d == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    if g < 0 {
        return Err(Error::InvalidInput(format!("negative genus {g}")));
    }
    oracle.validate()?;
    let zz = z.unwrap_or(0);
    let (n0, trace) = scan(
        oracle.range(),
        |n| oracle.lower_bound(n),
        |n| Ok(rr_sections(g, n as i64)? + n as i64 * zz),
    )?;
    let mut warnings = Vec::new();
    degenerate_warning(d, &mut warnings);
    Ok(BoundReport {
        d,
        g,
        z,
        oracle: oracle.describe(),
        n0,
        bound: n0 * (d - 1),
        trace,
        scale: 1,
        warnings,
    })
}

/// Bound from the height alone: `n* = min{n : binom(n+2,2) > rr(g, h·n)}`
/// and bound `h·n*·(d - 1)`. The trace is indexed by `n`, not `h·n`.
pub fn first_integral_bound_from_height(d: u64, g: i64, h: u64) -> Result<BoundReport> {
    if g < 2 {
        return Err(Error::Hypothesis(format!(
            "generic leaf genus g = {g}; the gate needs g >= 2"
        )));
    }
    if h == 0 {
        return Err(Error::InvalidInput("height must be at least 1".into()));
    }
    let (n0, trace) = scan(
        None,
        |n| height_lower_bound(h, n).ok(),
        |n| rr_sections(g, (h * n) as i64),
    )?;
    let mut warnings = Vec::new();
    degenerate_warning(d, &mut warnings);
    Ok(BoundReport {
        d,
        g,
        z: None,
        oracle: PlurigeneraOracle::height(h).describe(),
        n0,
        bound: h * n0 * d.saturating_sub(1),
        trace,
        scale: h,
        warnings,
    })
}

/// Worst-case `Z` over all singularities when every singularity is
/// quasi-reduced: `(d² + d + 1)(d + 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaggedBound {
    pub value: u64,
    pub hypothesis: &'static str,
}

pub fn z_bound_quasi_reduced(d: u64) -> TaggedBound {
    TaggedBound {
        value: (d * d + d + 1) * (d + 2),
        hypothesis:
            "quasi-reduced: every singularity has Milnor number 1 or is a reduced saddle-node",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_sections() {
        assert_eq!(rr_sections(2, 2).unwrap(), 3);
        assert_eq!(rr_sections(3, 5).unwrap(), 18);
        assert_eq!(rr_sections(0, 7).unwrap(), 0);
        assert_eq!(rr_sections(1, 4).unwrap(), 1);
        assert_eq!(rr_sections(4, 1).unwrap(), 4);
        assert!(rr_sections(2, 0).is_err());
    }

    #[test]
    fn documented_first_integral_bounds() {
        let sq = PlurigeneraOracle::explicit((1..=10).map(|n| n * n).collect());
        let r = first_integral_degree_bound(4, 2, &sq).unwrap();
        assert_eq!((r.n0, r.bound), (2, 6));
        assert!(r.verify_trace());
        let r = first_integral_degree_bound(4, 2, &PlurigeneraOracle::explicit(vec![0, 0, 0, 8]))
            .unwrap();
        assert_eq!((r.n0, r.bound), (4, 12));
        let r = first_integral_degree_bound(2, 7, &PlurigeneraOracle::explicit(vec![1_000_000]))
            .unwrap();
        assert_eq!(r.bound, 1);
        assert!(matches!(
            first_integral_degree_bound(4, 1, &sq),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            first_integral_degree_bound(4, 2, &PlurigeneraOracle::explicit(vec![0, 1])),
            Err(Error::OracleExhausted { last: 2 })
        ));
    }

    #[test]
    fn documented_height_bounds() {
        assert_eq!(height_lower_bound(3, 2).unwrap(), 6);
        assert_eq!(height_lower_bound(1, 0).unwrap(), 1);
        assert_eq!(height_lower_bound(2, 3).unwrap(), 10);
        let r = first_integral_bound_from_height(4, 2, 1).unwrap();
        assert_eq!((r.n0, r.bound), (1, 3));
        let r = first_integral_bound_from_height(5, 3, 2).unwrap();
        assert_eq!((r.n0, r.bound), (13, 104));
        assert!(r.verify_trace());
        let r = first_integral_bound_from_height(1, 3, 2).unwrap();
        assert_eq!(r.bound, 0);
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn documented_invariant_curve_bounds() {
        let sq = PlurigeneraOracle::explicit((1..=10).map(|n| n * n).collect());
        let r = invariant_curve_degree_bound(4, 0, &sq, 2).unwrap();
        assert_eq!((r.n0, r.bound), (3, 9));
        let a = invariant_curve_degree_bound(4, 2, &sq, 0).unwrap();
        let b = first_integral_degree_bound(4, 2, &sq).unwrap();
        assert_eq!(
            (a.n0, a.bound, a.trace.clone()),
            (b.n0, b.bound, b.trace.clone())
        );
        assert!(matches!(
            invariant_curve_degree_bound(4, 1, &PlurigeneraOracle::explicit(vec![0, 3, 9]), 5),
            Err(Error::OracleExhausted { last: 3 })
        ));
    }

    #[test]
    fn quasi_reduced_aggregate() {
        assert_eq!(z_bound_quasi_reduced(1).value, 9);
        assert_eq!(z_bound_quasi_reduced(2).value, 28);
        assert_eq!(z_bound_quasi_reduced(4).value, 126);
    }

    #[test]
    fn oracle_json_and_coherence() {
        let o: PlurigeneraOracle = serde_json::from_str(r#"{"P": ["0", "1", 3]}"#).unwrap();
        assert_eq!(o.explicit, Some(vec![0, 1, 3]));
        let o: PlurigeneraOracle = serde_json::from_str(r#"{"height": 2}"#).unwrap();
        assert_eq!(o.lower_bound(4), Some(6));
        assert_eq!(o.lower_bound(3), None);
        let bad = PlurigeneraOracle {
            explicit: Some(vec![0, 2]),
            height: Some(2),
        };
        assert!(bad.validate().is_err());
        assert!(PlurigeneraOracle::default().validate().is_err());
    }
}
