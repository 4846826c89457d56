//! Abscissa estimates and the growth-rate estimator behind every
//! Bohr–Cahen-type scan.

use crate::error::{Error, Result};
use crate::numeric::{fit_growth_nonneg_shape as fit_growth, fmt12};
use crate::verdict::ThreeValued;
use serde::{Serialize, Serializer};
use std::fmt;

/// Fitted growth rates at or below this are reported as "≤ 0".
pub const NONPOSITIVE_CLAMP: f64 = 0.02;

/// Maximum disagreement between the two half-window fits for a `Holds`
/// confidence.
pub const STABLE_SPREAD: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AbscissaValue {
    Finite(f64),
    /// The scan is consistent with a nonpositive abscissa; its exact value is
    /// not determined.
    NonPositive,
    NegInfinity,
    PosInfinity,
}

impl AbscissaValue {
    /// A single number standing in for the value when comparing estimates:
    /// `NonPositive` maps to `0`.
    pub fn representative(&self) -> f64 {
        match self {
            AbscissaValue::Finite(v) => *v,
            AbscissaValue::NonPositive => 0.0,
            AbscissaValue::NegInfinity => f64::NEG_INFINITY,
            AbscissaValue::PosInfinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for AbscissaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbscissaValue::Finite(v) => f.write_str(&fmt12(*v)),
            AbscissaValue::NonPositive => f.write_str("<= 0"),
            AbscissaValue::NegInfinity => f.write_str("-inf"),
            AbscissaValue::PosInfinity => f.write_str("+inf"),
        }
    }
}

impl Serialize for AbscissaValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AbscissaValue::Finite(v) => s.serialize_f64(*v),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

/// Serializes non-finite floats as strings (`"inf"`, `"-inf"`, `"NaN"`).
pub(crate) fn ser_float<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str(&fmt12(*v))
    }
}

fn ser_opt_float<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_float(v, s),
        None => s.serialize_none(),
    }
}

fn ser_pairs<S: Serializer>(v: &[(f64, f64)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    #[derive(Serialize)]
    struct Pair(#[serde(serialize_with = "ser_float")] f64, #[serde(serialize_with = "ser_float")] f64);
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for &(a, b) in v {
        seq.serialize_element(&Pair(a, b))?;
    }
    seq.end()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbscissaEstimate {
    pub value: AbscissaValue,
    /// Closed-form value when a registered family fact supplies one.
    #[serde(serialize_with = "ser_opt_float", skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
    pub truncation_points: Vec<f64>,
    /// `(x, log‖·‖/x)` pairs, or `(n, log n/λ_n)` for `L(λ)`.
    #[serde(serialize_with = "ser_pairs")]
    pub scan: Vec<(f64, f64)>,
    pub confidence: ThreeValued,
}

/// Turns `(x, log‖P_x‖)` samples into an abscissa estimate.
///
/// The trailing `window` samples are fitted by
/// `log‖P_x‖ ≈ rate·x + shape·log x + offset` and the rate is the estimate of
/// `limsup log‖P_x‖/x`. Polynomials and eventually-zero norms give `-∞`.
pub(crate) fn estimate_from_lognorms(
    xs: &[f64],
    lognorms: &[f64],
    window: usize,
    polynomial: bool,
    label: &str,
) -> Result<AbscissaEstimate> {
    if xs.is_empty() || xs.len() != lognorms.len() {
        return Err(Error::EmptyScan(format!("{label}: no truncation points")));
    }
    if window == 0 || window > xs.len() {
        return Err(Error::InvalidParameter(format!("window {window} must lie in 1..={}", xs.len())));
    }
    let scan: Vec<(f64, f64)> = xs.iter().zip(lognorms).map(|(&x, &l)| (x, l / x)).collect();
    let base = |value, confidence| AbscissaEstimate {
        value,
        exact: None,
        truncation_points: xs.to_vec(),
        scan: scan.clone(),
        confidence,
    };
    if polynomial {
        return Ok(base(
            AbscissaValue::NegInfinity,
            ThreeValued::holds(format!("{label}: Dirichlet polynomial, abscissa is -inf")),
        ));
    }
    let start = xs.len() - window;
    let tail: Vec<(f64, f64)> = xs[start..].iter().zip(&lognorms[start..]).map(|(&x, &l)| (x, l)).collect();
    if tail.iter().all(|&(_, l)| l == f64::NEG_INFINITY) {
        return Ok(base(
            AbscissaValue::NegInfinity,
            ThreeValued::holds(format!("{label}: truncation norms vanish on the trailing window")),
        ));
    }
    if tail.iter().any(|&(_, l)| l == f64::INFINITY) {
        return Ok(base(
            AbscissaValue::PosInfinity,
            ThreeValued::inconclusive(format!("{label}: truncation norms overflow")),
        ));
    }
    let finite: Vec<(f64, f64)> = tail.into_iter().filter(|(_, l)| l.is_finite()).collect();
    let Some(fit) = fit_growth(&finite) else {
        let max = finite.iter().map(|&(x, l)| l / x).fold(f64::NEG_INFINITY, f64::max);
        return Ok(base(
            clamp(max),
            ThreeValued::inconclusive(format!("{label}: too few points to fit, trailing maximum reported")),
        ));
    };
    let half = finite.len() / 2;
    let spread = if half >= 3 {
        match (fit_growth(&finite[..half]), fit_growth(&finite[half..])) {
            (Some(a), Some(b)) => (a.rate - b.rate).abs(),
            _ => f64::INFINITY,
        }
    } else {
        f64::INFINITY
    };
    let confidence = if spread < STABLE_SPREAD {
        ThreeValued::holds(format!("{label}: growth rate stable across the trailing window (spread {})", fmt12(spread)))
    } else {
        ThreeValued::inconclusive(format!("{label}: growth rate not yet stable (spread {})", fmt12(spread)))
    };
    Ok(base(clamp(fit.rate), confidence))
}

fn clamp(rate: f64) -> AbscissaValue {
    if rate.is_nan() || rate <= NONPOSITIVE_CLAMP {
        AbscissaValue::NonPositive
    } else {
        AbscissaValue::Finite(rate)
    }
}
