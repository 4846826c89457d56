//! λ-Dirichlet series and polynomials: coefficient sources, translation,
//! partial sums, Abschnitte and sup-norms on vertical lines.

use crate::error::{Error, Result};
use crate::frequency::{BohrDecomposition, Frequency, FrequencyJson, MATERIALIZE_CAP};
use crate::numeric::{golden_section_max, KahanSum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Base sequence of a coefficient source, before the `n^{-β}` weight and the
/// translation factor are applied.
#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientKind {
    /// Finite list; every later coefficient is zero.
    Explicit(Vec<Complex64>),
    Ones,
    /// `(-1)^n`.
    Alternating,
    /// `n^{-β}`, i.e. `Ones` with a mandatory weight.
    Power,
    /// The values repeated with period `values.len()`, starting at `n = 1`.
    Periodic(Vec<Complex64>),
}

/// Coefficients `a_n = base(n) · n^{-β} · e^{-λ_n·shift}`.
///
/// The shift records translations so that translated generators stay
/// generators; the formula only depends on `n` and `λ_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSource {
    kind: CoefficientKind,
    beta: f64,
    shift: f64,
}

impl CoefficientSource {
    pub fn explicit(values: Vec<Complex64>) -> Self {
        Self::plain(CoefficientKind::Explicit(values))
    }

    pub fn ones() -> Self {
        Self::plain(CoefficientKind::Ones)
    }

    pub fn alternating() -> Self {
        Self::plain(CoefficientKind::Alternating)
    }

    pub fn power(beta: f64) -> Result<Self> {
        Self::plain(CoefficientKind::Power).with_beta(beta)
    }

    pub fn periodic(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("periodic coefficients need at least one value".into()));
        }
        Ok(Self::plain(CoefficientKind::Periodic(values)))
    }

    fn plain(kind: CoefficientKind) -> Self {
        CoefficientSource { kind, beta: 0.0, shift: 0.0 }
    }

    /// Multiplies by `n^{-β}`.
    pub fn with_beta(mut self, beta: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::InvalidParameter(format!("beta must be finite, got {beta}")));
        }
        self.beta = beta;
        Ok(self)
    }

    pub fn kind(&self) -> &CoefficientKind {
        &self.kind
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// Number of possibly nonzero coefficients, if finite.
    pub fn support_len(&self) -> Option<usize> {
        match &self.kind {
            CoefficientKind::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    /// `a_n` given `λ_n` (1-based `n`).
    pub fn at(&self, n: u64, lambda: f64) -> Complex64 {
        let base = match &self.kind {
            CoefficientKind::Explicit(v) => match v.get(n as usize - 1) {
                Some(c) => *c,
                None => return Complex64::new(0.0, 0.0),
            },
            CoefficientKind::Ones | CoefficientKind::Power => Complex64::new(1.0, 0.0),
            CoefficientKind::Alternating => Complex64::new(if n.is_multiple_of(2) { 1.0 } else { -1.0 }, 0.0),
            CoefficientKind::Periodic(v) => v[(n as usize - 1) % v.len()],
        };
        let mut a = base;
        if self.beta != 0.0 {
            a *= (n as f64).powf(-self.beta);
        }
        if self.shift != 0.0 {
            a *= (-lambda * self.shift).exp();
        }
        a
    }

    fn kind_name(&self) -> &'static str {
        match self.kind {
            CoefficientKind::Explicit(_) => "explicit",
            CoefficientKind::Ones => "ones",
            CoefficientKind::Alternating => "alternating",
            CoefficientKind::Power => "power",
            CoefficientKind::Periodic(_) => "periodic",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientsJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<f64>,
}

fn to_complex(values: Vec<[f64; 2]>) -> Result<Vec<Complex64>> {
    values
        .into_iter()
        .map(|[re, im]| {
            if re.is_finite() && im.is_finite() {
                Ok(Complex64::new(re, im))
            } else {
                Err(Error::InvalidParameter(format!("coefficient ({re}, {im}) is not finite")))
            }
        })
        .collect()
}

impl TryFrom<CoefficientsJson> for CoefficientSource {
    type Error = Error;

    fn try_from(j: CoefficientsJson) -> Result<Self> {
        let need_values = |v: Option<Vec<[f64; 2]>>| {
            v.ok_or_else(|| Error::InvalidParameter(format!("coefficient kind `{}` needs `values`", j.kind)))
        };
        let forbid_values = |v: &Option<Vec<[f64; 2]>>| match v {
            Some(_) => Err(Error::InvalidParameter(format!("coefficient kind `{}` does not take `values`", j.kind))),
            None => Ok(()),
        };
        let mut src = match j.kind.as_str() {
            "explicit" => CoefficientSource::explicit(to_complex(need_values(j.values.clone())?)?),
            "periodic" => CoefficientSource::periodic(to_complex(need_values(j.values.clone())?)?)?,
            "ones" => {
                forbid_values(&j.values)?;
                CoefficientSource::ones()
            }
            "alternating" => {
                forbid_values(&j.values)?;
                CoefficientSource::alternating()
            }
            "power" => {
                forbid_values(&j.values)?;
                let beta =
                    j.beta.ok_or_else(|| Error::InvalidParameter("coefficient kind `power` needs `beta`".into()))?;
                CoefficientSource::power(beta)?
            }
            other => return Err(Error::InvalidParameter(format!("unknown coefficient kind `{other}`"))),
        };
        if let Some(beta) = j.beta {
            src = src.with_beta(beta)?;
        }
        if let Some(shift) = j.shift {
            if !shift.is_finite() {
                return Err(Error::InvalidParameter(format!("shift must be finite, got {shift}")));
            }
            src.shift = shift;
        }
        Ok(src)
    }
}

impl From<&CoefficientSource> for CoefficientsJson {
    fn from(c: &CoefficientSource) -> Self {
        let values = match &c.kind {
            CoefficientKind::Explicit(v) | CoefficientKind::Periodic(v) => {
                Some(v.iter().map(|z| [z.re, z.im]).collect())
            }
            _ => None,
        };
        let beta = (c.beta != 0.0 || matches!(c.kind, CoefficientKind::Power)).then_some(c.beta);
        CoefficientsJson { kind: c.kind_name().to_string(), values, beta, shift: (c.shift != 0.0).then_some(c.shift) }
    }
}

/// `Σ a_n e^{-λ_n s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletSeries {
    pub freq: Frequency,
    pub coeffs: CoefficientSource,
    pub label: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesJson {
    frequency: FrequencyJson,
    coefficients: CoefficientsJson,
    #[serde(default)]
    label: String,
}

impl Serialize for DirichletSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            frequency: FrequencyJson::from(&self.freq),
            coefficients: CoefficientsJson::from(&self.coeffs),
            label: self.label.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirichletSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        let freq = Frequency::try_from(j.frequency).map_err(serde::de::Error::custom)?;
        let coeffs = CoefficientSource::try_from(j.coefficients).map_err(serde::de::Error::custom)?;
        Ok(DirichletSeries { freq, coeffs, label: j.label })
    }
}

impl DirichletSeries {
    pub fn new(freq: Frequency, coeffs: CoefficientSource, label: impl Into<String>) -> Self {
        DirichletSeries { freq, coeffs, label: label.into() }
    }

    /// `Σ e^{-λ_n s}`; over `log n` this is ζ.
    pub fn ones(freq: Frequency) -> Self {
        Self::new(freq, CoefficientSource::ones(), "ones")
    }

    /// Number of terms that can be nonzero, if finite.
    pub fn support_len(&self) -> Option<usize> {
        match (self.coeffs.support_len(), self.freq.finite_len()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.support_len().is_some()
    }

    /// `a_n` (1-based).
    pub fn coefficient(&self, n: u64) -> Result<Complex64> {
        if n == 0 {
            return Err(Error::InvalidParameter("indices start at 1".into()));
        }
        if self.support_len().is_some_and(|len| n as usize > len) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let lambda = if self.coeffs.shift != 0.0 { self.freq.value_at(n)? } else { 0.0 };
        Ok(self.coeffs.at(n, lambda))
    }

    /// Coefficients `e^{-λ_n σ} a_n`.
    pub fn translate(&self, sigma: f64) -> DirichletSeries {
        let mut out = self.clone();
        out.coeffs.shift += sigma;
        out.label = format!("{} translated by {}", self.label, sigma);
        out
    }

    /// The first `n` terms (fewer when the support is shorter).
    pub fn prefix(&self, n: usize) -> Result<DirichletPolynomial> {
        let n = self.support_len().map_or(n, |len| n.min(len));
        let lambdas = self.freq.materialize(n)?;
        Ok(self.polynomial_from(&lambdas))
    }

    /// Terms with `λ_n < x`.
    pub fn truncate(&self, x: f64) -> Result<DirichletPolynomial> {
        let lambdas = self.lambdas_below(x)?;
        Ok(self.polynomial_from(&lambdas))
    }

    fn lambdas_below(&self, x: f64) -> Result<Vec<f64>> {
        let cap = self.support_len().unwrap_or(MATERIALIZE_CAP).min(MATERIALIZE_CAP);
        let count = match self.freq.count_below(x, MATERIALIZE_CAP) {
            Ok(c) => c.min(cap),
            Err(Error::HorizonExceeded { .. }) if self.support_len().is_some() => cap,
            Err(e) => return Err(e),
        };
        self.freq.materialize(count)
    }

    fn polynomial_from(&self, lambdas: &[f64]) -> DirichletPolynomial {
        DirichletPolynomial {
            terms: lambdas.iter().enumerate().map(|(i, &l)| (l, self.coeffs.at(i as u64 + 1, l))).collect(),
        }
    }

    /// `Σ_{λ_n < x} a_n e^{-λ_n s}`, summed in order of increasing `n`.
    pub fn partial_sum(&self, x: f64, s: Complex64) -> Result<Complex64> {
        if !(x > 0.0) {
            return Err(Error::InvalidParameter(format!("x must be positive, got {x}")));
        }
        Ok(self.truncate(x)?.eval(s))
    }
}

/// `Σ a_k e^{-λ_k s}` with finitely many strictly increasing `λ_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletPolynomial {
    terms: Vec<(f64, Complex64)>,
}

impl DirichletPolynomial {
    pub fn new(terms: Vec<(f64, Complex64)>) -> Result<Self> {
        for (i, w) in terms.windows(2).enumerate() {
            if !(w[0].0 < w[1].0) {
                return Err(Error::NonMonotone { index: i + 2, prev: w[0].0, next: w[1].0 });
            }
        }
        if let Some((i, t)) = terms.iter().enumerate().find(|(_, t)| !t.0.is_finite()) {
            return Err(Error::NegativeFrequency { index: i + 1, value: t.0 });
        }
        Ok(DirichletPolynomial { terms })
    }

    /// `a · e^{-λ s}`.
    pub fn monomial(lambda: f64, a: Complex64) -> Self {
        DirichletPolynomial { terms: vec![(lambda, a)] }
    }

    pub fn terms(&self) -> &[(f64, Complex64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficients(&self) -> Vec<Complex64> {
        self.terms.iter().map(|t| t.1).collect()
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.terms.iter().map(|&(l, a)| a * (-l * s).exp()).collect::<KahanSum>().value()
    }

    pub fn translate(&self, sigma: f64) -> DirichletPolynomial {
        DirichletPolynomial { terms: self.terms.iter().map(|&(l, a)| (l, a * (-l * sigma).exp())).collect() }
    }

    /// Lower bound for `sup_t |P(σ + it)|`: grid maximum over `[-t_max, t_max]`
    /// followed by one golden-section refinement around the best grid point.
    pub fn sup_norm_line(&self, sigma: f64, grid: &Grid) -> f64 {
        self.sup_norm_line_at(sigma, grid).1
    }

    /// As [`sup_norm_line`](Self::sup_norm_line), also returning where the
    /// maximum was found.
    pub fn sup_norm_line_at(&self, sigma: f64, grid: &Grid) -> (f64, f64) {
        if self.terms.is_empty() {
            return (0.0, 0.0);
        }
        let damped = self.translate(sigma);
        let modulus = |t: f64| damped.eval(Complex64::new(0.0, t)).norm();
        let values: Vec<f64> = grid.points().into_par_iter().map(modulus).collect();
        let (best, _) = argmax(&values);
        let t_best = grid.point(best);
        let (t_ref, v_ref) = golden_section_max(
            modulus,
            (t_best - grid.step).max(-grid.t_max),
            (t_best + grid.step).min(grid.t_max),
            60,
        );
        if v_ref > values[best] {
            (t_ref, v_ref)
        } else {
            (t_best, values[best])
        }
    }
}

/// First index of the largest value; NaN never wins.
pub(crate) fn argmax(values: &[f64]) -> (usize, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, &v) in values.iter().enumerate() {
        if v > best.1 {
            best = (i, v);
        }
    }
    best
}

/// Sampling of `t ∈ [-t_max, t_max]` with spacing `step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub t_max: f64,
    pub step: f64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { t_max: 100.0, step: 0.01 }
    }
}

impl Grid {
    pub fn new(t_max: f64, step: f64) -> Result<Self> {
        if !(t_max > 0.0 && step > 0.0 && t_max.is_finite() && step.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "grid needs t_max > 0 and step > 0, got t_max = {t_max}, step = {step}"
            )));
        }
        Ok(Grid { t_max, step })
    }

    pub fn len(&self) -> usize {
        2 * (self.t_max / self.step).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> f64 {
        let half = (self.len() / 2) as f64;
        (i as f64 - half) * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }
}

/// Indices `n ≤ horizon` whose decomposition row is supported in the first
/// `big_n` basis elements.
pub fn abschnitt_indices(
    d: &DirichletSeries,
    dec: &BohrDecomposition,
    big_n: usize,
    horizon: usize,
) -> Result<Vec<usize>> {
    if dec.source != d.freq.kind_name() {
        return Err(Error::MismatchedDecomposition(format!(
            "decomposition is for `{}`, series frequency is `{}`",
            dec.source,
            d.freq.kind_name()
        )));
    }
    let horizon = d.support_len().map_or(horizon, |len| horizon.min(len));
    if dec.len() < horizon {
        return Err(Error::MismatchedDecomposition(format!(
            "decomposition has {} rows, horizon is {horizon}",
            dec.len()
        )));
    }
    let lambdas = d.freq.materialize(horizon)?;
    for (i, &l) in lambdas.iter().enumerate() {
        let v = dec.value(i + 1).unwrap_or(f64::NAN);
        if !((v - l).abs() <= 1e-9 * l.abs().max(1.0)) {
            return Err(Error::MismatchedDecomposition(format!(
                "row {} evaluates to {v}, frequency value is {l}",
                i + 1
            )));
        }
    }
    Ok((1..=horizon).filter(|&n| dec.row_width(n).is_some_and(|w| w <= big_n)).collect())
}

/// The `N`-th Abschnitt as a series over the same frequency: coefficients
/// outside the kept index set are zeroed, and nothing past `horizon` remains.
pub fn abschnitt_series(
    d: &DirichletSeries,
    dec: &BohrDecomposition,
    big_n: usize,
    horizon: usize,
) -> Result<DirichletSeries> {
    let keep = abschnitt_indices(d, dec, big_n, horizon)?;
    let len = keep.last().copied().unwrap_or(0);
    let mut values = vec![Complex64::new(0.0, 0.0); len];
    for &n in &keep {
        values[n - 1] = d.coefficient(n as u64)?;
    }
    Ok(DirichletSeries::new(
        d.freq.clone(),
        CoefficientSource::explicit(values),
        format!("{} (Abschnitt N = {big_n})", d.label),
    ))
}

/// The `N`-th Abschnitt restricted to `n ≤ horizon`.
pub fn abschnitt(
    d: &DirichletSeries,
    dec: &BohrDecomposition,
    big_n: usize,
    horizon: usize,
) -> Result<DirichletPolynomial> {
    let keep = abschnitt_indices(d, dec, big_n, horizon)?;
    let lambdas = d.freq.materialize(keep.last().copied().unwrap_or(0))?;
    DirichletPolynomial::new(keep.iter().map(|&n| (lambdas[n - 1], d.coeffs.at(n as u64, lambdas[n - 1]))).collect())
}
