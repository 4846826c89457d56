//! Frequencies `λ = (λ_n)`: strictly increasing sequences of nonnegative
//! reals, either drawn from a closed-form family or given as finite data.

mod conditions;
mod decomposition;
mod facts;
mod schema;

pub use conditions::{
    check_bohr_condition, check_hypercontractive, check_landau_condition, classify_bohr_theorem, estimate_l,
    q_linearly_independent,
};
pub use decomposition::{
    bohr_decomposition, bohr_decomposition_to, exact_frequency_value, BasisElement, BohrDecomposition, ExactValue, Row,
};
pub use facts::exact_l;
pub use schema::FrequencyJson;

use crate::error::{Error, Result};
use crate::primes;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

/// Default truncation horizon for symbolic families.
pub const DEFAULT_N_MAX: usize = 100_000;

/// Largest prefix that will ever be materialized for a single call.
pub const MATERIALIZE_CAP: usize = 50_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum FrequencyKind {
    /// `λ_n = log n`, the ordinary Dirichlet series.
    LogN,
    /// `λ_n = n - 1`, i.e. `(0, 1, 2, …)`; power series in `e^{-s}`.
    N,
    /// `λ_n = (log n)^α`.
    LogNPow {
        alpha: f64,
    },
    /// `λ_n = log p_n` with `p_1 = 2`.
    LogPrime,
    /// `λ_n = c·log n` for a positive rational `c`.
    ScaledLogN {
        c: Ratio<i64>,
    },
    /// `λ_n = log log (n + 2)`; shifted so that `λ_1 > 0`.
    LogLogN,
    Explicit {
        values: Vec<f64>,
    },
    /// `λ_n = Σ_k r_k^n b_k` for finitely many listed rows.
    RationalCombination {
        basis: Vec<f64>,
        matrix: Vec<Vec<Ratio<i64>>>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Frequency {
    kind: FrequencyKind,
    n_max: usize,
}

impl Frequency {
    fn symbolic(kind: FrequencyKind) -> Self {
        Frequency { kind, n_max: DEFAULT_N_MAX }
    }

    pub fn log_n() -> Self {
        Self::symbolic(FrequencyKind::LogN)
    }

    pub fn n() -> Self {
        Self::symbolic(FrequencyKind::N)
    }

    pub fn log_prime() -> Self {
        Self::symbolic(FrequencyKind::LogPrime)
    }

    pub fn log_log_n() -> Self {
        Self::symbolic(FrequencyKind::LogLogN)
    }

    pub fn log_n_pow(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
        }
        Ok(Self::symbolic(FrequencyKind::LogNPow { alpha }))
    }

    pub fn scaled_log_n(num: i64, den: i64) -> Result<Self> {
        if den == 0 || num == 0 || (num < 0) != (den < 0) {
            return Err(Error::InvalidParameter(format!("c must be a positive rational, got {num}/{den}")));
        }
        Ok(Self::symbolic(FrequencyKind::ScaledLogN { c: Ratio::new(num, den) }))
    }

    pub fn explicit(values: Vec<f64>) -> Result<Self> {
        check_prefix(&values)?;
        if values.is_empty() {
            return Err(Error::InvalidParameter("explicit frequency needs at least one value".into()));
        }
        let n_max = values.len();
        Ok(Frequency { kind: FrequencyKind::Explicit { values }, n_max })
    }

    pub fn rational_combination(basis: Vec<f64>, matrix: Vec<Vec<Ratio<i64>>>) -> Result<Self> {
        if basis.is_empty() || matrix.is_empty() {
            return Err(Error::InvalidParameter("rational combination needs a basis and rows".into()));
        }
        if let Some(b) = basis.iter().find(|b| !(b.is_finite() && **b > 0.0)) {
            return Err(Error::InvalidParameter(format!("basis elements must be positive, got {b}")));
        }
        if let Some(i) = matrix.iter().position(|row| row.len() > basis.len()) {
            return Err(Error::InvalidParameter(format!(
                "row {} has {} entries but the basis has {}",
                i + 1,
                matrix[i].len(),
                basis.len()
            )));
        }
        let values: Vec<f64> = matrix.iter().map(|row| combine(&basis, row)).collect();
        check_prefix(&values)?;
        let n_max = matrix.len();
        Ok(Frequency { kind: FrequencyKind::RationalCombination { basis, matrix }, n_max })
    }

    pub fn with_n_max(mut self, n_max: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::InvalidParameter("n_max must be positive".into()));
        }
        if let Some(len) = self.finite_len() {
            if n_max > len {
                return Err(Error::OutOfRange { requested: n_max, available: len });
            }
        }
        self.n_max = n_max;
        Ok(self)
    }

    pub fn kind(&self) -> &FrequencyKind {
        &self.kind
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Schema tag of the kind (`"log_n"`, `"explicit"`, …).
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            FrequencyKind::LogN => "log_n",
            FrequencyKind::N => "n",
            FrequencyKind::LogNPow { .. } => "log_n_pow",
            FrequencyKind::LogPrime => "log_prime",
            FrequencyKind::ScaledLogN { .. } => "scaled_log_n",
            FrequencyKind::LogLogN => "log_log_n",
            FrequencyKind::Explicit { .. } => "explicit",
            FrequencyKind::RationalCombination { .. } => "rational_combination",
        }
    }

    /// Human-readable description, e.g. `(log n)^2`.
    pub fn describe(&self) -> String {
        match &self.kind {
            FrequencyKind::LogN => "(log n)".into(),
            FrequencyKind::N => "(n)".into(),
            FrequencyKind::LogNPow { alpha } => format!("((log n)^{alpha})"),
            FrequencyKind::LogPrime => "(log p_n)".into(),
            FrequencyKind::ScaledLogN { c } => format!("({c}·log n)"),
            FrequencyKind::LogLogN => "(log log n)".into(),
            FrequencyKind::Explicit { values } => format!("explicit[{} values]", values.len()),
            FrequencyKind::RationalCombination { basis, matrix } => {
                format!("rational combination[{} rows over {} basis elements]", matrix.len(), basis.len())
            }
        }
    }

    /// Number of available terms for finite kinds; `None` for symbolic families.
    pub fn finite_len(&self) -> Option<usize> {
        match &self.kind {
            FrequencyKind::Explicit { values } => Some(values.len()),
            FrequencyKind::RationalCombination { matrix, .. } => Some(matrix.len()),
            _ => None,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        self.finite_len().is_none()
    }

    /// Whether `λ_n` has a closed form evaluable at any index without
    /// materializing the prefix.
    pub fn has_closed_form(&self) -> bool {
        !matches!(
            self.kind,
            FrequencyKind::LogPrime | FrequencyKind::Explicit { .. } | FrequencyKind::RationalCombination { .. }
        )
    }

    fn scale(&self) -> f64 {
        match &self.kind {
            FrequencyKind::ScaledLogN { c } => c.to_f64().unwrap_or(f64::NAN),
            _ => 1.0,
        }
    }

    /// `λ_n` for a closed-form kind (1-based). Finite kinds index their data;
    /// `log p_n` sieves, so prefer [`Frequency::materialize`] in loops.
    pub fn value_at(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidParameter("indices start at 1".into()));
        }
        let x = n as f64;
        Ok(match &self.kind {
            FrequencyKind::LogN => x.ln(),
            FrequencyKind::N => (n - 1) as f64,
            FrequencyKind::LogNPow { alpha } => x.ln().powf(*alpha),
            FrequencyKind::ScaledLogN { .. } => self.scale() * x.ln(),
            FrequencyKind::LogLogN => (x + 2.0).ln().ln(),
            FrequencyKind::LogPrime => {
                let p = primes::first_primes(n as usize);
                (*p.last().expect("n >= 1") as f64).ln()
            }
            FrequencyKind::Explicit { values } => *values
                .get(n as usize - 1)
                .ok_or(Error::OutOfRange { requested: n as usize, available: values.len() })?,
            FrequencyKind::RationalCombination { basis, matrix } => {
                let row = matrix
                    .get(n as usize - 1)
                    .ok_or(Error::OutOfRange { requested: n as usize, available: matrix.len() })?;
                combine(basis, row)
            }
        })
    }

    /// `λ_{n+1} - λ_n` without cancellation for closed-form kinds.
    pub fn gap_at(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidParameter("indices start at 1".into()));
        }
        let x = n as f64;
        Ok(match &self.kind {
            FrequencyKind::LogN => (1.0 / x).ln_1p(),
            FrequencyKind::N => 1.0,
            FrequencyKind::ScaledLogN { .. } => self.scale() * (1.0 / x).ln_1p(),
            FrequencyKind::LogNPow { alpha } => {
                if n == 1 {
                    2f64.ln().powf(*alpha)
                } else {
                    // (log(n+1))^α - (log n)^α = (log n)^α · ((1 + log1p(1/n)/log n)^α - 1)
                    let l = x.ln();
                    let r = (1.0 / x).ln_1p() / l;
                    l.powf(*alpha) * (alpha * r.ln_1p()).exp_m1()
                }
            }
            FrequencyKind::LogLogN => {
                let l = (x + 2.0).ln();
                ((1.0 / (x + 2.0)).ln_1p() / l).ln_1p()
            }
            _ => {
                let v = self.materialize_unchecked((n + 1) as usize)?;
                v[n as usize] - v[n as usize - 1]
            }
        })
    }

    /// `λ_1, …, λ_n`, checked for strict monotonicity and nonnegativity.
    pub fn materialize(&self, n: usize) -> Result<Vec<f64>> {
        let values = self.materialize_unchecked(n)?;
        check_prefix(&values)?;
        Ok(values)
    }

    fn materialize_unchecked(&self, n: usize) -> Result<Vec<f64>> {
        if n > MATERIALIZE_CAP {
            return Err(Error::HorizonExceeded { cap: MATERIALIZE_CAP });
        }
        Ok(match &self.kind {
            FrequencyKind::LogPrime => primes::first_primes(n).into_iter().map(|p| (p as f64).ln()).collect(),
            FrequencyKind::Explicit { values } => {
                if n > values.len() {
                    return Err(Error::OutOfRange { requested: n, available: values.len() });
                }
                values[..n].to_vec()
            }
            FrequencyKind::RationalCombination { basis, matrix } => {
                if n > matrix.len() {
                    return Err(Error::OutOfRange { requested: n, available: matrix.len() });
                }
                matrix[..n].iter().map(|row| combine(basis, row)).collect()
            }
            _ => (1..=n as u64).map(|i| self.value_at(i)).collect::<Result<Vec<_>>>()?,
        })
    }

    /// Number of indices `n` with `λ_n < x`, refusing to count past `cap`.
    pub fn count_below(&self, x: f64, cap: usize) -> Result<usize> {
        if x.is_nan() {
            return Err(Error::InvalidParameter("x is NaN".into()));
        }
        if let Some(len) = self.finite_len() {
            let values = self.materialize_unchecked(len)?;
            return Ok(values.partition_point(|&v| v < x));
        }
        if let FrequencyKind::LogPrime = self.kind {
            if x <= 2f64.ln() {
                return Ok(0);
            }
            let limit = x.exp();
            if !(limit < (cap as f64) * (cap as f64).ln().max(1.0) * 1.3 + 16.0) {
                return Err(Error::HorizonExceeded { cap });
            }
            let primes = primes::primes_up_to(limit.ceil() as u64);
            let count = primes.partition_point(|&p| (p as f64).ln() < x);
            if count > cap {
                return Err(Error::HorizonExceeded { cap });
            }
            return Ok(count);
        }
        // closed-form inverse followed by a local correction
        let guess = match &self.kind {
            FrequencyKind::LogN => x.exp(),
            FrequencyKind::N => x + 1.0,
            FrequencyKind::LogNPow { alpha } => {
                if x <= 0.0 {
                    1.0
                } else {
                    x.powf(1.0 / alpha).exp()
                }
            }
            FrequencyKind::ScaledLogN { .. } => (x / self.scale()).exp(),
            FrequencyKind::LogLogN => x.exp().exp() - 2.0,
            _ => unreachable!("finite kinds handled above"),
        };
        if !(guess < 4.0 * cap as f64 + 8.0) {
            return Err(Error::HorizonExceeded { cap });
        }
        let mut m = (guess.ceil().max(1.0) as u64).saturating_sub(1);
        while m >= 1 && self.value_at(m)? >= x {
            m -= 1;
        }
        while self.value_at(m + 1)? < x {
            m += 1;
        }
        if m as usize > cap {
            return Err(Error::HorizonExceeded { cap });
        }
        Ok(m as usize)
    }

    /// Materialized prefix `{λ_n : λ_n < x}`.
    pub fn prefix_below(&self, x: f64, cap: usize) -> Result<Vec<f64>> {
        let count = self.count_below(x, cap)?;
        self.materialize(count)
    }
}

fn combine(basis: &[f64], row: &[Ratio<i64>]) -> f64 {
    row.iter().zip(basis).filter(|(r, _)| !r.is_zero()).map(|(r, b)| r.to_f64().unwrap_or(f64::NAN) * b).sum()
}

/// Checks `0 <= λ_1 < λ_2 < …` on a materialized prefix.
pub fn check_prefix(values: &[f64]) -> Result<()> {
    for (i, &v) in values.iter().enumerate() {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::NegativeFrequency { index: i + 1, value: v });
        }
        if i > 0 && values[i - 1] >= v {
            return Err(Error::NonMonotone { index: i + 1, prev: values[i - 1], next: v });
        }
    }
    Ok(())
}

pub(crate) fn ratio_is_nonneg_integer(r: &Ratio<i64>) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_n_prefix() {
        let v = Frequency::log_n().materialize(3).unwrap();
        assert_eq!(v[0], 0.0);
        assert!((v[1] - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((v[2] - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn n_family_starts_at_zero() {
        assert_eq!(Frequency::n().materialize(4).unwrap(), vec![0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn log_prime_prefix() {
        let v = Frequency::log_prime().materialize(3).unwrap();
        assert_eq!(v, vec![2f64.ln(), 3f64.ln(), 5f64.ln()]);
    }

    #[test]
    fn explicit_rejects_non_monotone() {
        let err = Frequency::explicit(vec![0.0, 1.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::NonMonotone { index: 3, .. }));
        let err = Frequency::explicit(vec![-1.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::NegativeFrequency { index: 1, .. }));
    }

    #[test]
    fn explicit_out_of_range() {
        let f = Frequency::explicit(vec![0.0, 1.0, 1.0 + 1e-12, 5.0]).unwrap();
        assert_eq!(f.materialize(4).unwrap().len(), 4);
        assert!(matches!(f.materialize(5), Err(Error::OutOfRange { requested: 5, available: 4 })));
    }

    #[test]
    fn rational_combination_checks_order() {
        let third = Ratio::new(1, 3);
        let one = Ratio::from_integer(1);
        let ok = Frequency::rational_combination(vec![1.0, 2f64.sqrt()], vec![vec![third], vec![one], vec![one, one]]);
        assert!(ok.is_ok());
        let bad = Frequency::rational_combination(vec![1.0], vec![vec![one], vec![third]]);
        assert!(matches!(bad, Err(Error::NonMonotone { .. })));
    }

    #[test]
    fn gaps_match_differences() {
        let fams = [
            Frequency::log_n(),
            Frequency::n(),
            Frequency::log_n_pow(0.5).unwrap(),
            Frequency::log_n_pow(2.0).unwrap(),
            Frequency::scaled_log_n(2, 3).unwrap(),
            Frequency::log_log_n(),
        ];
        for f in &fams {
            for n in [1u64, 2, 7, 50, 999] {
                let direct = f.value_at(n + 1).unwrap() - f.value_at(n).unwrap();
                let gap = f.gap_at(n).unwrap();
                assert!((gap - direct).abs() <= 1e-12 * direct.abs().max(1e-3), "{} n={n}", f.describe());
            }
        }
        assert!((Frequency::log_prime().gap_at(2).unwrap() - (5f64.ln() - 3f64.ln())).abs() < 1e-15);
    }

    #[test]
    fn counting_below_threshold() {
        assert_eq!(Frequency::log_n().count_below(3f64.ln() + 1e-9, 100).unwrap(), 3);
        assert_eq!(Frequency::log_n().count_below(3f64.ln(), 100).unwrap(), 2);
        assert_eq!(Frequency::n().count_below(0.0, 100).unwrap(), 0);
        assert_eq!(Frequency::n().count_below(2.5, 100).unwrap(), 3);
        assert_eq!(Frequency::log_prime().count_below(10f64.ln(), 100).unwrap(), 4);
        assert!(matches!(Frequency::log_n().count_below(50.0, 1000), Err(Error::HorizonExceeded { .. })));
    }

    #[test]
    fn invalid_parameters() {
        assert!(Frequency::log_n_pow(0.0).is_err());
        assert!(Frequency::scaled_log_n(-1, 2).is_err());
        assert!(Frequency::scaled_log_n(1, 0).is_err());
        assert!(Frequency::log_n().with_n_max(0).is_err());
    }
}
