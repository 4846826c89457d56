//! Bohr decompositions `λ = R·B`: a basis `B` and a rational matrix `R` with
//! finitely supported rows.

use super::{ratio_is_nonneg_integer, Frequency, FrequencyKind};
use crate::error::{Error, Result};
use crate::primes;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BasisElement {
    /// An exact positive rational.
    Rational { value: [i64; 2] },
    /// `scale · log(prime)`, kept symbolic.
    LogPrime { prime: u64, scale: [i64; 2] },
    /// A real given only in floating point.
    Real { value: f64 },
}

impl BasisElement {
    pub fn value(&self) -> f64 {
        match self {
            BasisElement::Rational { value } => value[0] as f64 / value[1] as f64,
            BasisElement::LogPrime { prime, scale } => scale[0] as f64 / scale[1] as f64 * (*prime as f64).ln(),
            BasisElement::Real { value } => *value,
        }
    }
}

/// Sparse row: `(column, entry)` pairs with 0-based columns, increasing.
pub type Row = Vec<(usize, Ratio<i64>)>;

/// Exact value of `Σ_k r_k b_k` when the arithmetic allows it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactValue {
    Zero,
    Rational(Ratio<i128>),
    /// `scale · log(numer / denom)` with `numer/denom` in lowest terms, `≠ 1`.
    ScaledLog {
        scale: Ratio<i64>,
        numer: u128,
        denom: u128,
    },
}

impl ExactValue {
    fn scaled_log(scale: Ratio<i64>, numer: u128, denom: u128) -> Self {
        let g = gcd(numer, denom);
        let (numer, denom) = (numer / g, denom / g);
        if numer == denom || scale.is_zero() {
            ExactValue::Zero
        } else {
            ExactValue::ScaledLog { scale, numer, denom }
        }
    }

    fn rational(r: Ratio<i128>) -> Self {
        if r.is_zero() {
            ExactValue::Zero
        } else {
            ExactValue::Rational(r)
        }
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BohrDecomposition {
    /// Frequency kind this decomposition was built for.
    pub source: String,
    pub basis: Vec<BasisElement>,
    #[serde(serialize_with = "ser_rows")]
    pub rows: Vec<Row>,
    /// All entries are nonnegative integers.
    pub natural_type: bool,
    /// The family's basis continues beyond the listed elements.
    pub infinite_basis: bool,
}

fn ser_rows<S: serde::Serializer>(rows: &[Row], s: S) -> std::result::Result<S::Ok, S::Error> {
    let plain: Vec<Vec<(usize, [i64; 2])>> =
        rows.iter().map(|r| r.iter().map(|(c, v)| (c + 1, [*v.numer(), *v.denom()])).collect()).collect();
    plain.serialize(s)
}

impl BohrDecomposition {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row of `λ_n` (1-based).
    pub fn row(&self, n: usize) -> Option<&Row> {
        n.checked_sub(1).and_then(|i| self.rows.get(i))
    }

    /// Largest 1-based column used by row `n`, 0 for an empty row.
    pub fn row_width(&self, n: usize) -> Option<usize> {
        self.row(n).map(|r| r.last().map_or(0, |(c, _)| c + 1))
    }

    /// `Σ_k r_k^n b_k` in floating point.
    pub fn value(&self, n: usize) -> Option<f64> {
        self.row(n).map(|r| r.iter().map(|(c, v)| v.to_f64().unwrap_or(f64::NAN) * self.basis[*c].value()).sum())
    }

    /// `Σ_k r_k^n b_k` in exact arithmetic: rationals over rational bases, or a
    /// single scaled logarithm over log-prime bases with a common scale.
    /// `None` when the row mixes representations or overflows.
    pub fn exact_value(&self, n: usize) -> Option<ExactValue> {
        let row = self.row(n)?;
        if row.is_empty() {
            return Some(ExactValue::Zero);
        }
        let first = &self.basis[row[0].0];
        match first {
            BasisElement::Rational { .. } => {
                let mut acc = Ratio::<i128>::zero();
                for (c, r) in row {
                    let BasisElement::Rational { value } = &self.basis[*c] else {
                        return None;
                    };
                    let b = Ratio::new(value[0] as i128, value[1] as i128);
                    let r = Ratio::new(*r.numer() as i128, *r.denom() as i128);
                    acc = acc.checked_add(&r.checked_mul(&b)?)?;
                }
                Some(ExactValue::rational(acc))
            }
            BasisElement::LogPrime { scale, .. } => {
                let scale = *scale;
                let (mut numer, mut denom) = (1u128, 1u128);
                for (c, r) in row {
                    let BasisElement::LogPrime { prime, scale: s } = &self.basis[*c] else {
                        return None;
                    };
                    if *s != scale || !r.is_integer() {
                        return None;
                    }
                    let e = r.to_integer();
                    let power = (*prime as u128).checked_pow(e.unsigned_abs().try_into().ok()?)?;
                    if e > 0 {
                        numer = numer.checked_mul(power)?;
                    } else {
                        denom = denom.checked_mul(power)?;
                    }
                }
                Some(ExactValue::scaled_log(Ratio::new(scale[0], scale[1]), numer, denom))
            }
            BasisElement::Real { .. } => None,
        }
    }
}

/// Exact value of `λ_n` for kinds that carry one, independent of any
/// decomposition.
pub fn exact_frequency_value(freq: &Frequency, n: u64) -> Option<ExactValue> {
    match freq.kind() {
        FrequencyKind::LogN => Some(ExactValue::scaled_log(Ratio::from_integer(1), n as u128, 1)),
        FrequencyKind::ScaledLogN { c } => Some(ExactValue::scaled_log(*c, n as u128, 1)),
        FrequencyKind::N => Some(ExactValue::rational(Ratio::from_integer(n as i128 - 1))),
        _ => None,
    }
}

/// Decomposition using the frequency's own `n_max` as horizon.
pub fn bohr_decomposition(freq: &Frequency) -> Result<BohrDecomposition> {
    bohr_decomposition_to(freq, freq.n_max())
}

/// Decomposition of `λ_1, …, λ_horizon`.
pub fn bohr_decomposition_to(freq: &Frequency, horizon: usize) -> Result<BohrDecomposition> {
    let source = freq.kind_name().to_string();
    let one = [1i64, 1];
    match freq.kind() {
        FrequencyKind::LogN | FrequencyKind::ScaledLogN { .. } => {
            let scale = match freq.kind() {
                FrequencyKind::ScaledLogN { c } => [*c.numer(), *c.denom()],
                _ => one,
            };
            let primes = primes::primes_up_to(horizon as u64);
            let rows = (1..=horizon as u64)
                .map(|n| {
                    primes::factorize(n)
                        .into_iter()
                        .map(|(p, e)| {
                            let col = primes.binary_search(&p).expect("factor below horizon is sieved");
                            (col, Ratio::from_integer(e as i64))
                        })
                        .collect()
                })
                .collect();
            Ok(BohrDecomposition {
                source,
                basis: primes.into_iter().map(|prime| BasisElement::LogPrime { prime, scale }).collect(),
                rows,
                natural_type: true,
                infinite_basis: true,
            })
        }
        FrequencyKind::N => Ok(BohrDecomposition {
            source,
            basis: vec![BasisElement::Rational { value: one }],
            rows: (1..=horizon as i64)
                .map(|n| if n == 1 { Vec::new() } else { vec![(0, Ratio::from_integer(n - 1))] })
                .collect(),
            natural_type: true,
            infinite_basis: false,
        }),
        FrequencyKind::LogPrime => Ok(BohrDecomposition {
            source,
            basis: primes::first_primes(horizon)
                .into_iter()
                .map(|prime| BasisElement::LogPrime { prime, scale: one })
                .collect(),
            rows: (0..horizon).map(|j| vec![(j, Ratio::from_integer(1))]).collect(),
            natural_type: true,
            infinite_basis: true,
        }),
        FrequencyKind::RationalCombination { basis, matrix } => {
            let rows: Vec<Row> = matrix
                .iter()
                .take(horizon)
                .map(|row| row.iter().enumerate().filter(|(_, r)| !r.is_zero()).map(|(c, r)| (c, *r)).collect())
                .collect();
            // the constructor already checked strict increase of R·B
            let natural_type = matrix.iter().flatten().all(ratio_is_nonneg_integer);
            Ok(BohrDecomposition {
                source,
                basis: basis.iter().map(|&value| BasisElement::Real { value }).collect(),
                rows,
                natural_type,
                infinite_basis: false,
            })
        }
        FrequencyKind::LogNPow { .. } | FrequencyKind::LogLogN | FrequencyKind::Explicit { .. } => {
            Err(Error::UnsupportedKind(format!("{}: no exact Bohr decomposition is available", freq.kind_name())))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_n_row_is_prime_exponent_vector() {
        let d = bohr_decomposition_to(&Frequency::log_n(), 12).unwrap();
        assert_eq!(d.row(12).unwrap(), &vec![(0, Ratio::from_integer(2)), (1, Ratio::from_integer(1))]);
        assert!(d.row(1).unwrap().is_empty());
        assert!(d.natural_type);
        assert_eq!(d.exact_value(12), exact_frequency_value(&Frequency::log_n(), 12));
    }

    #[test]
    fn log_prime_is_identity() {
        let d = bohr_decomposition_to(&Frequency::log_prime(), 6).unwrap();
        for n in 1..=6 {
            assert_eq!(d.row(n).unwrap(), &vec![(n - 1, Ratio::from_integer(1))]);
        }
    }

    #[test]
    fn n_family_over_unit_basis() {
        let d = bohr_decomposition_to(&Frequency::n(), 8).unwrap();
        // λ_6 = 5
        assert_eq!(d.row(6).unwrap(), &vec![(0, Ratio::from_integer(5))]);
        assert_eq!(d.exact_value(6), Some(ExactValue::Rational(Ratio::from_integer(5))));
        assert_eq!(d.exact_value(1), Some(ExactValue::Zero));
        assert_eq!(d.exact_value(6), exact_frequency_value(&Frequency::n(), 6));
    }

    #[test]
    fn scaled_log_keeps_scale() {
        let f = Frequency::scaled_log_n(2, 1).unwrap();
        let d = bohr_decomposition_to(&f, 30).unwrap();
        for n in 1..=30u64 {
            assert_eq!(d.exact_value(n as usize), exact_frequency_value(&f, n));
            assert!((d.value(n as usize).unwrap() - f.value_at(n).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn rational_combination_echo_and_natural_flag() {
        let one = Ratio::from_integer(1);
        let f = Frequency::rational_combination(vec![1.0, 2f64.sqrt()], vec![vec![one], vec![one, one]]).unwrap();
        let d = bohr_decomposition(&f).unwrap();
        assert!(d.natural_type);
        assert!((d.value(2).unwrap() - (1.0 + 2f64.sqrt())).abs() < 1e-15);
        let half = Ratio::new(1, 2);
        let g = Frequency::rational_combination(vec![1.0], vec![vec![half], vec![one]]).unwrap();
        assert!(!bohr_decomposition(&g).unwrap().natural_type);
    }

    #[test]
    fn unsupported_kinds() {
        for f in
            [Frequency::log_n_pow(0.5).unwrap(), Frequency::log_log_n(), Frequency::explicit(vec![0.0, 1.0]).unwrap()]
        {
            assert!(matches!(bohr_decomposition(&f), Err(Error::UnsupportedKind(_))));
        }
    }
}
