//! The Köthe matrix `A(λ) = (e^{-λ_n/k})`, weighted norms, and the
//! Grothendieck–Pietsch nuclearity test.

use crate::error::{Error, Result};
use crate::frequency::{exact_l, Frequency};
use crate::numeric::fmt12;
use crate::series::CoefficientSource;
use crate::verdict::{ThreeValued, Witness};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq)]
pub struct KoetheMatrix {
    pub freq: Frequency,
}

impl KoetheMatrix {
    pub fn new(freq: Frequency) -> Self {
        KoetheMatrix { freq }
    }

    /// `e^{-λ_n/k}`.
    pub fn entry(&self, n: u64, k: u32) -> Result<f64> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidParameter("n and k start at 1".into()));
        }
        Ok((-self.freq.value_at(n)? / k as f64).exp())
    }

    /// Rows `n = 1..=n_max`, columns `k = 1..=k_max`.
    pub fn block(&self, n_max: usize, k_max: u32) -> Result<Vec<Vec<f64>>> {
        let lambdas = self.freq.materialize(n_max)?;
        Ok(lambdas.iter().map(|&l| (1..=k_max).map(|k| (-l / k as f64).exp()).collect()).collect())
    }

    /// Positivity, `a_{n,k} ≤ 1`, strict increase in `k` when `λ_n > 0`, and
    /// `a_{n,k} = 1` when `λ_n = 0`. Returns the first violation.
    pub fn check_axioms(&self, n_max: usize, k_max: u32) -> Result<Option<(usize, u32)>> {
        let lambdas = self.freq.materialize(n_max)?;
        let block = self.block(n_max, k_max)?;
        for (i, row) in block.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                let ok_here = a > 0.0 && a <= 1.0 && (lambdas[i] > 0.0 || a == 1.0);
                let ok_next = row.get(j + 1).is_none_or(|&b| if lambdas[i] > 0.0 { a < b } else { a == b });
                if !(ok_here && ok_next) {
                    return Ok(Some((i + 1, j as u32 + 1)));
                }
            }
        }
        Ok(None)
    }
}

/// `ℓ_p` or `c_0` over the weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceNorm {
    Lp { p: f64 },
    C0,
}

impl SequenceNorm {
    pub fn lp(p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!("need 1 <= p < inf, got {p}")));
        }
        Ok(SequenceNorm::Lp { p })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightedNorm {
    pub value: f64,
    pub half_value: f64,
    /// Doubling-horizon Cauchy test failed: `|v(H) - v(H/2)| > 10⁻⁶·max(1, v)`.
    pub diverges: bool,
}

/// `‖x‖_k = (Σ_{n≤H} |a_{n,k} x_n|^p)^{1/p}` (or the sup for `c_0`).
pub fn weighted_norm(
    a: &KoetheMatrix,
    x: &CoefficientSource,
    norm: SequenceNorm,
    k: u32,
    horizon: usize,
) -> Result<WeightedNorm> {
    if k == 0 || horizon < 2 {
        return Err(Error::InvalidParameter("need k >= 1 and horizon >= 2".into()));
    }
    let top = x.support_len().map_or(horizon, |len| horizon.min(len));
    let lambdas = a.freq.materialize(top)?;
    let half = horizon / 2;
    let (mut sum, mut max) = (0.0f64, 0.0f64);
    let mut half_value = None;
    let value_of = |sum: f64, max: f64| match norm {
        SequenceNorm::Lp { p: 1.0 } => sum,
        SequenceNorm::Lp { p } => max.max(sum.powf(1.0 / p)),
        SequenceNorm::C0 => max,
    };
    for (i, &l) in lambdas.iter().enumerate() {
        if i == half {
            half_value = Some(value_of(sum, max));
        }
        let m = (-l / k as f64).exp() * x.at(i as u64 + 1, l).norm();
        sum += match norm {
            SequenceNorm::Lp { p } if p != 1.0 => m.powf(p),
            _ => m,
        };
        max = max.max(m);
    }
    let value = value_of(sum, max);
    let half_value = half_value.unwrap_or(value);
    Ok(WeightedNorm { value, half_value, diverges: (value - half_value).abs() > 1e-6 * value.max(1.0) })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GpLevel {
    pub k: u32,
    /// First `m` in `k+1..=4k` whose partial sums pass the doubling test.
    pub m: Option<u32>,
    /// `Σ_{n≤n_max} e^{-λ_n(1/k - 1/m)}` for the reported (or last tried) `m`.
    pub partial_sum: f64,
    pub half_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GpResult {
    pub verdict: ThreeValued,
    pub levels: Vec<GpLevel>,
}

fn gp_level(lambdas: &[f64], k: u32) -> GpLevel {
    let half = lambdas.len() / 2;
    let mut last = None;
    for m in k + 1..=4 * k {
        let w = 1.0 / k as f64 - 1.0 / m as f64;
        let terms = lambdas.iter().map(|&l| (-l * w).exp());
        let half_sum: f64 = terms.clone().take(half).sum();
        let sum: f64 = half_sum + terms.skip(half).sum::<f64>();
        let level = GpLevel { k, m: Some(m), partial_sum: sum, half_sum };
        if (sum - half_sum).abs() <= 1e-6 * sum.max(1.0) {
            return level;
        }
        last = Some(GpLevel { m: None, ..level });
    }
    last.expect("the range k+1..=4k is never empty")
}

/// Nuclearity of `λ_∞(A(λ))`, i.e. of `𝒟_{∞,+}(λ)` and `ℋ_{p,+}(λ)`, via
/// `∀k ∃m>k: Σ_n e^{-λ_n(1/k - 1/m)} < ∞`, which holds exactly when
/// `L(λ) = 0`.
///
/// Families with a closed-form `L(λ)` are decided exactly. Finite data is
/// always `Inconclusive`; the per-level partial sums are reported either way.
pub fn gp_nuclearity_test(freq: &Frequency, k_max: u32, n_max: usize) -> Result<GpResult> {
    if k_max == 0 {
        return Err(Error::InvalidParameter("k_max must be at least 1".into()));
    }
    let n_max = freq.finite_len().map_or(n_max, |len| n_max.min(len));
    let lambdas = freq.materialize(n_max)?;
    let levels: Vec<GpLevel> = (1..=k_max).into_par_iter().map(|k| gp_level(&lambdas, k)).collect();
    let verdict = match exact_l(freq) {
        Some(0.0) => ThreeValued::holds("L(lambda) = 0, so every level k has a summable m = k+1").with_witness(
            Witness::new("m = k + 1 for every k")
                .with_indices((1..=k_max as u64).collect())
                .with_values((2..=k_max + 1).map(f64::from).collect()),
        ),
        Some(l) => {
            let k = if l >= 1.0 || l.is_infinite() { 1.0 } else { (1.0 / l).ceil() };
            ThreeValued::fails(
                format!("L(lambda) = {} > 0", fmt12(l)),
                Witness::new(format!(
                    "at level k = {k} the sum over n of exp(-lambda_n (1/k - 1/m)) diverges for every m > k"
                ))
                .with_indices(vec![k as u64])
                .with_values(vec![l]),
            )
        }
        None => ThreeValued::inconclusive("finite data cannot certify convergence of the level sums"),
    };
    Ok(GpResult { verdict, levels })
}

/// `p_n(x) = max_{m≤n} ‖π_m(x)‖` for 1-based `n`.
pub fn projective_seminorm(values: &[f64], n: usize) -> Result<f64> {
    if n == 0 || n > values.len() {
        return Err(Error::OutOfRange { requested: n, available: values.len() });
    }
    Ok(values[..n].iter().copied().fold(f64::NEG_INFINITY, f64::max))
}

/// CSV with columns `n, k, entry`.
pub fn block_csv(block: &[Vec<f64>]) -> String {
    let mut out = String::from("n,k,entry\n");
    for (i, row) in block.iter().enumerate() {
        for (j, &a) in row.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", i + 1, j + 1, fmt12(a)));
        }
    }
    out
}

/// CSV with columns `k, m, partial_sum, half_sum`.
pub fn gp_csv(levels: &[GpLevel]) -> String {
    let mut out = String::from("k,m,partial_sum,half_sum\n");
    for l in levels {
        let m = l.m.map(|m| m.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{},{}\n", l.k, m, fmt12(l.partial_sum), fmt12(l.half_sum)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn entries() {
        let a = KoetheMatrix::new(Frequency::n());
        assert_eq!(a.entry(1, 3).unwrap(), 1.0);
        assert_eq!(a.entry(2, 1).unwrap(), (-1.0f64).exp());
        let b = KoetheMatrix::new(Frequency::log_n());
        assert!((b.entry(10, 2).unwrap() - 10f64.powf(-0.5)).abs() < 1e-15);
        assert_eq!(b.check_axioms(200, 8).unwrap(), None);
    }

    #[test]
    fn weighted_norm_examples() {
        let a = KoetheMatrix::new(Frequency::n());
        let w = weighted_norm(&a, &CoefficientSource::ones(), SequenceNorm::Lp { p: 1.0 }, 1, 1000).unwrap();
        let e = (-1.0f64).exp();
        assert!((w.value - (1.0 + e / (1.0 - e))).abs() < 1e-10);
        assert!(!w.diverges);
        let mut unit = vec![Complex64::new(0.0, 0.0); 7];
        unit[6] = Complex64::new(1.0, 0.0);
        for norm in [SequenceNorm::Lp { p: 1.0 }, SequenceNorm::Lp { p: 2.5 }, SequenceNorm::C0] {
            let v = weighted_norm(&a, &CoefficientSource::explicit(unit.clone()), norm, 3, 100).unwrap();
            assert_eq!(v.value, a.entry(7, 3).unwrap());
        }
        let h = KoetheMatrix::new(Frequency::log_n());
        assert!(
            weighted_norm(&h, &CoefficientSource::ones(), SequenceNorm::Lp { p: 1.0 }, 1, 10_000).unwrap().diverges
        );
    }

    #[test]
    fn gp_families() {
        assert!(gp_nuclearity_test(&Frequency::n(), 4, 1000).unwrap().verdict.is_holds());
        let f = gp_nuclearity_test(&Frequency::log_n(), 4, 1000).unwrap();
        assert!(f.verdict.is_fails());
        assert_eq!(f.verdict.witness.unwrap().indices, vec![1]);
        assert!(gp_nuclearity_test(&Frequency::log_n_pow(2.0).unwrap(), 4, 1000).unwrap().verdict.is_holds());
        let s = gp_nuclearity_test(&Frequency::scaled_log_n(2, 1).unwrap(), 4, 1000).unwrap();
        assert_eq!(s.verdict.witness.unwrap().indices, vec![2]);
        let e = Frequency::explicit((0..500).map(|n| n as f64).collect()).unwrap();
        let r = gp_nuclearity_test(&e, 3, 500).unwrap();
        assert!(r.verdict.is_inconclusive());
        assert_eq!(r.levels[0].m, Some(2));
    }

    #[test]
    fn projective() {
        assert_eq!(projective_seminorm(&[1.0, 3.0, 2.0], 3).unwrap(), 3.0);
        assert_eq!(projective_seminorm(&[1.0, 3.0, 2.0], 1).unwrap(), 1.0);
        assert!(projective_seminorm(&[1.0], 2).is_err());
    }
}
