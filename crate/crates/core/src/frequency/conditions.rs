//! `L(λ)`, the gap conditions (BC) and (LC), and the derived verdicts on
//! Bohr's theorem and hypercontractivity.

use super::facts::{self, exact_l};
use super::{bohr_decomposition, Frequency, FrequencyKind};
use crate::abscissa::{AbscissaEstimate, AbscissaValue};
use crate::error::{Error, Result};
use crate::numeric::fmt12;
use crate::verdict::{ThreeValued, Witness};
use num_traits::Zero;

/// Above this many indices closed-form families are sampled instead of
/// scanned exhaustively.
const EXHAUSTIVE_LIMIT: usize = 2_000_000;
const SAMPLES: usize = 20_000;

/// Trailing-window constants below this count as decayed.
pub const DECAY_THRESHOLD: f64 = 1e-3;

/// Indices to examine in `[lo, hi]`: all of them, or an evenly spaced sample
/// including both ends.
fn window_indices(lo: u64, hi: u64, exhaustive: bool) -> Vec<u64> {
    let len = hi - lo + 1;
    if exhaustive || len as usize <= SAMPLES {
        (lo..=hi).collect()
    } else {
        let step = (len - 1) as f64 / (SAMPLES - 1) as f64;
        let mut out: Vec<u64> = (0..SAMPLES).map(|i| lo + (i as f64 * step).round() as u64).collect();
        out.dedup();
        out
    }
}

/// Values `λ_n` at the requested indices.
fn values_at(freq: &Frequency, indices: &[u64]) -> Result<Vec<f64>> {
    if freq.has_closed_form() {
        indices.iter().map(|&n| freq.value_at(n)).collect()
    } else {
        let top = *indices.last().unwrap_or(&0) as usize;
        let all = freq.materialize(top)?;
        Ok(indices.iter().map(|&n| all[n as usize - 1]).collect())
    }
}

fn gaps_at(freq: &Frequency, indices: &[u64]) -> Result<Vec<f64>> {
    if freq.has_closed_form() {
        indices.iter().map(|&n| freq.gap_at(n)).collect()
    } else {
        let top = *indices.last().unwrap_or(&0) as usize;
        let all = freq.materialize(top + 1)?;
        Ok(indices.iter().map(|&n| all[n as usize] - all[n as usize - 1]).collect())
    }
}

fn effective_n_max(freq: &Frequency, n_max: usize) -> usize {
    freq.finite_len().map_or(n_max, |len| n_max.min(len))
}

/// Estimates `L(λ) = limsup log(n)/λ_n` by the maximum of `log(n)/λ_n` over
/// the trailing `window` indices up to `n_max` (indices with `λ_n = 0` are
/// skipped). Families with a closed-form limsup also report it in `exact`.
pub fn estimate_l(freq: &Frequency, n_max: usize, window: usize) -> Result<AbscissaEstimate> {
    let n_max = effective_n_max(freq, n_max);
    if window < 2 || n_max < window {
        return Err(Error::InvalidParameter(format!(
            "need n_max >= window >= 2, got n_max = {n_max}, window = {window}"
        )));
    }
    let lo = (n_max - window + 1) as u64;
    let hi = n_max as u64;
    let exhaustive = !freq.has_closed_form() || n_max <= EXHAUSTIVE_LIMIT;
    let indices = window_indices(lo, hi, exhaustive);
    let lambdas = values_at(freq, &indices)?;
    let scan: Vec<(f64, f64)> = indices
        .iter()
        .zip(&lambdas)
        .filter(|(_, &l)| l > 0.0)
        .map(|(&n, &l)| (n as f64, (n as f64).ln() / l))
        .collect();
    if scan.is_empty() {
        return Err(Error::Degenerate);
    }
    let numeric = scan.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let exact = exact_l(freq);
    let confidence = match exact {
        Some(v) => ThreeValued::holds(format!("L = {}: {}", fmt12(v), facts::exact_l_rule(freq))),
        None => ThreeValued::inconclusive("finite data: the limsup is not determined by a prefix"),
    };
    Ok(AbscissaEstimate {
        value: AbscissaValue::Finite(numeric),
        exact,
        truncation_points: vec![lo as f64, hi as f64],
        scan,
        confidence,
    })
}

/// Empirical gap constants `log C(n)` on `[1, n_max - 1]` and on the trailing
/// window, for the bound `e^{-weight(λ_n)}`.
struct GapScan {
    log_c_min: f64,
    argmin: u64,
    log_c_trailing_max: f64,
    window: (u64, u64),
}

fn scan_gaps<W: Fn(f64) -> f64>(freq: &Frequency, n_max: usize, weight: W) -> Result<GapScan> {
    let n_max = effective_n_max(freq, n_max);
    if n_max < 2 {
        return Err(Error::InvalidParameter("need at least two terms to measure gaps".into()));
    }
    let hi = (n_max - 1) as u64;
    let window_lo = (hi - hi / 10).max(1);
    let exhaustive = !freq.has_closed_form() || n_max <= EXHAUSTIVE_LIMIT;
    let mut all = if exhaustive {
        (1..=hi).collect::<Vec<_>>()
    } else {
        // log-spaced sample of the whole range plus the trailing window
        let mut v: Vec<u64> =
            (0..SAMPLES).map(|i| ((hi as f64).ln() * i as f64 / (SAMPLES - 1) as f64).exp().round() as u64).collect();
        v.extend(window_indices(window_lo, hi, false));
        v.sort_unstable();
        v.dedup();
        v
    };
    all.retain(|&n| n >= 1 && n <= hi);
    let lambdas = values_at(freq, &all)?;
    let gaps = gaps_at(freq, &all)?;
    let mut out =
        GapScan { log_c_min: f64::INFINITY, argmin: 1, log_c_trailing_max: f64::NEG_INFINITY, window: (window_lo, hi) };
    for ((&n, &l), &g) in all.iter().zip(&lambdas).zip(&gaps) {
        let log_c = g.ln() + weight(l);
        if log_c < out.log_c_min {
            out.log_c_min = log_c;
            out.argmin = n;
        }
        if n >= window_lo && log_c > out.log_c_trailing_max {
            out.log_c_trailing_max = log_c;
        }
    }
    Ok(out)
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")))
    }
}

fn gap_witness(scan: &GapScan, what: &str) -> Witness {
    Witness::new(format!(
        "{what}: smallest C(n) = {} at n = {}; largest C(n) on the trailing window [{}, {}] is {}",
        fmt12(scan.log_c_min.exp()),
        scan.argmin,
        scan.window.0,
        scan.window.1,
        fmt12(scan.log_c_trailing_max.exp())
    ))
    .with_indices(vec![scan.argmin, scan.window.0, scan.window.1])
    .with_values(vec![scan.log_c_min.exp(), scan.log_c_trailing_max.exp()])
}

/// `(BC)` with the given `l` and `δ`: does `λ_{n+1} - λ_n >= C e^{-(l+δ)λ_n}`
/// hold for some `C > 0`?
///
/// A registered family fact decides `Holds`. `Fails` additionally needs the
/// empirical constant `C(n) = (λ_{n+1} - λ_n) e^{(l+δ)λ_n}` to stay below
/// [`DECAY_THRESHOLD`] across the trailing tenth of `[1, n_max)`. Anything
/// else is `Inconclusive` with the empirical constant attached.
pub fn check_bohr_condition(freq: &Frequency, l: f64, delta: f64, n_max: usize) -> Result<ThreeValued> {
    check_positive("l", l)?;
    check_positive("delta", delta)?;
    let exponent = l + delta;
    let scan = scan_gaps(freq, n_max, |lam| exponent * lam)?;
    let witness = gap_witness(&scan, "(BC)");
    Ok(match facts::bohr_condition(freq, exponent) {
        _ if !freq.is_symbolic() => {
            ThreeValued::inconclusive("(BC) is asymptotic; finite data cannot decide it").with_witness(witness)
        }
        Some((true, rule)) => ThreeValued::holds(format!("(BC): {rule}")).with_witness(witness),
        Some((false, rule)) if scan.log_c_trailing_max < DECAY_THRESHOLD.ln() => {
            ThreeValued::fails(format!("(BC): {rule}"), witness)
        }
        Some((false, rule)) => ThreeValued::inconclusive(format!(
            "(BC): {rule}, but C(n) has not decayed below {} by n_max",
            fmt12(DECAY_THRESHOLD)
        ))
        .with_witness(witness),
        None => ThreeValued::inconclusive("(BC): no registered fact; empirical constant only").with_witness(witness),
    })
}

/// `(LC)` with the given `δ`: does `λ_{n+1} - λ_n >= C e^{-e^{δλ_n}}` hold for
/// some `C > 0`? Only registered family facts produce a definite verdict.
pub fn check_landau_condition(freq: &Frequency, delta: f64, n_max: usize) -> Result<ThreeValued> {
    check_positive("delta", delta)?;
    let scan = scan_gaps(freq, n_max, |lam| (delta * lam).exp())?;
    let witness = gap_witness(&scan, "(LC)");
    if !freq.is_symbolic() {
        return Ok(ThreeValued::inconclusive("(LC) is asymptotic; finite data cannot decide it").with_witness(witness));
    }
    Ok(match facts::landau_condition_all_delta(freq) {
        Some(rule) => ThreeValued::holds(format!("(LC): {rule}")).with_witness(witness),
        None => ThreeValued::inconclusive("(LC): no registered fact; empirical constant only").with_witness(witness),
    })
}

/// ℚ-linear independence: registered family facts, exact structure of a
/// rational combination, or an exact dependency (`λ_1 = 0`, `λ_4 = 2λ_2`, …)
/// as a refutation.
pub fn q_linearly_independent(freq: &Frequency) -> ThreeValued {
    if let Some(rule) = facts::q_independent_family(freq) {
        return ThreeValued::holds(rule);
    }
    let zero_first = || {
        ThreeValued::fails(
            "a sequence containing 0 is Q-linearly dependent",
            Witness::new("lambda_1 = 0").with_indices(vec![1]),
        )
    };
    match freq.kind() {
        FrequencyKind::LogN | FrequencyKind::ScaledLogN { .. } | FrequencyKind::LogNPow { .. } | FrequencyKind::N => {
            zero_first()
        }
        FrequencyKind::Explicit { values } if values[0] == 0.0 => zero_first(),
        FrequencyKind::RationalCombination { matrix, .. } => {
            let rows: Vec<Vec<(usize, _)>> = matrix
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, *v)).collect())
                .collect();
            if let Some(i) = rows.iter().position(|r| r.is_empty()) {
                return ThreeValued::fails(
                    "a sequence containing 0 is Q-linearly dependent",
                    Witness::new(format!("lambda_{} = 0", i + 1)).with_indices(vec![i as u64 + 1]),
                );
            }
            // two rows that are rational multiples of each other
            for i in 0..rows.len() {
                for j in i + 1..rows.len() {
                    if proportional(&rows[i], &rows[j]) {
                        return ThreeValued::fails(
                            "two rows are rational multiples of each other",
                            Witness::new(format!("lambda_{} and lambda_{} are Q-proportional", i + 1, j + 1))
                                .with_indices(vec![i as u64 + 1, j as u64 + 1]),
                        );
                    }
                }
            }
            let mut cols: Vec<usize> = rows.iter().filter(|r| r.len() == 1).map(|r| r[0].0).collect();
            let single = cols.len() == rows.len();
            cols.sort_unstable();
            cols.dedup();
            if single && cols.len() == rows.len() {
                ThreeValued::holds("rows are single-column multiples of distinct elements of the declared basis")
            } else {
                ThreeValued::inconclusive("rows mix basis elements; independence not decided")
            }
        }
        _ => ThreeValued::inconclusive("no exact structure to decide Q-linear independence"),
    }
}

fn proportional(a: &[(usize, num_rational::Ratio<i64>)], b: &[(usize, num_rational::Ratio<i64>)]) -> bool {
    if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.0 != y.0) {
        return false;
    }
    let factor = b[0].1 / a[0].1;
    a.iter().zip(b).all(|(x, y)| y.1 == x.1 * factor)
}

/// Bohr's theorem via the three testable sufficient conditions:
/// ℚ-linear independence, `L(λ) = 0`, or `(LC)`. Never returns `Fails`.
pub fn classify_bohr_theorem(freq: &Frequency) -> ThreeValued {
    let qli = q_linearly_independent(freq);
    if qli.is_holds() {
        return ThreeValued::holds(format!("Q-linearly independent: {}", qli.rule));
    }
    if exact_l(freq) == Some(0.0) {
        return ThreeValued::holds(format!("L(lambda) = 0: {}", facts::exact_l_rule(freq)));
    }
    if let Some(rule) = facts::landau_condition_all_delta(freq) {
        return ThreeValued::holds(format!("(LC) holds: {rule}"));
    }
    if let Some(rule) = facts::open_case(freq) {
        return ThreeValued::inconclusive(rule);
    }
    ThreeValued::inconclusive("no testable sufficient condition applies")
}

/// Hypercontractivity from `L(λ) = 0`, ℚ-linear independence, or a
/// natural-type decomposition with positive basis tending to infinity.
pub fn check_hypercontractive(freq: &Frequency) -> ThreeValued {
    if exact_l(freq) == Some(0.0) {
        return ThreeValued::holds("L(lambda) = 0 implies hypercontractive");
    }
    let qli = q_linearly_independent(freq);
    if qli.is_holds() {
        return ThreeValued::holds(format!("Q-linearly independent implies hypercontractive: {}", qli.rule));
    }
    let natural = match freq.kind() {
        // small horizon: the family-level shape of the decomposition is what matters
        FrequencyKind::LogN | FrequencyKind::ScaledLogN { .. } | FrequencyKind::N => {
            bohr_decomposition(&freq.clone().with_n_max(64).expect("symbolic")).ok()
        }
        FrequencyKind::RationalCombination { .. } => bohr_decomposition(freq).ok(),
        _ => None,
    };
    match natural {
        Some(d) if d.natural_type && d.basis.iter().all(|b| b.value() > 0.0) => {
            let tail = if d.infinite_basis { "; basis log-primes tend to infinity" } else { "; finite basis" };
            ThreeValued::holds(format!("natural-type Bohr decomposition with positive basis{tail}"))
        }
        _ => ThreeValued::inconclusive("no sufficient condition for hypercontractivity applies"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Verdict;

    #[test]
    fn l_estimates_for_families() {
        let e = estimate_l(&Frequency::log_n(), 100_000, 10_000).unwrap();
        assert_eq!(e.exact, Some(1.0));
        assert!((e.value.representative() - 1.0).abs() < 0.05);
        let e = estimate_l(&Frequency::n(), 100_000, 10_000).unwrap();
        assert_eq!(e.exact, Some(0.0));
        assert!(e.value.representative() < 0.05);
        let e = estimate_l(&Frequency::log_n_pow(0.5).unwrap(), 100_000, 10_000).unwrap();
        assert_eq!(e.exact, Some(f64::INFINITY));
        let e = estimate_l(&Frequency::scaled_log_n(2, 1).unwrap(), 100_000, 10_000).unwrap();
        assert_eq!(e.exact, Some(0.5));
        assert!((e.value.representative() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn l_estimate_preconditions() {
        assert!(estimate_l(&Frequency::log_n(), 10, 20).is_err());
        assert!(estimate_l(&Frequency::log_n(), 10, 1).is_err());
        let f = Frequency::explicit(vec![0.0, 1.0, 2.0]).unwrap();
        let e = estimate_l(&f, 3, 2).unwrap();
        assert!(e.confidence.is_inconclusive());
        assert!(e.exact.is_none());
        let zero = Frequency::explicit(vec![0.0]).unwrap();
        assert!(estimate_l(&zero, 1, 2).is_err());
    }

    #[test]
    fn bohr_condition_examples() {
        let v = check_bohr_condition(&Frequency::log_n(), 1.0, 0.1, 10_000).unwrap();
        assert_eq!(v.verdict, Verdict::Holds);
        let v = check_bohr_condition(&Frequency::n(), 0.3, 0.1, 10_000).unwrap();
        assert_eq!(v.verdict, Verdict::Holds);
        let sqrt = Frequency::log_n_pow(0.5).unwrap();
        for l in [0.5, 1.0, 2.0] {
            let v = check_bohr_condition(&sqrt, l, 0.1, 1_000_000_000_000).unwrap();
            assert_eq!(v.verdict, Verdict::Fails, "l = {l}: {v}");
            assert!(v.witness.is_some());
        }
    }

    #[test]
    fn bohr_condition_fails_needs_decay() {
        // l large: the constant has not decayed by 10^5, so no refutation yet
        let v = check_bohr_condition(&Frequency::log_n_pow(0.5).unwrap(), 4.0, 0.1, 100_000).unwrap();
        assert_eq!(v.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn landau_condition_examples() {
        for alpha in [0.25, 0.5, 1.0, 2.0, 3.0] {
            let f = Frequency::log_n_pow(alpha).unwrap();
            assert!(check_landau_condition(&f, 0.5, 10_000).unwrap().is_holds());
        }
        assert!(check_landau_condition(&Frequency::log_n(), 0.1, 10_000).unwrap().is_holds());
        let e = Frequency::explicit(vec![0.0, 1.0, 1.0 + 1e-12, 5.0]).unwrap();
        assert!(check_landau_condition(&e, 0.5, 4).unwrap().is_inconclusive());
        assert!(check_bohr_condition(&e, 1.0, 0.5, 4).unwrap().is_inconclusive());
    }

    #[test]
    fn bohr_theorem_classification() {
        assert!(classify_bohr_theorem(&Frequency::log_prime()).rule.contains("Q-linearly"));
        assert!(classify_bohr_theorem(&Frequency::n()).rule.contains("L(lambda) = 0"));
        assert!(classify_bohr_theorem(&Frequency::log_n_pow(0.5).unwrap()).rule.contains("(LC)"));
        assert!(classify_bohr_theorem(&Frequency::log_log_n()).is_inconclusive());
        assert!(classify_bohr_theorem(&Frequency::explicit(vec![0.5, 1.0]).unwrap()).is_inconclusive());
    }

    #[test]
    fn independence_refutations_carry_witnesses() {
        let v = q_linearly_independent(&Frequency::log_n());
        assert!(v.is_fails());
        assert_eq!(v.witness.unwrap().indices, vec![1]);
        let one = num_rational::Ratio::from_integer(1);
        let two = num_rational::Ratio::from_integer(2);
        let f = Frequency::rational_combination(vec![1.0, 2f64.sqrt()], vec![vec![one], vec![two]]).unwrap();
        assert_eq!(q_linearly_independent(&f).witness.unwrap().indices, vec![1, 2]);
        let g = Frequency::rational_combination(vec![1.0, 2f64.sqrt()], vec![vec![one], vec![0.into(), one]]).unwrap();
        assert!(q_linearly_independent(&g).is_holds());
    }

    #[test]
    fn hypercontractivity() {
        assert!(check_hypercontractive(&Frequency::log_n()).is_holds());
        assert!(check_hypercontractive(&Frequency::log_prime()).is_holds());
        assert!(check_hypercontractive(&Frequency::n()).is_holds());
        assert!(check_hypercontractive(&Frequency::log_n_pow(2.0).unwrap()).is_holds());
        assert!(check_hypercontractive(&Frequency::log_n_pow(0.5).unwrap()).is_inconclusive());
        assert!(check_hypercontractive(&Frequency::explicit(vec![0.3, 1.7, 2.2]).unwrap()).is_inconclusive());
    }
}
