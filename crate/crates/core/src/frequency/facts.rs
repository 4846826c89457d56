//! Registered analytic facts about the symbolic families. Everything here is
//! a closed-form statement about the whole sequence, never inferred from a
//! finite prefix.

use super::{Frequency, FrequencyKind};
use num_traits::ToPrimitive;

/// Exact `L(λ) = limsup log(n)/λ_n` for families where it is known in closed
/// form; `+∞` is returned as `f64::INFINITY`.
pub fn exact_l(freq: &Frequency) -> Option<f64> {
    match &freq.kind {
        FrequencyKind::LogN | FrequencyKind::LogPrime => Some(1.0),
        FrequencyKind::N => Some(0.0),
        FrequencyKind::LogNPow { alpha } => Some(if *alpha > 1.0 {
            0.0
        } else if *alpha == 1.0 {
            1.0
        } else {
            f64::INFINITY
        }),
        FrequencyKind::ScaledLogN { c } => Some(1.0 / c.to_f64()?),
        FrequencyKind::LogLogN => Some(f64::INFINITY),
        FrequencyKind::Explicit { .. } | FrequencyKind::RationalCombination { .. } => None,
    }
}

pub(crate) fn exact_l_rule(freq: &Frequency) -> &'static str {
    match &freq.kind {
        FrequencyKind::LogN => "log n / log n = 1",
        FrequencyKind::LogPrime => "prime number theorem: log n / log p_n -> 1",
        FrequencyKind::N => "log n / (n - 1) -> 0",
        FrequencyKind::LogNPow { alpha } if *alpha > 1.0 => "(log n)^(1-alpha) -> 0 for alpha > 1",
        FrequencyKind::LogNPow { alpha } if *alpha == 1.0 => "alpha = 1 is the ordinary frequency",
        FrequencyKind::LogNPow { .. } => "(log n)^(1-alpha) -> infinity for alpha < 1",
        FrequencyKind::ScaledLogN { .. } => "log n / (c log n) = 1/c",
        FrequencyKind::LogLogN => "log n / log log n -> infinity",
        _ => "no closed form",
    }
}

/// Whether `λ_{n+1} - λ_n >= C e^{-(l+δ)λ_n}` holds for some `C > 0`.
pub(crate) fn bohr_condition(freq: &Frequency, exponent: f64) -> Option<(bool, String)> {
    // `exponent` is l + δ; each family has a threshold τ with BC ⇔ exponent >= τ
    let threshold = |tau: f64, why: &str| {
        let holds = exponent >= tau;
        let rule = if holds {
            format!("{why}; l + delta = {exponent} >= {tau}")
        } else {
            format!("{why}; l + delta = {exponent} < {tau}, so C(n) -> 0")
        };
        (holds, rule)
    };
    match &freq.kind {
        FrequencyKind::N => Some((true, "gaps are constantly 1".into())),
        FrequencyKind::LogN => Some(threshold(1.0, "gap log(1 + 1/n) >= e^{-lambda_n}/2")),
        FrequencyKind::ScaledLogN { c } => {
            let c = c.to_f64()?;
            Some(threshold(1.0 / c, "gap c log(1 + 1/n) ~ c e^{-lambda_n / c}"))
        }
        FrequencyKind::LogNPow { alpha } => {
            if *alpha > 1.0 {
                Some((true, "e^{(l+delta)(log n)^alpha} outgrows every power of n for alpha > 1".into()))
            } else if *alpha == 1.0 {
                Some(threshold(1.0, "alpha = 1 is the ordinary frequency"))
            } else {
                Some((
                    false,
                    "for alpha < 1, e^{(l+delta)(log n)^alpha} = n^{o(1)} while the gap is n^{-1+o(1)}".into(),
                ))
            }
        }
        FrequencyKind::LogPrime if exponent >= 1.0 => Some((
            true,
            format!("gap log(p_(n+1)/p_n) >= log(1 + 1/p_n) >= e^{{-lambda_n}}/2; l + delta = {exponent} >= 1"),
        )),
        _ => None,
    }
}

/// `(LC)` for every `δ > 0`.
pub(crate) fn landau_condition_all_delta(freq: &Frequency) -> Option<String> {
    match &freq.kind {
        FrequencyKind::N => Some("gaps are constantly 1".into()),
        FrequencyKind::LogN => Some("(BC) with l = 1 implies (LC)".into()),
        FrequencyKind::LogPrime => Some("(BC) with l = 1 implies (LC)".into()),
        FrequencyKind::ScaledLogN { .. } => Some("(BC) with l = 1/c implies (LC)".into()),
        FrequencyKind::LogNPow { .. } => Some("(log n)^alpha satisfies (LC) for every alpha > 0".into()),
        _ => None,
    }
}

/// Registered ℚ-linear independence of the whole sequence.
pub(crate) fn q_independent_family(freq: &Frequency) -> Option<&'static str> {
    match &freq.kind {
        FrequencyKind::LogPrime => Some("log p_n is Q-linearly independent (unique factorization)"),
        _ => None,
    }
}

/// Families for which nothing beyond `L(λ)` is registered and whose status for
/// Bohr's theorem is open.
pub(crate) fn open_case(freq: &Frequency) -> Option<&'static str> {
    match &freq.kind {
        FrequencyKind::LogLogN => Some("open case: Bohr's theorem for log log n is unknown"),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_l_table() {
        assert_eq!(exact_l(&Frequency::log_n()), Some(1.0));
        assert_eq!(exact_l(&Frequency::log_prime()), Some(1.0));
        assert_eq!(exact_l(&Frequency::n()), Some(0.0));
        assert_eq!(exact_l(&Frequency::log_n_pow(2.0).unwrap()), Some(0.0));
        assert_eq!(exact_l(&Frequency::log_n_pow(0.5).unwrap()), Some(f64::INFINITY));
        assert_eq!(exact_l(&Frequency::scaled_log_n(2, 1).unwrap()), Some(0.5));
        assert_eq!(exact_l(&Frequency::log_log_n()), Some(f64::INFINITY));
        assert_eq!(exact_l(&Frequency::explicit(vec![0.0, 1.0]).unwrap()), None);
    }

    #[test]
    fn bohr_condition_implies_landau_on_every_family() {
        let fams = [
            Frequency::log_n(),
            Frequency::n(),
            Frequency::log_prime(),
            Frequency::log_log_n(),
            Frequency::scaled_log_n(1, 3).unwrap(),
            Frequency::scaled_log_n(5, 2).unwrap(),
            Frequency::log_n_pow(0.5).unwrap(),
            Frequency::log_n_pow(1.0).unwrap(),
            Frequency::log_n_pow(3.0).unwrap(),
        ];
        for f in &fams {
            for e in [0.1, 0.5, 1.0, 2.0, 10.0] {
                if let Some((true, _)) = bohr_condition(f, e) {
                    assert!(landau_condition_all_delta(f).is_some(), "{}", f.describe());
                }
            }
        }
    }
}
