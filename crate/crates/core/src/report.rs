//! Structural verdicts about `𝒟_{∞,+}(λ)` and `ℋ_{p,+}(λ)`, each derived from
//! the computable facts about `λ` by a named rule.

use crate::error::{Error, Result};
use crate::frequency::{check_hypercontractive, classify_bohr_theorem, exact_l, q_linearly_independent, Frequency};
use crate::koethe::{weighted_norm, KoetheMatrix, SequenceNorm};
use crate::numeric::fmt12;
use crate::series::DirichletSeries;
use crate::spaces::{seminorm_ladder, AdmissibleSpace};
use crate::verdict::{ThreeValued, Verdict, Witness};
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flags {
    pub is_frechet: ThreeValued,
    pub is_barrelled: ThreeValued,
    pub is_montel: ThreeValued,
    pub is_schwartz: ThreeValued,
    pub monomial_basis: ThreeValued,
    pub is_nuclear: ThreeValued,
    /// `𝒟_{∞,+} = ℋ_{∞,+}` on the `𝒟` record, `ℋ_{p,+} = ℓ_2(A(λ))` on the
    /// `ℋ` records.
    pub coincides_with_hardy: ThreeValued,
    pub hypercontractive: ThreeValued,
}

impl Flags {
    pub fn iter(&self) -> [(&'static str, &ThreeValued); 8] {
        [
            ("is_frechet", &self.is_frechet),
            ("is_barrelled", &self.is_barrelled),
            ("is_montel", &self.is_montel),
            ("is_schwartz", &self.is_schwartz),
            ("monomial_basis", &self.monomial_basis),
            ("is_nuclear", &self.is_nuclear),
            ("coincides_with_hardy", &self.coincides_with_hardy),
            ("hypercontractive", &self.hypercontractive),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpaceRecord {
    /// `D_inf_plus`, `H_1_plus`, `H_2_plus`, `H_p_plus` or `H_inf_plus`.
    pub space: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub flags: Flags,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    pub frequency: String,
    #[serde(serialize_with = "ser_opt")]
    pub l_exact: Option<f64>,
    pub bohr_theorem: ThreeValued,
    pub q_linearly_independent: ThreeValued,
    pub records: Vec<SpaceRecord>,
}

fn ser_opt<S: serde::Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => crate::abscissa::ser_float(v, s),
        None => s.serialize_none(),
    }
}

impl StructureReport {
    pub fn record(&self, space: &str) -> Option<&SpaceRecord> {
        self.records.iter().find(|r| r.space == space)
    }
}

/// Default exponent of the generic `ℋ_{p,+}` record.
pub const DEFAULT_GENERIC_P: f64 = 4.0;

fn gated(bohr: &ThreeValued, conclusion: &str) -> ThreeValued {
    // Bohr's theorem is never refuted by the classifier, so only Holds and
    // Inconclusive reach here; a Fails would carry its witness over.
    ThreeValued {
        verdict: bohr.verdict,
        rule: format!("{conclusion} iff Bohr's theorem holds for lambda ({})", bohr.rule),
        witness: bohr.witness.clone(),
    }
}

fn nuclear_rule(l: Option<f64>, space: &str) -> ThreeValued {
    match l {
        Some(0.0) => ThreeValued::holds(format!("{space} is nuclear iff L(lambda) = 0; L(lambda) = 0")),
        Some(v) => ThreeValued::fails(
            format!("{space} is nuclear iff L(lambda) = 0"),
            Witness::new(format!("L(lambda) = {}", fmt12(v))).with_values(vec![v]),
        ),
        None => ThreeValued::inconclusive(format!("{space} is nuclear iff L(lambda) = 0; L(lambda) not exact")),
    }
}

fn hardy_l2(p: f64, l: Option<f64>, qli: &ThreeValued) -> ThreeValued {
    if p == 2.0 {
        ThreeValued::holds("H_{2,+}(lambda) = l_2(A(lambda)) for every frequency")
    } else if qli.is_holds() {
        ThreeValued::holds(format!("H_p(lambda) = l_2 for Q-linearly independent lambda ({})", qli.rule))
    } else if l == Some(0.0) {
        ThreeValued::holds("L(lambda) = 0: all the Frechet spaces coincide with l_2(A(lambda))")
    } else {
        ThreeValued::inconclusive("neither p = 2, Q-linear independence nor L(lambda) = 0 applies")
    }
}

/// Verdicts for `𝒟_{∞,+}`, `ℋ_{1,+}`, `ℋ_{2,+}`, `ℋ_{p,+}` (generic `p`) and
/// `ℋ_{∞,+}` over `λ`.
pub fn build_report(freq: &Frequency) -> StructureReport {
    build_report_with_p(freq, DEFAULT_GENERIC_P).expect("default p is valid")
}

pub fn build_report_with_p(freq: &Frequency, generic_p: f64) -> Result<StructureReport> {
    if !(generic_p > 1.0 && generic_p.is_finite()) {
        return Err(Error::InvalidParameter(format!("generic p must satisfy 1 < p < inf, got {generic_p}")));
    }
    let bohr = classify_bohr_theorem(freq);
    let l = exact_l(freq);
    let qli = q_linearly_independent(freq);
    let hyper = check_hypercontractive(freq);

    let d = Flags {
        is_frechet: gated(&bohr, "D_{inf,+}(lambda) is Frechet"),
        is_barrelled: gated(&bohr, "D_{inf,+}(lambda) is barrelled"),
        is_montel: gated(&bohr, "D_{inf,+}(lambda) is Montel"),
        is_schwartz: ThreeValued::holds("D_{inf,+}(lambda) is a pre-Frechet Schwartz space for every lambda"),
        monomial_basis: gated(&bohr, "the monomials form a Schauder basis of D_{inf,+}(lambda)"),
        is_nuclear: nuclear_rule(l, "D_{inf,+}(lambda)"),
        coincides_with_hardy: gated(&bohr, "D_{inf,+}(lambda) = H_{inf,+}(lambda)"),
        hypercontractive: hyper.clone(),
    };

    let reflexive = |p: f64| {
        let name = format!("H_{{{},+}}(lambda)", fmt12(p));
        Flags {
            is_frechet: ThreeValued::holds(format!("{name} is a Frechet Schwartz space")),
            is_barrelled: ThreeValued::holds(format!("{name} is Frechet, hence barrelled")),
            is_montel: ThreeValued::holds(format!("{name} is Frechet Schwartz, hence Montel")),
            is_schwartz: ThreeValued::holds(format!("{name} is a Frechet Schwartz space")),
            monomial_basis: ThreeValued::holds(format!("the monomials form a Schauder basis of {name}, 1 < p < inf")),
            is_nuclear: nuclear_rule(l, &name),
            coincides_with_hardy: hardy_l2(p, l, &qli),
            hypercontractive: hyper.clone(),
        }
    };

    let endpoint = |label: &str, p: f64| {
        let name = format!("H_{{{label},+}}(lambda)");
        let nuclear = match l {
            Some(0.0) => nuclear_rule(l, &name),
            Some(v) if bohr.is_holds() => ThreeValued::fails(
                format!("under Bohr's theorem {name} is nuclear iff L(lambda) = 0"),
                Witness::new(format!("L(lambda) = {}", fmt12(v))).with_values(vec![v]),
            ),
            _ => ThreeValued::inconclusive(format!(
                "{name} is nuclear if L(lambda) = 0; the converse needs Bohr's theorem"
            )),
        };
        Flags {
            is_frechet: ThreeValued::holds(format!("{name} is a Frechet Schwartz space")),
            is_barrelled: ThreeValued::holds(format!("{name} is Frechet, hence barrelled")),
            is_montel: ThreeValued::holds(format!("{name} is Frechet Schwartz, hence Montel")),
            is_schwartz: ThreeValued::holds(format!("{name} is a Frechet Schwartz space")),
            monomial_basis: gated(&bohr, &format!("the monomials form a Schauder basis of {name}")),
            is_nuclear: nuclear,
            coincides_with_hardy: hardy_l2(p, l, &qli),
            hypercontractive: hyper.clone(),
        }
    };

    Ok(StructureReport {
        frequency: freq.describe(),
        l_exact: l,
        bohr_theorem: bohr.clone(),
        q_linearly_independent: qli.clone(),
        records: vec![
            SpaceRecord { space: "D_inf_plus".into(), p: None, flags: d },
            SpaceRecord { space: "H_1_plus".into(), p: Some(1.0), flags: endpoint("1", 1.0) },
            SpaceRecord { space: "H_2_plus".into(), p: Some(2.0), flags: reflexive(2.0) },
            SpaceRecord { space: "H_p_plus".into(), p: Some(generic_p), flags: reflexive(generic_p) },
            SpaceRecord { space: "H_inf_plus".into(), p: None, flags: endpoint("inf", f64::INFINITY) },
        ],
    })
}

/// Violated type invariants, empty when the report is consistent.
pub fn check_invariants(report: &StructureReport) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(d) = report.record("D_inf_plus") {
        let f = &d.flags;
        if !(f.is_frechet.verdict == f.is_barrelled.verdict && f.is_barrelled.verdict == f.is_montel.verdict) {
            out.push("D_inf_plus: Frechet, barrelled and Montel disagree".into());
        }
    } else {
        out.push("missing D_inf_plus record".into());
    }
    for r in &report.records {
        if r.flags.is_nuclear.is_holds() && !r.flags.is_frechet.is_holds() {
            out.push(format!("{}: nuclear Holds but Frechet does not", r.space));
        }
        if !r.flags.is_schwartz.is_holds() {
            out.push(format!("{}: Schwartz must Hold", r.space));
        }
        if report.l_exact == Some(0.0) && !r.flags.is_nuclear.is_holds() {
            out.push(format!("{}: L(lambda) = 0 but nuclear does not Hold", r.space));
        }
        for (name, flag) in r.flags.iter() {
            if flag.is_fails() && flag.witness.is_none() {
                out.push(format!("{}: {name} Fails without a witness", r.space));
            }
        }
    }
    if report.bohr_theorem.is_inconclusive() {
        if let Some(d) = report.record("D_inf_plus") {
            for flag in [&d.flags.is_frechet, &d.flags.monomial_basis, &d.flags.coincides_with_hardy] {
                if flag.verdict != Verdict::Inconclusive {
                    out.push("an Inconclusive Bohr verdict was turned into a definite flag".into());
                }
            }
        }
    }
    out
}

pub fn render_text(report: &StructureReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "frequency: {}", report.frequency);
    let _ = writeln!(s, "L(lambda): {}", report.l_exact.map_or_else(|| "not exact".to_string(), fmt12));
    let _ = writeln!(s, "Bohr's theorem: {}", report.bohr_theorem);
    let _ = writeln!(s, "Q-linearly independent: {}", report.q_linearly_independent);
    for r in &report.records {
        let _ = match r.p {
            Some(p) => writeln!(s, "\n[{}] p = {}", r.space, fmt12(p)),
            None => writeln!(s, "\n[{}]", r.space),
        };
        for (name, flag) in r.flags.iter() {
            let _ = writeln!(s, "  {name:<22} {:<12} {}", flag.verdict.to_string(), flag.rule);
            if let Some(w) = &flag.witness {
                let _ = writeln!(s, "  {:<22} {:<12} witness: {}", "", "", w.description);
            }
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardyRow {
    pub k: u32,
    /// `‖D_{1/k}‖` in `ℋ_2 = ℓ_2`.
    pub ladder: f64,
    /// `(Σ |a_n e^{-λ_n/k}|²)^{1/2}`, the level-`k` norm of `ℓ_2(A(λ))`.
    pub weighted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardyDemo {
    pub rows: Vec<HardyRow>,
    /// Largest `|ladder - weighted| / max(1, weighted)`.
    pub max_relative_gap: f64,
    pub agrees: bool,
}

/// The seminorm ladder of `D` in `ℋ_2` next to the `ℓ_2(A(λ))` level norms;
/// they are the same finite sums.
pub fn hardy2_coincidence_demo(d: &DirichletSeries, k_max: u32, horizon: usize) -> Result<HardyDemo> {
    let ladder = seminorm_ladder(d, &AdmissibleSpace::Lp { p: 2.0 }, k_max, horizon)?;
    let a = KoetheMatrix::new(d.freq.clone());
    let rows: Vec<HardyRow> = ladder
        .iter()
        .map(|e| {
            let w = weighted_norm(&a, &d.coeffs, SequenceNorm::Lp { p: 2.0 }, e.k, horizon)?;
            Ok(HardyRow { k: e.k, ladder: e.value, weighted: w.value })
        })
        .collect::<Result<_>>()?;
    let max_relative_gap = rows.iter().map(|r| (r.ladder - r.weighted).abs() / r.weighted.max(1.0)).fold(0.0, f64::max);
    Ok(HardyDemo { rows, max_relative_gap, agrees: max_relative_gap <= 1e-10 })
}
