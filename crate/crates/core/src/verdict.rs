//! Three-valued verdicts used for asymptotic properties that finite data can
//! only sometimes decide.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "Holds",
            Verdict::Fails => "Fails",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

/// Concrete finite evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Witness {
    pub description: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub indices: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<f64>,
}

impl Witness {
    pub fn new(description: impl Into<String>) -> Self {
        Witness { description: description.into(), ..Default::default() }
    }

    pub fn with_indices(mut self, indices: Vec<u64>) -> Self {
        self.indices = indices;
        self
    }

    pub fn with_values(mut self, values: Vec<f64>) -> Self {
        self.values = values;
        self
    }
}

/// A verdict together with the rule that produced it.
///
/// `Fails` is only ever constructed with a witness; see [`ThreeValued::fails`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThreeValued {
    pub verdict: Verdict,
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl ThreeValued {
    pub fn holds(rule: impl Into<String>) -> Self {
        ThreeValued { verdict: Verdict::Holds, rule: rule.into(), witness: None }
    }

    pub fn fails(rule: impl Into<String>, witness: Witness) -> Self {
        ThreeValued { verdict: Verdict::Fails, rule: rule.into(), witness: Some(witness) }
    }

    pub fn inconclusive(rule: impl Into<String>) -> Self {
        ThreeValued { verdict: Verdict::Inconclusive, rule: rule.into(), witness: None }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn is_holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.verdict == Verdict::Fails
    }

    pub fn is_inconclusive(&self) -> bool {
        self.verdict == Verdict::Inconclusive
    }
}

impl fmt::Display for ThreeValued {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.verdict, self.rule)
    }
}
