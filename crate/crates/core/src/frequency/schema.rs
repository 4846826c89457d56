//! JSON form of a frequency:
//! `{"kind": "log_n" | "n" | "log_n_pow" | "log_prime" | "scaled_log_n" |
//!  "log_log_n" | "explicit" | "rational_combination", "alpha"?, "c"?: [num, den],
//!  "values"?, "basis"?, "matrix"?: [[[num, den], …], …], "n_max"?}`

use super::{Frequency, FrequencyKind};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrequencyJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<[i64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n_max: Option<usize>,
}

fn require<T>(field: Option<T>, kind: &str, name: &str) -> Result<T, String> {
    field.ok_or_else(|| format!("kind `{kind}` requires field `{name}`"))
}

impl TryFrom<FrequencyJson> for Frequency {
    type Error = String;

    fn try_from(j: FrequencyJson) -> Result<Self, String> {
        let kind = j.kind.as_str();
        let freq = match kind {
            "log_n" => Ok(Frequency::log_n()),
            "n" => Ok(Frequency::n()),
            "log_prime" => Ok(Frequency::log_prime()),
            "log_log_n" => Ok(Frequency::log_log_n()),
            "log_n_pow" => Frequency::log_n_pow(require(j.alpha, kind, "alpha")?),
            "scaled_log_n" => {
                let [num, den] = require(j.c, kind, "c")?;
                Frequency::scaled_log_n(num, den)
            }
            "explicit" => Frequency::explicit(require(j.values, kind, "values")?),
            "rational_combination" => {
                let basis = require(j.basis, kind, "basis")?;
                let matrix = require(j.matrix, kind, "matrix")?;
                let mut rows = Vec::with_capacity(matrix.len());
                for row in matrix {
                    let mut out = Vec::with_capacity(row.len());
                    for [num, den] in row {
                        if den == 0 {
                            return Err("matrix entry with zero denominator".into());
                        }
                        out.push(Ratio::new(num, den));
                    }
                    rows.push(out);
                }
                Frequency::rational_combination(basis, rows)
            }
            other => return Err(format!("unknown frequency kind `{other}`")),
        }
        .map_err(|e| e.to_string())?;
        match j.n_max {
            Some(n) => freq.with_n_max(n).map_err(|e| e.to_string()),
            None => Ok(freq),
        }
    }
}

impl From<&Frequency> for FrequencyJson {
    fn from(f: &Frequency) -> Self {
        let mut j = FrequencyJson {
            kind: f.kind_name().to_string(),
            alpha: None,
            c: None,
            values: None,
            basis: None,
            matrix: None,
            n_max: None,
        };
        match &f.kind {
            FrequencyKind::LogNPow { alpha } => j.alpha = Some(*alpha),
            FrequencyKind::ScaledLogN { c } => j.c = Some([*c.numer(), *c.denom()]),
            FrequencyKind::Explicit { values } => j.values = Some(values.clone()),
            FrequencyKind::RationalCombination { basis, matrix } => {
                j.basis = Some(basis.clone());
                j.matrix =
                    Some(matrix.iter().map(|row| row.iter().map(|r| [*r.numer(), *r.denom()]).collect()).collect());
            }
            _ => {}
        }
        if f.is_symbolic() && f.n_max != super::DEFAULT_N_MAX {
            j.n_max = Some(f.n_max);
        }
        j
    }
}

impl Serialize for Frequency {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FrequencyJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Frequency {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = FrequencyJson::deserialize(deserializer)?;
        Frequency::try_from(raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Frequency, serde_json::Error> {
        serde_json::from_str(s)
    }

    #[test]
    fn parses_every_kind() {
        assert_eq!(parse(r#"{"kind":"log_n"}"#).unwrap(), Frequency::log_n());
        assert_eq!(parse(r#"{"kind":"n"}"#).unwrap(), Frequency::n());
        assert_eq!(parse(r#"{"kind":"log_prime"}"#).unwrap(), Frequency::log_prime());
        assert_eq!(parse(r#"{"kind":"log_log_n"}"#).unwrap(), Frequency::log_log_n());
        assert_eq!(parse(r#"{"kind":"log_n_pow","alpha":0.5}"#).unwrap(), Frequency::log_n_pow(0.5).unwrap());
        assert_eq!(parse(r#"{"kind":"scaled_log_n","c":[2,1]}"#).unwrap(), Frequency::scaled_log_n(2, 1).unwrap());
        let e = parse(r#"{"kind":"explicit","values":[0,1,2.5]}"#).unwrap();
        assert_eq!(e.n_max(), 3);
        let r = parse(
            r#"{"kind":"rational_combination","basis":[1.0,1.4142135623730951],"matrix":[[[1,2]],[[0,1],[1,1]]]}"#,
        )
        .unwrap();
        assert_eq!(r.materialize(2).unwrap()[0], 0.5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse(r#"{"kind":"zeta"}"#).unwrap_err().to_string().contains("unknown frequency kind"));
        assert!(parse(r#"{"kind":"log_n_pow"}"#).unwrap_err().to_string().contains("alpha"));
        assert!(parse(r#"{"kind":"explicit","values":[1,0]}"#).is_err());
        assert!(parse(r#"{"kind":"log_n","bogus":1}"#).is_err());
    }

    #[test]
    fn round_trip() {
        for f in [
            Frequency::log_n_pow(2.0).unwrap(),
            Frequency::scaled_log_n(3, 2).unwrap(),
            Frequency::explicit(vec![0.0, 0.5]).unwrap(),
            Frequency::log_n().with_n_max(500).unwrap(),
        ] {
            let s = serde_json::to_string(&f).unwrap();
            assert_eq!(parse(&s).unwrap(), f, "{s}");
        }
    }
}
