//! `hnf`: HN filtration of a formal direct sum described in JSON.
//!
//! ```json
//! {
//!   "frobenius": 3,
//!   "lines": [{ "label": "O_X", "degree": 0 }],
//!   "extensions": [{
//!     "label": "E",
//!     "sub": { "label": "L", "degree": -5 },
//!     "quotient": { "label": "M", "degree": -1 },
//!     "flags": { "class_nonzero": true, "frobenius_kills_class": true }
//!   }],
//!   "filtered": [{
//!     "label": "V",
//!     "quotients": [{ "labels": ["A"], "rank": 1, "degree": 2 }]
//!   }]
//! }
//! ```
//!
//! Without `frobenius` the sum itself is filtered; extensions must satisfy
//! the semistability rule. With `frobenius: p` the Frobenius pull-back of
//! the sum is filtered; extensions must have Frobenius-killed classes and
//! `filtered` pieces are not accepted.

use std::fmt;

use frobhn_core::bundles::{
    hn_merge, ExtensionRecord, FactLog, Filtration, HnPiece, HnQuotient, LineBundleSymbol,
    RuleRefusal, Statement,
};
use frobhn_core::ffpoly::is_prime;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::document::FiltrationRecord;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineInput {
    pub label: String,
    pub degree: i64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default)]
    pub class_nonzero: bool,
    #[serde(default)]
    pub frobenius_kills_class: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionInput {
    #[serde(default)]
    pub label: Option<String>,
    pub sub: LineInput,
    pub quotient: LineInput,
    #[serde(default)]
    pub flags: Flags,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientInput {
    pub labels: Vec<String>,
    pub rank: u64,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilteredInput {
    pub label: String,
    pub quotients: Vec<QuotientInput>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleInput {
    #[serde(default)]
    pub frobenius: Option<u64>,
    #[serde(default)]
    pub lines: Vec<LineInput>,
    #[serde(default)]
    pub extensions: Vec<ExtensionInput>,
    #[serde(default)]
    pub filtered: Vec<FilteredInput>,
}

#[derive(Debug)]
pub enum HnfError {
    /// Malformed input: exit code 2.
    Input(String),
    /// A piece could not be certified: exit code 1.
    Refused(String),
}

impl fmt::Display for HnfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HnfError::Input(s) | HnfError::Refused(s) => f.write_str(s),
        }
    }
}

impl std::error::Error for HnfError {}

fn symbol(l: &LineInput) -> LineBundleSymbol {
    LineBundleSymbol::new(l.label.clone(), l.degree)
}

fn refused(label: &str, r: RuleRefusal) -> HnfError {
    HnfError::Refused(format!("{label}: {r}"))
}

/// Builds the HN pieces and merges them.
pub fn evaluate(input: &BundleInput) -> Result<Filtration, HnfError> {
    if let Some(p) = input.frobenius {
        if !is_prime(p) {
            return Err(HnfError::Input(format!("frobenius: {p} is not prime")));
        }
        if !input.filtered.is_empty() {
            return Err(HnfError::Input(
                "filtered pieces cannot be pulled back by Frobenius".into(),
            ));
        }
    }
    let mut log = FactLog::new();
    let mut pieces = Vec::new();
    for l in &input.lines {
        let s = symbol(l);
        pieces.push(HnPiece::line(&match input.frobenius {
            Some(p) => s.frobenius_pullback(p),
            None => s,
        }));
    }
    for (i, e) in input.extensions.iter().enumerate() {
        let label = e.label.clone().unwrap_or_else(|| format!("E_{}", i + 1));
        let class = format!("c({label})");
        let nonzero = e.flags.class_nonzero.then(|| {
            log.assume(
                &format!("{class} nonzero"),
                Statement::ClassNonzero {
                    class: class.clone(),
                    level: 0,
                },
            )
        });
        let killed = e.flags.frobenius_kills_class.then(|| {
            log.assume(
                &format!("F*({class}) zero"),
                Statement::FrobeniusKills {
                    class: class.clone(),
                    level: 0,
                },
            )
        });
        let record = ExtensionRecord {
            label: label.clone(),
            class,
            sub: symbol(&e.sub),
            quotient: symbol(&e.quotient),
            class_nonzero: nonzero,
            frobenius_kills_class: killed,
        };
        match input.frobenius {
            None => {
                log.lemma_semistable(&format!("{label} semistable"), &record)
                    .map_err(|r| refused(&label, r))?;
                pieces.push(HnPiece::Semistable {
                    label,
                    rank: 2,
                    degree: record.degree(),
                });
            }
            Some(p) => {
                let id = log
                    .frobenius_split(&format!("F*{label} splits"), &record, p)
                    .map_err(|r| refused(&label, r))?;
                let Some(Statement::FrobeniusSplits { high, low, .. }) =
                    log.get(id).map(|f| &f.statement)
                else {
                    unreachable!("frobenius_split records a splitting");
                };
                if high.degree > low.degree {
                    pieces.push(HnPiece::Filtered {
                        label: format!("F*{label}"),
                        quotients: vec![HnQuotient::line(high), HnQuotient::line(low)],
                    });
                } else {
                    // deg M <= deg L: the pull-back is a sum of lines whose
                    // order the merge sorts out.
                    pieces.push(HnPiece::line(high));
                    pieces.push(HnPiece::line(low));
                }
            }
        }
    }
    for f in &input.filtered {
        pieces.push(HnPiece::Filtered {
            label: f.label.clone(),
            quotients: f
                .quotients
                .iter()
                .map(|q| HnQuotient {
                    labels: q.labels.clone(),
                    rank: q.rank,
                    degree: q.degree,
                })
                .collect(),
        });
    }
    if pieces.is_empty() {
        return Err(HnfError::Input("no bundles given".into()));
    }
    hn_merge(&pieces).map_err(|e| HnfError::Input(e.to_string()))
}

pub fn filtration_json(f: &Filtration) -> Value {
    let record = FiltrationRecord::new(f);
    json!({
        "length": record.length,
        "quotients": f.quotients.iter().zip(&record.slopes).map(|(q, s)| json!({
            "labels": q.labels,
            "rank": q.rank,
            "degree": q.degree,
            "slope": s,
        })).collect::<Vec<_>>(),
        "filtration": f.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> BundleInput {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn lines_only() {
        let input = parse(
            r#"{"lines": [{"label": "A", "degree": 0}, {"label": "B", "degree": -27},
                          {"label": "C", "degree": -3}, {"label": "D", "degree": -24}]}"#,
        );
        let f = evaluate(&input).unwrap();
        assert_eq!(f.length(), 4);
        assert_eq!(filtration_json(&f)["quotients"][1]["labels"][0], "C");
    }

    #[test]
    fn extension_needs_flags() {
        let input = parse(
            r#"{"extensions": [{"sub": {"label": "L", "degree": -5},
                                "quotient": {"label": "M", "degree": -1},
                                "flags": {"class_nonzero": true}}]}"#,
        );
        assert!(matches!(evaluate(&input), Err(HnfError::Refused(_))));
    }

    #[test]
    fn pulled_back_extensions() {
        let input = parse(
            r#"{"frobenius": 3,
                "extensions": [
                  {"label": "E_0", "sub": {"label": "O_X(-1)", "degree": -9},
                   "quotient": {"label": "O_X", "degree": 0},
                   "flags": {"class_nonzero": true, "frobenius_kills_class": true}},
                  {"label": "E_2", "sub": {"label": "L_2", "degree": -8},
                   "quotient": {"label": "M_2", "degree": -1},
                   "flags": {"class_nonzero": true, "frobenius_kills_class": true}}]}"#,
        );
        let f = evaluate(&input).unwrap();
        let degrees: Vec<i64> = f.quotients.iter().map(|q| q.degree).collect();
        assert_eq!(degrees, [0, -3, -24, -27]);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(serde_json::from_str::<BundleInput>(r#"{"line": []}"#).is_err());
    }
}
