//! Serializable form of a [`Certificate`].

use std::fmt::Write as _;

use frobhn_core::bundles::{Certificate, Fact, Filtration, Justification, Outcome, Statement};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub prime: u64,
    pub summands: usize,
    pub curve: String,
    pub steps: Vec<StepRecord>,
    pub bundles: Vec<BundleRow>,
    pub filtration: Option<FiltrationRecord>,
    pub conclusion: ConclusionRecord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub name: String,
    pub status: Status,
    pub witness: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleRow {
    pub l: usize,
    pub deg_sub: i64,
    pub deg_quot: i64,
    pub slope: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationRecord {
    /// Labels of each graded piece, from the top of the filtration down.
    pub labels: Vec<Vec<String>>,
    pub slopes: Vec<String>,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConclusionRecord {
    pub status: Status,
    pub hn_length: Option<usize>,
    pub exceeds_p: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failed_step: Option<String>,
}

impl FiltrationRecord {
    pub fn new(f: &Filtration) -> Self {
        FiltrationRecord {
            labels: f.quotients.iter().map(|q| q.labels.clone()).collect(),
            slopes: f.slopes().iter().map(ToString::to_string).collect(),
            length: f.length(),
        }
    }
}

/// Witness data for a fact: its statement plus how it was obtained.
pub fn witness(fact: &Fact) -> Value {
    let mut w = statement_json(&fact.statement);
    let obj = w.as_object_mut().expect("statement is an object");
    obj.insert("fact".into(), json!(fact.id.0));
    match &fact.justification {
        Justification::Assumption => {
            obj.insert("justification".into(), json!("assumption"));
        }
        Justification::Computation(_) => {
            obj.insert("justification".into(), json!("computation"));
        }
        Justification::Rule { rule, premises } => {
            obj.insert("justification".into(), json!(rule.to_string()));
            obj.insert(
                "premises".into(),
                premises.iter().map(|p| p.0).collect::<Vec<_>>().into(),
            );
        }
    }
    w
}

pub fn statement_json(s: &Statement) -> Value {
    match s {
        Statement::CurveSmoothness {
            smooth,
            witnesses,
            basis_size,
        } => json!({
            "smooth": smooth,
            "pure_power_witnesses": witnesses
                .iter()
                .map(|(v, m)| (v.to_string(), Value::from(m.to_string())))
                .collect::<serde_json::Map<_, _>>(),
            "basis_size": basis_size,
        }),
        Statement::Genus {
            genus,
            h1_dimension,
        } => json!({ "genus": genus, "h1_dimension": h1_dimension }),
        Statement::ClassValue {
            expression,
            twist,
            zero,
            representative,
        } => json!({
            "class": expression,
            "twist": twist,
            "zero": zero,
            "representative": representative.to_string(),
        }),
        Statement::PointCount {
            variable,
            count,
            distinct,
        } => json!({ "divisor_of": variable.to_string(), "count": count, "distinct": distinct }),
        Statement::Factorization { variable, count } => {
            json!({ "variable": variable.to_string(), "count": count })
        }
        Statement::ClassNonzero { class, level } => {
            json!({ "class": class, "level": level, "zero": false })
        }
        Statement::FrobeniusKills { class, level } => {
            json!({ "class": format!("F*({class})"), "level": level, "zero": true })
        }
        Statement::ExtensionDegrees {
            bundle,
            sub,
            quotient,
        } => json!({
            "bundle": bundle,
            "sub": { "label": sub.label, "degree": sub.degree },
            "quotient": { "label": quotient.label, "degree": quotient.degree },
        }),
        Statement::Semistable {
            bundle,
            rank,
            slope,
        } => json!({ "bundle": bundle, "rank": rank, "slope": slope.to_string() }),
        Statement::FrobeniusSplits { bundle, high, low } => json!({
            "bundle": format!("F*{bundle}"),
            "summands": [
                { "label": high.label, "degree": high.degree },
                { "label": low.label, "degree": low.degree },
            ],
        }),
        Statement::HarderNarasimhan { bundle, filtration } => json!({
            "bundle": bundle,
            "length": filtration.length(),
            "slopes": filtration.slopes().iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        Statement::Conclusion {
            hn_length,
            prime,
            exceeds,
        } => json!({ "hn_length": hn_length, "prime": prime, "exceeds_p": exceeds }),
    }
}

impl CertificateDocument {
    pub fn from_certificate(cert: &Certificate) -> Self {
        let steps = cert
            .steps()
            .iter()
            .map(|s| StepRecord {
                name: s.name.clone(),
                status: Status::from_bool(s.passed),
                witness: match s.fact.and_then(|id| cert.facts().get(id)) {
                    Some(f) => witness(f),
                    None => json!({ "error": s.detail }),
                },
            })
            .collect();
        let bundles = cert
            .rows()
            .iter()
            .map(|r| BundleRow {
                l: r.level,
                deg_sub: r.deg_sub,
                deg_quot: r.deg_quot,
                slope: r.slope.to_string(),
            })
            .collect();
        let conclusion = match cert.outcome() {
            Outcome::Pass {
                hn_length,
                exceeds_p,
            } => ConclusionRecord {
                status: Status::from_bool(*exceeds_p),
                hn_length: Some(*hn_length),
                exceeds_p: *exceeds_p,
                failed_step: None,
            },
            Outcome::Failed { step, .. } => ConclusionRecord {
                status: Status::Fail,
                hn_length: None,
                exceeds_p: false,
                failed_step: Some(step.clone()),
            },
        };
        CertificateDocument {
            prime: cert.prime(),
            summands: cert.summands(),
            curve: cert.equation().to_string(),
            steps,
            bundles,
            filtration: cert.filtration().map(FiltrationRecord::new),
            conclusion,
        }
    }

    pub fn passed(&self) -> bool {
        self.conclusion.status == Status::Pass
            && self.steps.iter().all(|s| s.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "curve  {} = 0 over F_{}", self.curve, self.prime);
        let _ = writeln!(s, "summands  {}", self.summands);
        let _ = writeln!(s);
        let width = self.steps.iter().map(|st| st.name.len()).max().unwrap_or(0);
        for st in &self.steps {
            let status = match st.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let _ = writeln!(s, "{status}  {:width$}  {}", st.name, brief(&st.witness));
        }
        if !self.bundles.is_empty() {
            let _ = writeln!(s);
            let _ = writeln!(s, "{:>4}  {:>8}  {:>8}  slope", "l", "deg L", "deg M");
            for b in &self.bundles {
                let _ = writeln!(
                    s,
                    "{:>4}  {:>8}  {:>8}  {}",
                    b.l, b.deg_sub, b.deg_quot, b.slope
                );
            }
        }
        if let Some(f) = &self.filtration {
            let _ = writeln!(s);
            let _ = writeln!(s, "HN quotients of F*S (length {}):", f.length);
            for (labels, slope) in f.labels.iter().zip(&f.slopes) {
                let _ = writeln!(s, "  {:>8}  {}", slope, labels.join(" + "));
            }
        }
        let _ = writeln!(s);
        match (&self.conclusion.failed_step, self.conclusion.hn_length) {
            (Some(step), _) => {
                let _ = writeln!(s, "FAIL  verification stopped at step '{step}'");
            }
            (None, Some(len)) => {
                let cmp = if self.conclusion.exceeds_p { ">" } else { "<=" };
                let status = if self.conclusion.exceeds_p {
                    "PASS"
                } else {
                    "FAIL"
                };
                let _ = writeln!(s, "{status}  HN length {len} {cmp} p = {}", self.prime);
            }
            (None, None) => {}
        }
        s
    }
}

fn brief(w: &Value) -> String {
    let Some(obj) = w.as_object() else {
        return w.to_string();
    };
    obj.iter()
        .filter(|(k, _)| !matches!(k.as_str(), "fact" | "premises" | "justification"))
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}={s}"),
            other => format!("{k}={other}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}
