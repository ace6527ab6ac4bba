//! End-to-end construction of a bundle whose Frobenius pull-back has a
//! long HN filtration.
//!
//! On `X = V(x^{3p} + x y^{3p-1} + y z^{3p-1})` the class
//! `c = x^3 / (y^2 z^2)` in `H^1(X, O_X(-1))` is nonzero, killed by
//! Frobenius, and stays nonzero after multiplication by `z`. Writing
//! `z = 0` as `P_1 + ... + P_{3p}`, multiplication by `z` factors through
//! `H^1(X, O_X(-1 + P_1 + ... + P_l))`; the image `c_l` of `c` there, read
//! as an extension of `O_X(-sum_J P_j)` by `O_X(-1 + sum_I P_i)` (`I` the
//! odd and `J` the even indices up to `l`), gives a semistable rank two
//! bundle `E_l` of slope `-3p/2` whose Frobenius pull-back splits. The
//! direct sum of `n` of them has HN length `2n`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::facts::{ClassOperation, Computation, FactId, FactLog, Justification, Statement};
use super::{ExtensionRecord, Filtration, LineBundleSymbol, Slope};
use crate::cohomology::{Fraction, PlaneCurve};
use crate::divisors::{split_divisor, vanishing_divisor, DivisorSymbol};
use crate::ffpoly::{FieldError, Monomial, PrimeField, SparsePolynomial, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    Field(FieldError),
    NoSummands,
    /// Levels `0, 2, ..., 2(n-1)` must stay below `3p`.
    TooManySummands {
        summands: usize,
        max: usize,
    },
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::Field(e) => write!(f, "{e}"),
            BuildError::NoSummands => write!(f, "need at least one summand"),
            BuildError::TooManySummands { summands, max } => {
                write!(f, "{summands} summands requested, at most {max} available")
            }
        }
    }
}

impl core::error::Error for BuildError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayError {
    /// A premise does not precede the fact using it.
    PremiseOrder {
        fact: FactId,
        premise: FactId,
    },
    Computation {
        fact: FactId,
        error: String,
    },
    /// Re-running the computation gave a different statement.
    Mismatch {
        fact: FactId,
    },
    Curve(String),
}

impl fmt::Display for ReplayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayError::PremiseOrder { fact, premise } => {
                write!(f, "fact {fact} uses later fact {premise}")
            }
            ReplayError::Computation { fact, error } => write!(f, "fact {fact}: {error}"),
            ReplayError::Mismatch { fact } => write!(f, "fact {fact} did not reproduce"),
            ReplayError::Curve(e) => write!(f, "cannot rebuild curve: {e}"),
        }
    }
}

impl core::error::Error for ReplayError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Every step checked out. `exceeds_p` is whether the HN length is
    /// larger than the characteristic.
    Pass {
        hn_length: usize,
        exceeds_p: bool,
    },
    Failed {
        step: String,
        reason: String,
    },
}

/// One checked step of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub name: String,
    pub passed: bool,
    pub fact: Option<FactId>,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionRow {
    pub level: usize,
    pub deg_sub: i64,
    pub deg_quot: i64,
    pub slope: Slope,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    prime: u64,
    summands: usize,
    equation: SparsePolynomial,
    log: FactLog,
    steps: Vec<Step>,
    rows: Vec<ExtensionRow>,
    split_lines: Vec<LineBundleSymbol>,
    filtration: Option<Filtration>,
    outcome: Outcome,
}

impl Certificate {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn summands(&self) -> usize {
        self.summands
    }

    pub fn equation(&self) -> &SparsePolynomial {
        &self.equation
    }

    pub fn facts(&self) -> &FactLog {
        &self.log
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn rows(&self) -> &[ExtensionRow] {
        &self.rows
    }

    /// The line summands of `F*S`, in construction order.
    pub fn split_lines(&self) -> &[LineBundleSymbol] {
        &self.split_lines
    }

    pub fn filtration(&self) -> Option<&Filtration> {
        self.filtration.as_ref()
    }

    pub fn outcome(&self) -> &Outcome {
        &self.outcome
    }

    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Pass { .. })
    }

    /// Checks premise order and re-runs every computation on a freshly
    /// built curve, comparing statements.
    pub fn replay(&self) -> Result<(), ReplayError> {
        let curve = PlaneCurve::new(self.equation.clone())
            .map_err(|e| ReplayError::Curve(e.to_string()))?;
        for fact in self.log.facts() {
            if let Some(&premise) = fact.premises().iter().find(|p| **p >= fact.id) {
                return Err(ReplayError::PremiseOrder {
                    fact: fact.id,
                    premise,
                });
            }
            if let Justification::Computation(c) = &fact.justification {
                let again = c.run_on(&curve).map_err(|e| ReplayError::Computation {
                    fact: fact.id,
                    error: e.to_string(),
                })?;
                if again != fact.statement {
                    return Err(ReplayError::Mismatch { fact: fact.id });
                }
            }
        }
        Ok(())
    }
}

/// Even levels `l < 3p`; `l = 3p` would give `deg L = deg M`.
pub fn available_levels(p: u64) -> Vec<usize> {
    (0..3 * p as usize).step_by(2).collect()
}

/// `ceil((p + 1) / 2)`, the smallest `n` with `2n > p`.
pub fn default_summands(p: u64) -> usize {
    (p as usize + 2) / 2
}

/// `x^{3p} + x y^{3p-1} + y z^{3p-1}` over `F_p`.
pub fn family_equation(field: PrimeField) -> SparsePolynomial {
    let d = 3 * field.modulus() as i32;
    SparsePolynomial::from_terms(
        field,
        [
            (1, Monomial::xyz(d, 0, 0)),
            (1, Monomial::xyz(1, d - 1, 0)),
            (1, Monomial::xyz(0, 1, d - 1)),
        ],
    )
}

/// `x^3 / (y^2 z^2)`, a class in `H^1(X, O_X(-1))`.
pub fn base_class(field: PrimeField) -> Fraction {
    Fraction {
        numerator: SparsePolynomial::monomial(field, Monomial::xyz(3, 0, 0)),
        y_power: 2,
        z_power: 2,
    }
}

fn sub_label(i: &DivisorSymbol) -> String {
    if i.points.is_empty() {
        return "O_X(-1)".into();
    }
    format!("O_X(-1 + {})", i.label())
}

fn quotient_label(j: &DivisorSymbol) -> String {
    if j.points.is_empty() {
        return "O_X".into();
    }
    let parts: Vec<String> = j.points.iter().map(|p| format!("P_{}", p.index)).collect();
    format!("O_X(-{})", parts.join(" - "))
}

struct Builder {
    prime: u64,
    log: FactLog,
    steps: Vec<Step>,
}

impl Builder {
    /// Records a step; returns an error outcome if it did not pass.
    fn step(
        &mut self,
        name: &str,
        fact: Option<FactId>,
        passed: bool,
    ) -> Result<Option<FactId>, Outcome> {
        let detail = fact
            .and_then(|id| self.log.get(id))
            .map(|f| f.statement.to_string())
            .unwrap_or_default();
        self.steps.push(Step {
            name: name.into(),
            passed,
            fact,
            detail: detail.clone(),
        });
        if passed {
            Ok(fact)
        } else {
            Err(Outcome::Failed {
                step: name.into(),
                reason: detail,
            })
        }
    }

    fn fail(&mut self, name: &str, reason: impl fmt::Display) -> Outcome {
        let reason = reason.to_string();
        self.steps.push(Step {
            name: name.into(),
            passed: false,
            fact: None,
            detail: reason.clone(),
        });
        Outcome::Failed {
            step: name.into(),
            reason,
        }
    }

    fn statement(&self, id: FactId) -> &Statement {
        &self.log.get(id).expect("recorded fact").statement
    }

    fn compute(
        &mut self,
        name: &str,
        c: Computation,
        curve: &PlaneCurve,
        check: impl Fn(&Statement) -> bool,
    ) -> Result<FactId, Outcome> {
        match self.log.compute(name, c, curve) {
            Ok(id) => {
                let ok = check(self.statement(id));
                self.step(name, Some(id), ok).map(|f| f.expect("fact"))
            }
            Err(e) => Err(self.fail(name, e)),
        }
    }

    fn ruled<E: fmt::Display>(
        &mut self,
        name: &str,
        r: Result<FactId, E>,
    ) -> Result<FactId, Outcome> {
        match r {
            Ok(id) => self.step(name, Some(id), true).map(|f| f.expect("fact")),
            Err(e) => Err(self.fail(name, e)),
        }
    }
}

struct Built {
    rows: Vec<ExtensionRow>,
    split_lines: Vec<LineBundleSymbol>,
    filtration: Option<Filtration>,
}

/// Builds and checks the certificate for `n` summands `E_0, E_2, ...,
/// E_{2(n-1)}` in characteristic `p`. A failing check does not raise an
/// error; it is reported in the certificate's [`Outcome`].
pub fn build_counterexample(p: u64, n: usize) -> Result<Certificate, BuildError> {
    let field = PrimeField::new(p).map_err(BuildError::Field)?;
    if n == 0 {
        return Err(BuildError::NoSummands);
    }
    let max = available_levels(p).len();
    if n > max {
        return Err(BuildError::TooManySummands { summands: n, max });
    }
    let equation = family_equation(field);
    let mut b = Builder {
        prime: p,
        log: FactLog::new(),
        steps: Vec::new(),
    };
    let mut built = Built {
        rows: Vec::new(),
        split_lines: Vec::new(),
        filtration: None,
    };
    let outcome = match run(&mut b, &mut built, field, &equation, n) {
        Ok(o) | Err(o) => o,
    };
    Ok(Certificate {
        prime: p,
        summands: n,
        equation,
        log: b.log,
        steps: b.steps,
        rows: built.rows,
        split_lines: built.split_lines,
        filtration: built.filtration,
        outcome,
    })
}

fn run(
    b: &mut Builder,
    built: &mut Built,
    field: PrimeField,
    equation: &SparsePolynomial,
    n: usize,
) -> Result<Outcome, Outcome> {
    let p = b.prime;
    let curve = PlaneCurve::new(equation.clone()).map_err(|e| b.fail("curve smooth", e))?;
    let eq = || equation.clone();

    b.compute(
        "curve smooth",
        Computation::Smoothness { equation: eq() },
        &curve,
        |s| matches!(s, Statement::CurveSmoothness { smooth: true, .. }),
    )?;
    b.compute(
        "genus",
        Computation::Genus { equation: eq() },
        &curve,
        |s| matches!(s, Statement::Genus { genus, h1_dimension } if *genus == *h1_dimension as i64),
    )?;
    let class_test = |operation| Computation::ClassTest {
        equation: eq(),
        fraction: base_class(field),
        operation,
    };
    let is_zero = |s: &Statement| matches!(s, Statement::ClassValue { zero: true, .. });
    b.compute(
        "c nonzero",
        class_test(ClassOperation::Identity),
        &curve,
        |s| !is_zero(s),
    )?;
    let killed = b.compute(
        "F*(c) zero",
        class_test(ClassOperation::Frobenius),
        &curve,
        is_zero,
    )?;
    let z = SparsePolynomial::var(field, Var::Z);
    let z_nonzero = b.compute(
        "z*c nonzero",
        class_test(ClassOperation::Multiply(z)),
        &curve,
        |s| !is_zero(s),
    )?;
    let d = 3 * p as u32;
    let points = b.compute(
        "points of z",
        Computation::VanishingDivisor {
            equation: eq(),
            variable: Var::Z,
        },
        &curve,
        |s| matches!(s, Statement::PointCount { count, distinct: true, .. } if *count == d),
    )?;
    let r = b.log.divisor_factorization("factorization", points);
    let factorization = b.ruled("factorization", r)?;

    let divisor = vanishing_divisor(&curve, Var::Z)
        .map_err(|e| b.fail("points of z", e))?
        .divisor;
    let mut records = Vec::new();
    let mut semistable = Vec::new();
    for level in (0..n).map(|i| 2 * i) {
        let (i_part, j_part) = split_divisor(&divisor, level).map_err(|e| b.fail("split", e))?;
        let name = |what: &str| format!("E_{level} {what}");

        let r = b.log.functoriality_nonzero(
            &format!("c_{level} nonzero"),
            z_nonzero,
            factorization,
            level,
        );
        let nonzero = b.ruled(&format!("c_{level} nonzero"), r)?;
        let r = b.log.functoriality_frobenius_zero(
            &format!("F*(c_{level}) zero"),
            killed,
            factorization,
            level,
        );
        let kills = b.ruled(&format!("F*(c_{level}) zero"), r)?;

        let sub = LineBundleSymbol::new(sub_label(&i_part), -(d as i64) + i_part.degree() as i64);
        let quotient = LineBundleSymbol::new(quotient_label(&j_part), -(j_part.degree() as i64));
        let label = format!("E_{level}");
        let r = b.log.divisor_degrees(
            &name("degrees"),
            factorization,
            level,
            &label,
            sub.clone(),
            quotient.clone(),
        );
        b.ruled(&name("degrees"), r)?;

        let record = ExtensionRecord {
            label,
            class: format!("c_{level}"),
            sub,
            quotient,
            class_nonzero: Some(nonzero),
            frobenius_kills_class: Some(kills),
        };
        let r = b.log.lemma_semistable(&name("semistable"), &record);
        let ss = b.ruled(&name("semistable"), r)?;
        let slope = record.slope();
        if slope != Slope::new(-(d as i64), 2) {
            return Err(b.fail(&name("slope"), format!("slope {slope}")));
        }
        built.rows.push(ExtensionRow {
            level,
            deg_sub: record.sub.degree,
            deg_quot: record.quotient.degree,
            slope,
        });
        semistable.push(ss);
        records.push(record);
    }

    let r = b.log.equal_slope_sum("S semistable", "S", &semistable);
    b.ruled("S semistable", r)?;

    let mut splits = Vec::new();
    for record in &records {
        let name = format!("F*{} splits", record.label);
        let r = b.log.frobenius_split(&name, record, p);
        let id = b.ruled(&name, r)?;
        if let Statement::FrobeniusSplits { high, low, .. } = b.statement(id) {
            built.split_lines.push(high.clone());
            built.split_lines.push(low.clone());
        }
        splits.push(id);
    }

    let r = b.log.hn_of_splits("HN filtration", "F*S", &splits);
    let hn = b.ruled("HN filtration", r)?;
    if let Statement::HarderNarasimhan { filtration, .. } = b.statement(hn) {
        built.filtration = Some(filtration.clone());
    }
    let strictly = built
        .filtration
        .as_ref()
        .is_some_and(|f| f.is_strictly_decreasing());
    if !strictly {
        return Err(b.fail("HN filtration", "slopes are not strictly decreasing"));
    }

    let r = b.log.conclusion("conclusion", hn, p);
    let c = b.ruled("conclusion", r)?;
    match *b.statement(c) {
        Statement::Conclusion {
            hn_length, exceeds, ..
        } => Ok(Outcome::Pass {
            hn_length,
            exceeds_p: exceeds,
        }),
        _ => Err(b.fail("conclusion", "unexpected statement")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::hn_oracle;

    #[test]
    fn levels_and_defaults() {
        assert_eq!(available_levels(2), [0, 2, 4]);
        assert_eq!(available_levels(3), [0, 2, 4, 6, 8]);
        for p in [2u64, 3, 5, 7, 11, 13] {
            assert_eq!(available_levels(p).len() as u64, (3 * p).div_ceil(2));
            assert!(2 * default_summands(p) as u64 > p);
            assert!(2 * (default_summands(p) as u64 - 1) <= p);
        }
    }

    #[test]
    fn p3_two_summands() {
        let cert = build_counterexample(3, 2).unwrap();
        assert_eq!(
            cert.outcome(),
            &Outcome::Pass {
                hn_length: 4,
                exceeds_p: true
            }
        );
        let f = cert.filtration().unwrap();
        assert_eq!(f.slopes(), [0, -3, -24, -27].map(Slope::integer));
        assert_eq!(*f, hn_oracle(cert.split_lines()));
        let rows: Vec<(i64, i64)> = cert
            .rows()
            .iter()
            .map(|r| (r.deg_sub, r.deg_quot))
            .collect();
        assert_eq!(rows, [(-9, 0), (-8, -1)]);
        assert!(cert.steps().iter().all(|s| s.passed));
        cert.replay().unwrap();
        let labels: Vec<&str> = cert
            .facts()
            .facts()
            .iter()
            .filter_map(|f| match &f.statement {
                Statement::ExtensionDegrees { sub, .. } => Some(sub.label.as_str()),
                _ => None,
            })
            .collect();
        assert_eq!(labels, ["O_X(-1)", "O_X(-1 + P_1)"]);
    }

    #[test]
    fn p2_two_summands() {
        let cert = build_counterexample(2, 2).unwrap();
        assert_eq!(
            cert.outcome(),
            &Outcome::Pass {
                hn_length: 4,
                exceeds_p: true
            }
        );
    }

    #[test]
    fn small_sums_do_not_exceed_p() {
        let cert = build_counterexample(3, 1).unwrap();
        assert_eq!(
            cert.outcome(),
            &Outcome::Pass {
                hn_length: 2,
                exceeds_p: false
            }
        );
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            build_counterexample(4, 2),
            Err(BuildError::Field(_))
        ));
        assert_eq!(
            build_counterexample(3, 0).unwrap_err(),
            BuildError::NoSummands
        );
        // p = 2 has levels 0, 2, 4 only; n = floor(7/2) = 3 fits but 4 does not.
        assert!(build_counterexample(2, 3).is_ok());
        assert_eq!(
            build_counterexample(2, 4).unwrap_err(),
            BuildError::TooManySummands {
                summands: 4,
                max: 3
            }
        );
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let mut cert = build_counterexample(2, 2).unwrap();
        let genus_fact = cert
            .log
            .facts()
            .iter()
            .position(|f| matches!(f.statement, Statement::Genus { .. }))
            .unwrap();
        let mut log = cert.log.facts().to_vec();
        log[genus_fact].statement = Statement::Genus {
            genus: 10,
            h1_dimension: 9,
        };
        cert.log = rebuild(log);
        assert_eq!(
            cert.replay(),
            Err(ReplayError::Mismatch {
                fact: FactId(genus_fact)
            })
        );
    }

    fn rebuild(facts: Vec<crate::bundles::Fact>) -> FactLog {
        let mut log = FactLog::new();
        log.extend_unchecked(facts);
        log
    }
}
