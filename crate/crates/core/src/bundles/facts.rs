//! Checked facts and the inference rules that produce them.
//!
//! A fact is either the output of a re-executable [`Computation`] or the
//! conclusion of a [`Rule`] applied to earlier facts. Rules inspect their
//! premises and refuse with a [`RuleRefusal`] when a hypothesis is missing.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{frobenius_split, hn_merge, ExtensionRecord, Filtration, HnError, HnPiece, HnQuotient};
use super::{LineBundleSymbol, Slope};
use crate::cohomology::{connecting_expand, h1_basis, CohomologyError, Fraction, PlaneCurve};
use crate::divisors::{vanishing_divisor, DivisorError};
use crate::ffpoly::{Monomial, SparsePolynomial, Var};

/// Index of a fact in its [`FactLog`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactId(pub usize);

impl fmt::Display for FactId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// What is done to a class before it is tested for zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassOperation {
    Identity,
    Frobenius,
    /// Multiplication by a form.
    Multiply(SparsePolynomial),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Computation {
    /// Jacobian criterion for `V(equation)`.
    Smoothness { equation: SparsePolynomial },
    /// `(d-1)(d-2)/2` against `dim H^1(X, O_X)`.
    Genus { equation: SparsePolynomial },
    /// Expand `fraction` into a class, apply `operation`, test for zero.
    ClassTest {
        equation: SparsePolynomial,
        fraction: Fraction,
        operation: ClassOperation,
    },
    /// Points cut out by `variable = 0`.
    VanishingDivisor {
        equation: SparsePolynomial,
        variable: Var,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComputationError {
    Cohomology(CohomologyError),
    Divisor(DivisorError),
    /// The computation names a different curve than the one supplied.
    DifferentCurve,
}

impl fmt::Display for ComputationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComputationError::Cohomology(e) => write!(f, "{e}"),
            ComputationError::Divisor(e) => write!(f, "{e}"),
            ComputationError::DifferentCurve => write!(f, "computation refers to another curve"),
        }
    }
}

impl core::error::Error for ComputationError {}

impl From<CohomologyError> for ComputationError {
    fn from(e: CohomologyError) -> Self {
        ComputationError::Cohomology(e)
    }
}

impl From<DivisorError> for ComputationError {
    fn from(e: DivisorError) -> Self {
        ComputationError::Divisor(e)
    }
}

impl Computation {
    pub fn equation(&self) -> &SparsePolynomial {
        match self {
            Computation::Smoothness { equation }
            | Computation::Genus { equation }
            | Computation::ClassTest { equation, .. }
            | Computation::VanishingDivisor { equation, .. } => equation,
        }
    }

    /// Runs from scratch, building the curve first.
    pub fn run(&self) -> Result<Statement, ComputationError> {
        let curve = PlaneCurve::new(self.equation().clone())?;
        self.run_on(&curve)
    }

    /// Runs against an already constructed curve, which must have the same
    /// equation.
    pub fn run_on(&self, curve: &PlaneCurve) -> Result<Statement, ComputationError> {
        if curve.equation() != self.equation() {
            return Err(ComputationError::DifferentCurve);
        }
        match self {
            Computation::Smoothness { .. } => {
                let report = curve.smoothness();
                Ok(Statement::CurveSmoothness {
                    smooth: report.is_smooth(),
                    witnesses: report.pure_power_witnesses.clone(),
                    basis_size: report.basis_size,
                })
            }
            Computation::Genus { .. } => Ok(Statement::Genus {
                genus: curve.genus(),
                h1_dimension: h1_basis(curve, 0)?.len(),
            }),
            Computation::ClassTest {
                fraction,
                operation,
                ..
            } => {
                let c = connecting_expand(curve, fraction)?;
                let (expression, image) = match operation {
                    ClassOperation::Identity => (format!("{fraction}"), c),
                    ClassOperation::Frobenius => {
                        (format!("F*({fraction})"), c.frobenius_pullback()?)
                    }
                    ClassOperation::Multiply(g) => (format!("({g}) * {fraction}"), c.mult_map(g)?),
                };
                Ok(Statement::ClassValue {
                    expression,
                    twist: image.twist(),
                    zero: image.is_zero(),
                    representative: image.representative().clone(),
                })
            }
            Computation::VanishingDivisor { variable, .. } => {
                let vd = vanishing_divisor(curve, *variable)?;
                Ok(Statement::PointCount {
                    variable: *variable,
                    count: vd.count,
                    distinct: vd.distinct,
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    CurveSmoothness {
        smooth: bool,
        witnesses: Vec<(Var, Monomial)>,
        basis_size: usize,
    },
    Genus {
        genus: i64,
        h1_dimension: usize,
    },
    ClassValue {
        expression: String,
        twist: i32,
        zero: bool,
        representative: SparsePolynomial,
    },
    PointCount {
        variable: Var,
        count: u32,
        distinct: bool,
    },
    /// Multiplication by the coordinate factors through the twists by
    /// `P_1 + ... + P_l` for `l = 0, ..., count`.
    Factorization {
        variable: Var,
        count: u32,
    },
    ClassNonzero {
        class: String,
        level: usize,
    },
    FrobeniusKills {
        class: String,
        level: usize,
    },
    ExtensionDegrees {
        bundle: String,
        sub: LineBundleSymbol,
        quotient: LineBundleSymbol,
    },
    Semistable {
        bundle: String,
        rank: u64,
        slope: Slope,
    },
    FrobeniusSplits {
        bundle: String,
        high: LineBundleSymbol,
        low: LineBundleSymbol,
    },
    HarderNarasimhan {
        bundle: String,
        filtration: Filtration,
    },
    Conclusion {
        hn_length: usize,
        prime: u64,
        exceeds: bool,
    },
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::CurveSmoothness { smooth, .. } => {
                write!(
                    f,
                    "curve is {}",
                    if *smooth { "smooth" } else { "singular" }
                )
            }
            Statement::Genus {
                genus,
                h1_dimension,
            } => write!(f, "genus {genus}, dim H^1(O_X) = {h1_dimension}"),
            Statement::ClassValue {
                expression, zero, ..
            } => write!(f, "{expression} {} 0", if *zero { "=" } else { "!=" }),
            Statement::PointCount {
                variable,
                count,
                distinct,
            } => write!(
                f,
                "{variable} = 0 meets the curve in {count} {} points",
                if *distinct {
                    "distinct"
                } else {
                    "non-distinct"
                }
            ),
            Statement::Factorization { variable, count } => {
                write!(
                    f,
                    "multiplication by {variable} factors through {count} point twists"
                )
            }
            Statement::ClassNonzero { class, .. } => write!(f, "{class} != 0"),
            Statement::FrobeniusKills { class, .. } => write!(f, "F*({class}) = 0"),
            Statement::ExtensionDegrees {
                bundle,
                sub,
                quotient,
            } => write!(f, "{bundle}: 0 -> {sub} -> {bundle} -> {quotient} -> 0"),
            Statement::Semistable {
                bundle,
                rank,
                slope,
            } => write!(f, "{bundle} is semistable of rank {rank} and slope {slope}"),
            Statement::FrobeniusSplits { bundle, high, low } => {
                write!(f, "F*{bundle} = {high} + {low}")
            }
            Statement::HarderNarasimhan { bundle, filtration } => {
                write!(
                    f,
                    "HN filtration of {bundle} has length {}",
                    filtration.length()
                )
            }
            Statement::Conclusion {
                hn_length,
                prime,
                exceeds,
            } => write!(
                f,
                "HN length {hn_length} {} p = {prime}",
                if *exceeds { ">" } else { "<=" }
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// Distinct points on a coordinate line give the factorization of
    /// multiplication by that coordinate.
    DivisorFactorization,
    /// A class with nonzero image under a composite is nonzero at every
    /// intermediate stage.
    FunctorialityNonzero,
    /// Frobenius commutes with the induced maps, so images of a class killed
    /// by Frobenius are killed by Frobenius.
    FunctorialityFrobeniusZero,
    /// Degrees of the twisted line bundles from the point count.
    DivisorDegrees,
    /// A non-split extension of M by L with deg L < deg M whose class is
    /// killed by Frobenius is semistable.
    ExtensionSemistable,
    /// A direct sum of semistable bundles of equal slope is semistable.
    EqualSlopeSum,
    /// Frobenius pull-back of an extension with Frobenius-killed class
    /// splits.
    FrobeniusSplitting,
    HnMerge,
    Conclusion,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::DivisorFactorization => "divisor-factorization",
            Rule::FunctorialityNonzero => "functoriality-nonzero",
            Rule::FunctorialityFrobeniusZero => "functoriality-frobenius-zero",
            Rule::DivisorDegrees => "divisor-degrees",
            Rule::ExtensionSemistable => "extension-semistable",
            Rule::EqualSlopeSum => "equal-slope-sum",
            Rule::FrobeniusSplitting => "frobenius-splitting",
            Rule::HnMerge => "hn-merge",
            Rule::Conclusion => "conclusion",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// Supplied from outside, e.g. a flag in a user's bundle description.
    Assumption,
    Computation(Computation),
    Rule {
        rule: Rule,
        premises: Vec<FactId>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub id: FactId,
    pub step: String,
    pub statement: Statement,
    pub justification: Justification,
}

impl Fact {
    pub fn premises(&self) -> &[FactId] {
        match &self.justification {
            Justification::Assumption | Justification::Computation(_) => &[],
            Justification::Rule { premises, .. } => premises,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleRefusal {
    MissingPremise(&'static str),
    /// The referenced fact does not state what the rule needs.
    WrongPremise {
        fact: FactId,
        expected: &'static str,
    },
    /// `deg L < deg M` fails.
    DegreeCondition {
        deg_sub: i64,
        deg_quotient: i64,
    },
    DegreeMismatch {
        expected: i64,
        found: i64,
    },
    LevelOutOfRange {
        level: usize,
        count: u32,
    },
    SlopeMismatch,
    Hn(HnError),
}

impl fmt::Display for RuleRefusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleRefusal::MissingPremise(what) => write!(f, "missing premise: {what}"),
            RuleRefusal::WrongPremise { fact, expected } => {
                write!(f, "fact {fact} does not establish {expected}")
            }
            RuleRefusal::DegreeCondition {
                deg_sub,
                deg_quotient,
            } => write!(
                f,
                "need deg L < deg M, got deg L = {deg_sub}, deg M = {deg_quotient}"
            ),
            RuleRefusal::DegreeMismatch { expected, found } => {
                write!(f, "expected degree {expected}, found {found}")
            }
            RuleRefusal::LevelOutOfRange { level, count } => {
                write!(f, "level {level} exceeds the {count} available points")
            }
            RuleRefusal::SlopeMismatch => write!(f, "summands have different slopes"),
            RuleRefusal::Hn(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for RuleRefusal {}

/// An append-only list of facts; every premise refers to an earlier entry.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactLog {
    facts: Vec<Fact>,
}

impl FactLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn get(&self, id: FactId) -> Option<&Fact> {
        self.facts.get(id.0)
    }

    #[cfg(test)]
    pub(crate) fn extend_unchecked(&mut self, facts: Vec<Fact>) {
        self.facts.extend(facts);
    }

    fn push(&mut self, step: &str, statement: Statement, justification: Justification) -> FactId {
        let id = FactId(self.facts.len());
        self.facts.push(Fact {
            id,
            step: step.into(),
            statement,
            justification,
        });
        id
    }

    fn rule(
        &mut self,
        step: &str,
        statement: Statement,
        rule: Rule,
        premises: Vec<FactId>,
    ) -> FactId {
        self.push(step, statement, Justification::Rule { rule, premises })
    }

    fn statement(&self, id: FactId, expected: &'static str) -> Result<&Statement, RuleRefusal> {
        self.get(id)
            .map(|f| &f.statement)
            .ok_or(RuleRefusal::WrongPremise { fact: id, expected })
    }

    /// Records `statement` without justification.
    pub fn assume(&mut self, step: &str, statement: Statement) -> FactId {
        self.push(step, statement, Justification::Assumption)
    }

    /// Runs `computation` on `curve` and records the result.
    pub fn compute(
        &mut self,
        step: &str,
        computation: Computation,
        curve: &PlaneCurve,
    ) -> Result<FactId, ComputationError> {
        let statement = computation.run_on(curve)?;
        Ok(self.push(step, statement, Justification::Computation(computation)))
    }

    /// From distinct points on `variable = 0`: multiplication by the
    /// variable factors through every partial twist by those points.
    pub fn divisor_factorization(
        &mut self,
        step: &str,
        points: FactId,
    ) -> Result<FactId, RuleRefusal> {
        const WHAT: &str = "distinct points on a coordinate line";
        match self.statement(points, WHAT)? {
            &Statement::PointCount {
                variable,
                count,
                distinct: true,
            } => Ok(self.rule(
                step,
                Statement::Factorization { variable, count },
                Rule::DivisorFactorization,
                alloc::vec![points],
            )),
            _ => Err(RuleRefusal::WrongPremise {
                fact: points,
                expected: WHAT,
            }),
        }
    }

    fn factorization_count(&self, id: FactId, level: usize) -> Result<u32, RuleRefusal> {
        const WHAT: &str = "a factorization";
        match *self.statement(id, WHAT)? {
            Statement::Factorization { count, .. } if level <= count as usize => Ok(count),
            Statement::Factorization { count, .. } => {
                Err(RuleRefusal::LevelOutOfRange { level, count })
            }
            _ => Err(RuleRefusal::WrongPremise {
                fact: id,
                expected: WHAT,
            }),
        }
    }

    /// `c_l != 0` from a nonzero image of `c` under the full composite.
    pub fn functoriality_nonzero(
        &mut self,
        step: &str,
        upstream: FactId,
        factorization: FactId,
        level: usize,
    ) -> Result<FactId, RuleRefusal> {
        const WHAT: &str = "a nonzero image under the composite";
        match self.statement(upstream, WHAT)? {
            Statement::ClassValue { zero: false, .. } => {}
            _ => {
                return Err(RuleRefusal::WrongPremise {
                    fact: upstream,
                    expected: WHAT,
                })
            }
        }
        self.factorization_count(factorization, level)?;
        Ok(self.rule(
            step,
            Statement::ClassNonzero {
                class: format!("c_{level}"),
                level,
            },
            Rule::FunctorialityNonzero,
            alloc::vec![upstream, factorization],
        ))
    }

    /// `F*(c_l) = 0` from `F*(c) = 0`.
    pub fn functoriality_frobenius_zero(
        &mut self,
        step: &str,
        premise: FactId,
        factorization: FactId,
        level: usize,
    ) -> Result<FactId, RuleRefusal> {
        const WHAT: &str = "a class killed by Frobenius";
        match self.statement(premise, WHAT)? {
            Statement::ClassValue { zero: true, .. } => {}
            _ => {
                return Err(RuleRefusal::WrongPremise {
                    fact: premise,
                    expected: WHAT,
                })
            }
        }
        self.factorization_count(factorization, level)?;
        Ok(self.rule(
            step,
            Statement::FrobeniusKills {
                class: format!("c_{level}"),
                level,
            },
            Rule::FunctorialityFrobeniusZero,
            alloc::vec![premise, factorization],
        ))
    }

    /// Checks `deg sub = -d + l/2` and `deg quotient = -l/2`, with `d` the
    /// number of points on the line, and records the extension's shape.
    pub fn divisor_degrees(
        &mut self,
        step: &str,
        factorization: FactId,
        level: usize,
        bundle: &str,
        sub: LineBundleSymbol,
        quotient: LineBundleSymbol,
    ) -> Result<FactId, RuleRefusal> {
        let d = self.factorization_count(factorization, level)? as i64;
        let half = (level / 2) as i64;
        for (expected, found) in [(-d + half, sub.degree), (-half, quotient.degree)] {
            if expected != found {
                return Err(RuleRefusal::DegreeMismatch { expected, found });
            }
        }
        Ok(self.rule(
            step,
            Statement::ExtensionDegrees {
                bundle: bundle.into(),
                sub,
                quotient,
            },
            Rule::DivisorDegrees,
            alloc::vec![factorization],
        ))
    }

    /// Semistability of a non-split extension whose class dies under
    /// Frobenius, when the sub has smaller degree than the quotient.
    pub fn lemma_semistable(
        &mut self,
        step: &str,
        e: &ExtensionRecord,
    ) -> Result<FactId, RuleRefusal> {
        if e.sub.degree >= e.quotient.degree {
            return Err(RuleRefusal::DegreeCondition {
                deg_sub: e.sub.degree,
                deg_quotient: e.quotient.degree,
            });
        }
        let nonzero = e
            .class_nonzero
            .ok_or(RuleRefusal::MissingPremise("extension class is nonzero"))?;
        let killed = e.frobenius_kills_class.ok_or(RuleRefusal::MissingPremise(
            "Frobenius kills the extension class",
        ))?;
        match self.statement(nonzero, "extension class is nonzero")? {
            Statement::ClassNonzero { class, .. } if *class == e.class => {}
            _ => {
                return Err(RuleRefusal::WrongPremise {
                    fact: nonzero,
                    expected: "extension class is nonzero",
                })
            }
        }
        match self.statement(killed, "Frobenius kills the extension class")? {
            Statement::FrobeniusKills { class, .. } if *class == e.class => {}
            _ => {
                return Err(RuleRefusal::WrongPremise {
                    fact: killed,
                    expected: "Frobenius kills the extension class",
                })
            }
        }
        Ok(self.rule(
            step,
            Statement::Semistable {
                bundle: e.label.clone(),
                rank: 2,
                slope: e.slope(),
            },
            Rule::ExtensionSemistable,
            alloc::vec![nonzero, killed],
        ))
    }

    /// A direct sum of semistable bundles of one slope is semistable.
    pub fn equal_slope_sum(
        &mut self,
        step: &str,
        bundle: &str,
        summands: &[FactId],
    ) -> Result<FactId, RuleRefusal> {
        let mut rank = 0;
        let mut slope = None;
        for &id in summands {
            match self.statement(id, "a semistable summand")? {
                Statement::Semistable {
                    rank: r, slope: s, ..
                } => {
                    if slope.is_some_and(|t| t != *s) {
                        return Err(RuleRefusal::SlopeMismatch);
                    }
                    slope = Some(*s);
                    rank += r;
                }
                _ => {
                    return Err(RuleRefusal::WrongPremise {
                        fact: id,
                        expected: "a semistable summand",
                    })
                }
            }
        }
        let slope = slope.ok_or(RuleRefusal::MissingPremise("at least one summand"))?;
        Ok(self.rule(
            step,
            Statement::Semistable {
                bundle: bundle.into(),
                rank,
                slope,
            },
            Rule::EqualSlopeSum,
            summands.to_vec(),
        ))
    }

    /// `F*E = F*M (+) F*L`; the higher-degree summand `F*M` is listed first.
    pub fn frobenius_split(
        &mut self,
        step: &str,
        e: &ExtensionRecord,
        p: u64,
    ) -> Result<FactId, RuleRefusal> {
        let killed = e.frobenius_kills_class.ok_or(RuleRefusal::MissingPremise(
            "Frobenius kills the extension class",
        ))?;
        match self.statement(killed, "Frobenius kills the extension class")? {
            Statement::FrobeniusKills { class, .. } if *class == e.class => {}
            _ => {
                return Err(RuleRefusal::WrongPremise {
                    fact: killed,
                    expected: "Frobenius kills the extension class",
                })
            }
        }
        let mut lines = frobenius_split(e, p)?.line_symbols();
        let high = lines.pop().expect("two summands");
        let low = lines.pop().expect("two summands");
        Ok(self.rule(
            step,
            Statement::FrobeniusSplits {
                bundle: e.label.clone(),
                high,
                low,
            },
            Rule::FrobeniusSplitting,
            alloc::vec![killed],
        ))
    }

    /// HN filtration of the direct sum of the given split pull-backs.
    pub fn hn_of_splits(
        &mut self,
        step: &str,
        bundle: &str,
        splits: &[FactId],
    ) -> Result<FactId, RuleRefusal> {
        let mut pieces = Vec::new();
        for &id in splits {
            match self.statement(id, "a Frobenius splitting")? {
                Statement::FrobeniusSplits { bundle, high, low } => {
                    pieces.push(HnPiece::Filtered {
                        label: format!("F*{bundle}"),
                        quotients: alloc::vec![HnQuotient::line(high), HnQuotient::line(low)],
                    });
                }
                _ => {
                    return Err(RuleRefusal::WrongPremise {
                        fact: id,
                        expected: "a Frobenius splitting",
                    })
                }
            }
        }
        let filtration = hn_merge(&pieces).map_err(RuleRefusal::Hn)?;
        Ok(self.rule(
            step,
            Statement::HarderNarasimhan {
                bundle: bundle.into(),
                filtration,
            },
            Rule::HnMerge,
            splits.to_vec(),
        ))
    }

    /// Compares the HN length with `p`.
    pub fn conclusion(
        &mut self,
        step: &str,
        hn: FactId,
        prime: u64,
    ) -> Result<FactId, RuleRefusal> {
        match self.statement(hn, "an HN filtration")? {
            Statement::HarderNarasimhan { filtration, .. } => {
                let hn_length = filtration.length();
                Ok(self.rule(
                    step,
                    Statement::Conclusion {
                        hn_length,
                        prime,
                        exceeds: hn_length as u64 > prime,
                    },
                    Rule::Conclusion,
                    alloc::vec![hn],
                ))
            }
            _ => Err(RuleRefusal::WrongPremise {
                fact: hn,
                expected: "an HN filtration",
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log_with_classes() -> (FactLog, FactId, FactId, FactId) {
        let field = crate::ffpoly::PrimeField::new(2).unwrap();
        let rep = SparsePolynomial::zero(field);
        let mut log = FactLog::new();
        let nonzero = log.assume(
            "z*c",
            Statement::ClassValue {
                expression: "z*c".into(),
                twist: 0,
                zero: false,
                representative: rep.clone(),
            },
        );
        let killed = log.assume(
            "F*c",
            Statement::ClassValue {
                expression: "F*c".into(),
                twist: -2,
                zero: true,
                representative: rep,
            },
        );
        let points = log.assume(
            "points",
            Statement::PointCount {
                variable: Var::Z,
                count: 6,
                distinct: true,
            },
        );
        let fact = log.divisor_factorization("factor", points).unwrap();
        (log, nonzero, killed, fact)
    }

    fn record(sub: i64, quotient: i64) -> ExtensionRecord {
        ExtensionRecord {
            label: "E_2".into(),
            class: "c_2".into(),
            sub: LineBundleSymbol::new("L", sub),
            quotient: LineBundleSymbol::new("M", quotient),
            class_nonzero: None,
            frobenius_kills_class: None,
        }
    }

    #[test]
    fn lemma_needs_every_hypothesis() {
        let (mut log, nonzero, killed, fact) = log_with_classes();
        let n = log.functoriality_nonzero("c_2", nonzero, fact, 2).unwrap();
        let k = log
            .functoriality_frobenius_zero("F*c_2", killed, fact, 2)
            .unwrap();

        let mut e = record(-5, -1);
        assert_eq!(
            log.lemma_semistable("E", &e),
            Err(RuleRefusal::MissingPremise("extension class is nonzero"))
        );
        e.class_nonzero = Some(n);
        assert!(log.lemma_semistable("E", &e).is_err());
        e.frobenius_kills_class = Some(k);
        let id = log.lemma_semistable("E", &e).unwrap();
        assert_eq!(
            log.get(id).unwrap().statement,
            Statement::Semistable {
                bundle: "E_2".into(),
                rank: 2,
                slope: Slope::integer(-3)
            }
        );

        let mut equal = record(-3, -3);
        equal.class_nonzero = Some(n);
        equal.frobenius_kills_class = Some(k);
        assert_eq!(
            log.lemma_semistable("E", &equal),
            Err(RuleRefusal::DegreeCondition {
                deg_sub: -3,
                deg_quotient: -3
            })
        );
        // Premises pointing at the wrong kind of fact are refused.
        let mut swapped = record(-5, -1);
        swapped.class_nonzero = Some(k);
        swapped.frobenius_kills_class = Some(n);
        assert!(matches!(
            log.lemma_semistable("E", &swapped),
            Err(RuleRefusal::WrongPremise { .. })
        ));
    }

    #[test]
    fn functoriality_refuses_bad_premises() {
        let (mut log, nonzero, killed, fact) = log_with_classes();
        assert!(log.functoriality_nonzero("x", killed, fact, 2).is_err());
        assert!(log
            .functoriality_frobenius_zero("x", nonzero, fact, 2)
            .is_err());
        assert_eq!(
            log.functoriality_nonzero("x", nonzero, fact, 7),
            Err(RuleRefusal::LevelOutOfRange { level: 7, count: 6 })
        );
        // Level 0 restates the premise about c itself.
        let id = log
            .functoriality_frobenius_zero("x", killed, fact, 0)
            .unwrap();
        assert_eq!(log.get(id).unwrap().premises(), &[killed, fact]);
    }

    #[test]
    fn equal_slope_sum_checks_slopes() {
        let mut log = FactLog::new();
        let a = log.assume(
            "a",
            Statement::Semistable {
                bundle: "A".into(),
                rank: 2,
                slope: Slope::new(-3, 2),
            },
        );
        let b = log.assume(
            "b",
            Statement::Semistable {
                bundle: "B".into(),
                rank: 2,
                slope: Slope::new(-3, 2),
            },
        );
        let c = log.assume(
            "c",
            Statement::Semistable {
                bundle: "C".into(),
                rank: 1,
                slope: Slope::integer(0),
            },
        );
        let s = log.equal_slope_sum("S", "S", &[a, b]).unwrap();
        assert!(matches!(
            log.get(s).unwrap().statement,
            Statement::Semistable { rank: 4, .. }
        ));
        assert_eq!(
            log.equal_slope_sum("S", "S", &[a, c]),
            Err(RuleRefusal::SlopeMismatch)
        );
        assert!(log.equal_slope_sum("S", "S", &[]).is_err());
    }

    #[test]
    fn degrees_are_checked_against_point_count() {
        let (mut log, _, _, fact) = log_with_classes();
        let ok = log.divisor_degrees(
            "deg",
            fact,
            2,
            "E_2",
            LineBundleSymbol::new("L", -5),
            LineBundleSymbol::new("M", -1),
        );
        assert!(ok.is_ok());
        assert_eq!(
            log.divisor_degrees(
                "deg",
                fact,
                2,
                "E_2",
                LineBundleSymbol::new("L", -6),
                LineBundleSymbol::new("M", -1),
            ),
            Err(RuleRefusal::DegreeMismatch {
                expected: -5,
                found: -6
            })
        );
    }
}
