//! Formal vector bundles on a curve: line-bundle symbols, rank two
//! extensions, direct sums, exact slopes, Harder-Narasimhan filtrations of
//! formal sums, and certified facts about them.

mod certificate;
mod facts;
mod hn;
mod slope;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use certificate::{
    available_levels, base_class, build_counterexample, default_summands, family_equation,
    BuildError, Certificate, ExtensionRow, Outcome, ReplayError, Step,
};
pub use facts::{
    ClassOperation, Computation, ComputationError, Fact, FactId, FactLog, Justification, Rule,
    RuleRefusal, Statement,
};
pub use hn::{
    hn_merge, hn_oracle, slope_interleaving_holds, Filtration, HnError, HnPiece, HnQuotient,
};
pub use slope::Slope;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BundleError {
    Empty,
}

impl fmt::Display for BundleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleError::Empty => write!(f, "bundle has rank zero"),
        }
    }
}

impl core::error::Error for BundleError {}

/// A line bundle known only by name and degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineBundleSymbol {
    pub label: String,
    pub degree: i64,
}

impl LineBundleSymbol {
    pub fn new(label: impl Into<String>, degree: i64) -> Self {
        LineBundleSymbol {
            label: label.into(),
            degree,
        }
    }

    pub fn slope(&self) -> Slope {
        Slope::integer(self.degree)
    }

    /// Frobenius pull-back: the label gains `F*` and the degree is scaled by p.
    pub fn frobenius_pullback(&self, p: u64) -> Self {
        LineBundleSymbol {
            label: alloc::format!("F*{}", self.label),
            degree: self.degree * p as i64,
        }
    }
}

impl fmt::Display for LineBundleSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (deg {})", self.label, self.degree)
    }
}

/// A rank two bundle `0 -> sub -> E -> quotient -> 0` given by a class in
/// `Ext^1(quotient, sub)`, together with references to the facts certifying
/// that the class is nonzero and killed by Frobenius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionRecord {
    pub label: String,
    /// Name of the extension class, e.g. `c_2`.
    pub class: String,
    pub sub: LineBundleSymbol,
    pub quotient: LineBundleSymbol,
    pub class_nonzero: Option<FactId>,
    pub frobenius_kills_class: Option<FactId>,
}

impl ExtensionRecord {
    pub fn degree(&self) -> i64 {
        self.sub.degree + self.quotient.degree
    }

    pub fn slope(&self) -> Slope {
        Slope::new(self.degree(), 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Summand {
    Line(LineBundleSymbol),
    Extension(ExtensionRecord),
}

impl Summand {
    pub fn rank(&self) -> u64 {
        match self {
            Summand::Line(_) => 1,
            Summand::Extension(_) => 2,
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            Summand::Line(l) => l.degree,
            Summand::Extension(e) => e.degree(),
        }
    }
}

/// A direct sum of line symbols and extensions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalBundle {
    pub summands: Vec<Summand>,
}

impl FormalBundle {
    pub fn new(summands: Vec<Summand>) -> Self {
        FormalBundle { summands }
    }

    pub fn lines(lines: impl IntoIterator<Item = LineBundleSymbol>) -> Self {
        FormalBundle {
            summands: lines.into_iter().map(Summand::Line).collect(),
        }
    }

    pub fn rank(&self) -> u64 {
        self.summands.iter().map(Summand::rank).sum()
    }

    pub fn degree(&self) -> i64 {
        self.summands.iter().map(Summand::degree).sum()
    }

    pub fn slope(&self) -> Result<Slope, BundleError> {
        match self.rank() {
            0 => Err(BundleError::Empty),
            r => Ok(Slope::new(self.degree(), r as i64)),
        }
    }

    /// The line summands, in order.
    pub fn line_symbols(&self) -> Vec<LineBundleSymbol> {
        self.summands
            .iter()
            .filter_map(|s| match s {
                Summand::Line(l) => Some(l.clone()),
                Summand::Extension(_) => None,
            })
            .collect()
    }
}

/// Frobenius pull-back of an extension whose class is killed by Frobenius:
/// the sequence splits as `F*sub (+) F*quotient`.
pub fn frobenius_split(e: &ExtensionRecord, p: u64) -> Result<FormalBundle, RuleRefusal> {
    if e.frobenius_kills_class.is_none() {
        return Err(RuleRefusal::MissingPremise(
            "Frobenius kills the extension class",
        ));
    }
    Ok(FormalBundle::lines([
        e.sub.frobenius_pullback(p),
        e.quotient.frobenius_pullback(p),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(deg_sub: i64, deg_quot: i64) -> ExtensionRecord {
        ExtensionRecord {
            label: "E".into(),
            class: "c".into(),
            sub: LineBundleSymbol::new("L", deg_sub),
            quotient: LineBundleSymbol::new("M", deg_quot),
            class_nonzero: Some(FactId(0)),
            frobenius_kills_class: Some(FactId(1)),
        }
    }

    #[test]
    fn slopes() {
        assert_eq!(
            FormalBundle::lines([LineBundleSymbol::new("L", 7)])
                .slope()
                .unwrap(),
            Slope::integer(7)
        );
        let b = FormalBundle::lines([
            LineBundleSymbol::new("O", 0),
            LineBundleSymbol::new("O(-3)", -3),
        ]);
        assert_eq!(b.slope().unwrap(), Slope::new(-3, 2));
        assert_eq!(FormalBundle::default().slope(), Err(BundleError::Empty));
        for p in [2i64, 3, 5, 7] {
            for l in (0..3 * p).step_by(2) {
                let e = ext(-3 * p + l / 2, -l / 2);
                assert_eq!(e.degree(), -3 * p);
                assert_eq!(e.slope(), Slope::new(-3 * p, 2));
            }
        }
    }

    #[test]
    fn frobenius_split_degrees() {
        // E_0 at p = 3: O_X(-1) has degree -9.
        let s = frobenius_split(&ext(-9, 0), 3).unwrap();
        let degs: Vec<i64> = s.line_symbols().iter().map(|l| l.degree).collect();
        assert_eq!(degs, [-27, 0]);
        // E_2 at p = 3: degrees -8 and -1.
        let s = frobenius_split(&ext(-8, -1), 3).unwrap();
        let degs: Vec<i64> = s.line_symbols().iter().map(|l| l.degree).collect();
        assert_eq!(degs, [-24, -3]);
        let s = frobenius_split(&ext(0, 0), 5).unwrap();
        assert!(s.line_symbols().iter().all(|l| l.degree == 0));
        let mut missing = ext(-9, 0);
        missing.frobenius_kills_class = None;
        assert!(frobenius_split(&missing, 3).is_err());
    }
}
