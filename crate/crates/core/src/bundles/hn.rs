//! Harder-Narasimhan filtrations of formal direct sums.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{LineBundleSymbol, Slope};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HnError {
    /// A piece has rank zero or an empty quotient list.
    MissingSlope(String),
    /// A piece's quotient list is not strictly decreasing in slope.
    NotDecreasing(String),
}

impl fmt::Display for HnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HnError::MissingSlope(l) => write!(f, "piece {l} has no slope data"),
            HnError::NotDecreasing(l) => {
                write!(
                    f,
                    "quotients of piece {l} are not strictly decreasing in slope"
                )
            }
        }
    }
}

impl core::error::Error for HnError {}

/// A semistable graded piece: a direct sum of the named bundles, all of the
/// same slope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnQuotient {
    pub labels: Vec<String>,
    pub rank: u64,
    pub degree: i64,
}

impl HnQuotient {
    pub fn line(l: &LineBundleSymbol) -> Self {
        HnQuotient {
            labels: alloc::vec![l.label.clone()],
            rank: 1,
            degree: l.degree,
        }
    }

    pub fn slope(&self) -> Slope {
        Slope::new(self.degree, self.rank as i64)
    }
}

/// Input to [`hn_merge`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HnPiece {
    /// A semistable bundle of known rank and degree.
    Semistable {
        label: String,
        rank: u64,
        degree: i64,
    },
    /// A bundle whose HN quotients are already known (strictly decreasing).
    Filtered {
        label: String,
        quotients: Vec<HnQuotient>,
    },
}

impl HnPiece {
    pub fn line(l: &LineBundleSymbol) -> Self {
        HnPiece::Semistable {
            label: l.label.clone(),
            rank: 1,
            degree: l.degree,
        }
    }

    fn label(&self) -> &str {
        match self {
            HnPiece::Semistable { label, .. } | HnPiece::Filtered { label, .. } => label,
        }
    }
}

/// A filtration recorded by its graded pieces, from the maximal
/// destabilizing subbundle down to the last quotient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Filtration {
    pub quotients: Vec<HnQuotient>,
}

impl Filtration {
    /// Number of nonzero steps `0 = F_0 ⊂ F_1 ⊂ ... ⊂ F_len`.
    pub fn length(&self) -> usize {
        self.quotients.len()
    }

    pub fn slopes(&self) -> Vec<Slope> {
        self.quotients.iter().map(HnQuotient::slope).collect()
    }

    pub fn rank(&self) -> u64 {
        self.quotients.iter().map(|q| q.rank).sum()
    }

    pub fn degree(&self) -> i64 {
        self.quotients.iter().map(|q| q.degree).sum()
    }

    /// Quotients have positive rank and strictly decreasing slopes. Together
    /// with semistability of each quotient this characterizes the HN
    /// filtration.
    pub fn is_strictly_decreasing(&self) -> bool {
        self.quotients.iter().all(|q| q.rank > 0) && self.slopes().windows(2).all(|w| w[0] > w[1])
    }
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0")?;
        let mut acc: Vec<&str> = Vec::new();
        for q in &self.quotients {
            acc.extend(q.labels.iter().map(String::as_str));
            write!(f, " ⊂ ")?;
            for (i, l) in acc.iter().enumerate() {
                if i > 0 {
                    write!(f, " ⊕ ")?;
                }
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

fn group_sorted(sorted: Vec<HnQuotient>) -> Filtration {
    let mut out: Vec<HnQuotient> = Vec::new();
    for q in sorted {
        match out.last_mut() {
            Some(last) if last.slope() == q.slope() => {
                last.labels.extend(q.labels);
                last.rank += q.rank;
                last.degree += q.degree;
            }
            _ => out.push(q),
        }
    }
    for q in &mut out {
        q.labels.sort();
    }
    Filtration { quotients: out }
}

/// HN filtration of a direct sum: all graded pieces are merged by slope in
/// strictly decreasing order, equal slopes being combined into one
/// (polystable) quotient.
pub fn hn_merge(pieces: &[HnPiece]) -> Result<Filtration, HnError> {
    let mut all: Vec<HnQuotient> = Vec::new();
    for piece in pieces {
        match piece {
            HnPiece::Semistable {
                label,
                rank,
                degree,
            } => {
                if *rank == 0 {
                    return Err(HnError::MissingSlope(label.clone()));
                }
                all.push(HnQuotient {
                    labels: alloc::vec![label.clone()],
                    rank: *rank,
                    degree: *degree,
                });
            }
            HnPiece::Filtered { quotients, .. } => {
                let f = Filtration {
                    quotients: quotients.clone(),
                };
                if quotients.is_empty() || quotients.iter().any(|q| q.rank == 0) {
                    return Err(HnError::MissingSlope(piece.label().into()));
                }
                if !f.is_strictly_decreasing() {
                    return Err(HnError::NotDecreasing(piece.label().into()));
                }
                all.extend(f.quotients);
            }
        }
    }
    all.sort_by_key(|q| core::cmp::Reverse(q.slope()));
    Ok(group_sorted(all))
}

/// Independent reference for direct sums of line bundles: sort degrees in
/// descending order and group ties.
pub fn hn_oracle(lines: &[LineBundleSymbol]) -> Filtration {
    let mut sorted: Vec<&LineBundleSymbol> = lines.iter().collect();
    sorted.sort_by_key(|l| core::cmp::Reverse(l.degree));
    let mut quotients: Vec<HnQuotient> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let d = sorted[i].degree;
        let mut labels = Vec::new();
        while i < sorted.len() && sorted[i].degree == d {
            labels.push(sorted[i].label.clone());
            i += 1;
        }
        labels.sort();
        quotients.push(HnQuotient {
            rank: labels.len() as u64,
            degree: d * labels.len() as i64,
            labels,
        });
    }
    Filtration { quotients }
}

/// For rank two pieces `F*E_i = L_i (+) G_i` of common slope `mu`, so that
/// `mu(G_i) = 2 mu - mu(L_i)`: if the `L_i` slopes strictly decrease then
/// the `G_i` slopes strictly increase and every `L_i` exceeds every `G_j`.
/// Returns whether all of this holds for the given slopes.
pub fn slope_interleaving_holds(high: &[Slope], low: &[Slope]) -> bool {
    if high.len() != low.len() || high.is_empty() {
        return false;
    }
    let common = Slope::new(
        high[0].numerator() * low[0].denominator() + low[0].numerator() * high[0].denominator(),
        high[0].denominator() * low[0].denominator(),
    );
    let sums_agree = high.iter().zip(low).all(|(h, l)| {
        Slope::new(
            h.numerator() * l.denominator() + l.numerator() * h.denominator(),
            h.denominator() * l.denominator(),
        ) == common
    });
    let highs_decrease = high.windows(2).all(|w| w[0] > w[1]);
    let lows_increase = low.windows(2).all(|w| w[0] < w[1]);
    let min_high = high.iter().min().unwrap();
    let max_low = low.iter().max().unwrap();
    sums_agree && highs_decrease && lows_increase && min_high > max_low
}
