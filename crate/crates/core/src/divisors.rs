//! The divisor cut out on a plane curve by a coordinate line.
//!
//! Points are never given coordinates. Only their number, multiplicities
//! and distinctness are certified, all of which are decided over F_p and
//! are unchanged by extending the base field.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::cohomology::PlaneCurve;
use crate::ffpoly::{univariate_gcd, Monomial, SparsePolynomial, UnivariatePoly, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisorError {
    /// The coordinate divides the curve equation, so its zero set is not a
    /// divisor on the curve.
    VariableDividesCurve(Var),
    NotProjectiveVariable(Var),
    OddLevel(usize),
    LevelOutOfRange {
        level: usize,
        count: usize,
    },
    NotReduced,
}

impl fmt::Display for DivisorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorError::VariableDividesCurve(v) => write!(f, "{v} divides the curve equation"),
            DivisorError::NotProjectiveVariable(v) => write!(f, "{v} is not one of x, y, z"),
            DivisorError::OddLevel(l) => write!(f, "level {l} is odd"),
            DivisorError::LevelOutOfRange { level, count } => {
                write!(f, "level {level} exceeds the {count} available points")
            }
            DivisorError::NotReduced => write!(f, "divisor has repeated points"),
        }
    }
}

impl core::error::Error for DivisorError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointLabel {
    /// 1-based label `P_index`.
    pub index: usize,
    pub multiplicity: u32,
}

/// A formal sum of labelled points on the zero set of `variable`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorSymbol {
    pub variable: Var,
    pub points: Vec<PointLabel>,
}

impl DivisorSymbol {
    pub fn empty(variable: Var) -> Self {
        DivisorSymbol {
            variable,
            points: Vec::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.points.iter().all(|p| p.multiplicity == 1)
    }

    /// `P_1 + P_3 + 2*P_4`, or `0` when empty.
    pub fn label(&self) -> String {
        use core::fmt::Write;
        if self.points.is_empty() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            if p.multiplicity != 1 {
                let _ = write!(s, "{}*", p.multiplicity);
            }
            let _ = write!(s, "P_{}", p.index);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingDivisor {
    pub count: u32,
    pub distinct: bool,
    pub divisor: DivisorSymbol,
}

/// Restricts the curve to `variable = 0` and analyses the resulting binary
/// form: pure powers of the two remaining coordinates are split off, the
/// rest is dehomogenized and tested for squarefreeness by
/// `gcd(g, g') = 1`. Multiplicities come from a squarefree decomposition.
pub fn vanishing_divisor(
    curve: &PlaneCurve,
    variable: Var,
) -> Result<VanishingDivisor, DivisorError> {
    if variable == Var::T {
        return Err(DivisorError::NotProjectiveVariable(variable));
    }
    let form = curve.equation().restrict_to_zero(variable);
    if form.is_zero() {
        return Err(DivisorError::VariableDividesCurve(variable));
    }
    let mut rest = Var::PROJECTIVE.into_iter().filter(|&v| v != variable);
    let (u, v) = (rest.next().unwrap(), rest.next().unwrap());

    let min_exp = |w: Var| form.monomials().map(|m| m.exponent(w)).min().unwrap_or(0);
    let (a, b) = (min_exp(u), min_exp(v));
    let stripped = form.mul_monomial(&Monomial::var(u, -a).mul(&Monomial::var(v, -b)));

    // Dehomogenize v = 1 and read the result as a polynomial in t.
    let field = form.field();
    let mut dehom = SparsePolynomial::zero(field);
    for (m, c) in stripped.terms() {
        dehom.add_term(c, Monomial::var(Var::T, m.exponent(u)));
    }
    let uni = UnivariatePoly::from_sparse(&dehom, Var::T).expect("univariate by construction");

    let squarefree_rest = match uni.degree() {
        Some(0) => true,
        _ => {
            let deriv = uni.derivative().to_sparse(Var::T);
            !deriv.is_zero()
                && univariate_gcd(&dehom, &deriv)
                    .expect("nonzero univariate inputs")
                    .leading_monomial()
                    == Some(Monomial::ONE)
        }
    };
    let distinct = a <= 1 && b <= 1 && squarefree_rest;

    let mut multiplicities: Vec<u32> = Vec::new();
    if a > 0 {
        multiplicities.push(a as u32);
    }
    if b > 0 {
        multiplicities.push(b as u32);
    }
    for (g, mult) in uni.squarefree_decomposition() {
        for _ in 0..g.degree().unwrap_or(0) {
            multiplicities.push(mult);
        }
    }
    let points: Vec<PointLabel> = multiplicities
        .into_iter()
        .enumerate()
        .map(|(i, multiplicity)| PointLabel {
            index: i + 1,
            multiplicity,
        })
        .collect();
    let divisor = DivisorSymbol { variable, points };
    let count = divisor.degree();
    debug_assert_eq!(count as i32, curve.degree());
    debug_assert_eq!(distinct, divisor.is_reduced());
    Ok(VanishingDivisor {
        count,
        distinct,
        divisor,
    })
}

/// Splits `P_1 + ... + P_l` into the odd-indexed part `I` and the
/// even-indexed part `J`, each of degree `l / 2`.
pub fn split_divisor(
    divisor: &DivisorSymbol,
    level: usize,
) -> Result<(DivisorSymbol, DivisorSymbol), DivisorError> {
    if level % 2 == 1 {
        return Err(DivisorError::OddLevel(level));
    }
    if level > divisor.points.len() {
        return Err(DivisorError::LevelOutOfRange {
            level,
            count: divisor.points.len(),
        });
    }
    if !divisor.is_reduced() {
        return Err(DivisorError::NotReduced);
    }
    let (odd, even): (Vec<PointLabel>, Vec<PointLabel>) = divisor.points[..level]
        .iter()
        .partition(|p| p.index % 2 == 1);
    Ok((
        DivisorSymbol {
            variable: divisor.variable,
            points: odd,
        },
        DivisorSymbol {
            variable: divisor.variable,
            points: even,
        },
    ))
}
