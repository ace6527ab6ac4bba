//! Cohomology of line bundles on a smooth plane curve `X = V(f)` of degree
//! `d`, computed in the negative-monomial model.
//!
//! `H^2(P^2, O(k))` is the span of the monomials `x^a y^b z^c` with
//! `a, b, c <= -1` and `a + b + c = k`. Multiplication by a form acts by
//! multiplying and discarding every monomial with a nonnegative exponent.
//! From `0 -> O(m - d) -> O(m) -> O_X(m) -> 0` and `H^1(P^2, O(m)) = 0`,
//!
//! ```text
//! H^1(X, O_X(m)) = ker( f : H^2(P^2, O(m - d)) -> H^2(P^2, O(m)) ),
//! ```
//!
//! so a class on `X` is a kernel vector and a zero test is literal.
//!
//! Frobenius acts on this kernel by `u -> f^(p-1) * u^[p]`, where `u^[p]`
//! raises every monomial to its p-th power. Classes given as Čech fractions
//! `a / (y^b z^c)` are moved into the model by expanding `a / (y^b z^c f)`
//! in descending powers of `x`; the overall sign of this identification is
//! not tracked, which does not affect any zero/nonzero statement.

use alloc::vec::Vec;
use core::fmt;

use crate::ffpoly::{Monomial, PrimeField, SparsePolynomial, Var};
use crate::groebner::{is_projectively_smooth, GroebnerError, SmoothnessReport};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    /// A multiplier or numerator has a negative exponent.
    NegativeExponent(Monomial),
    /// A representative contains a monomial outside the negative-monomial model.
    NotInModel(Monomial),
    /// A representative or form has mixed degrees, or the wrong degree.
    DegreeMismatch {
        expected: i32,
        found: i32,
    },
    NotHomogeneous,
    ModulusMismatch,
    /// The representative is not killed by the curve equation.
    NotInKernel,
    /// Operation needs a smooth curve.
    NotSmooth,
    DifferentCurves,
    /// The curve equation lacks a pure `x^d` term.
    NoLeadingXPower,
    Curve(GroebnerError),
}

impl fmt::Display for CohomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyError::NegativeExponent(m) => {
                write!(f, "multiplier has negative exponent in {m}")
            }
            CohomologyError::NotInModel(m) => {
                write!(f, "monomial {m} does not have all exponents negative")
            }
            CohomologyError::DegreeMismatch { expected, found } => {
                write!(f, "expected degree {expected}, found {found}")
            }
            CohomologyError::NotHomogeneous => write!(f, "polynomial is not homogeneous"),
            CohomologyError::ModulusMismatch => write!(f, "modulus mismatch"),
            CohomologyError::NotInKernel => {
                write!(
                    f,
                    "representative is not in the kernel of multiplication by f"
                )
            }
            CohomologyError::NotSmooth => write!(f, "curve is not smooth"),
            CohomologyError::DifferentCurves => write!(f, "classes live on different curves"),
            CohomologyError::NoLeadingXPower => {
                write!(f, "curve equation has no x^d term")
            }
            CohomologyError::Curve(e) => write!(f, "curve: {e}"),
        }
    }
}

impl core::error::Error for CohomologyError {}

impl From<GroebnerError> for CohomologyError {
    fn from(e: GroebnerError) -> Self {
        CohomologyError::Curve(e)
    }
}

/// The monomial basis of `H^2(P^2, O(k))`, sorted in descending grevlex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegMonomialSpace {
    twist: i32,
    basis: Vec<Monomial>,
}

impl NegMonomialSpace {
    pub fn new(twist: i32) -> Self {
        let mut basis = Vec::new();
        // a, b, c <= -1 with a + b + c = twist  =>  a, b >= twist + 2.
        for a in (twist + 2..=-1).rev() {
            for b in (twist + 2..=-1).rev() {
                let c = twist - a - b;
                if c <= -1 {
                    basis.push(Monomial::xyz(a, b, c));
                }
            }
        }
        basis.sort_by(|x, y| y.cmp(x));
        NegMonomialSpace { twist, basis }
    }

    /// `(-k-1)(-k-2)/2` for `k <= -3`, else 0.
    pub fn expected_dimension(twist: i32) -> usize {
        if twist <= -3 {
            let n = (-twist - 1) as usize;
            n * (n - 1) / 2
        } else {
            0
        }
    }

    pub fn twist(&self) -> i32 {
        self.twist
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.basis.binary_search_by(|probe| m.cmp(probe)).ok()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        m.is_strictly_negative() && m.degree() == self.twist
    }

    /// Coordinates of `u` in this basis.
    pub fn coordinates(&self, u: &SparsePolynomial) -> Result<Vec<u64>, CohomologyError> {
        let mut v = alloc::vec![0u64; self.dimension()];
        for (m, c) in u.terms() {
            let i = self.index_of(&m).ok_or(CohomologyError::NotInModel(m))?;
            v[i] = c.value();
        }
        Ok(v)
    }

    pub fn element(&self, field: PrimeField, coords: &[u64]) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero(field);
        for (m, &c) in self.basis.iter().zip(coords) {
            out.add_term(crate::ffpoly::Fp::new(field, c), *m);
        }
        out
    }
}

/// Checks that `u` lies in some `NegMonomialSpace`; returns its twist
/// (`None` for zero).
fn model_twist(u: &SparsePolynomial) -> Result<Option<i32>, CohomologyError> {
    let mut twist = None;
    for m in u.monomials() {
        if !m.is_strictly_negative() {
            return Err(CohomologyError::NotInModel(*m));
        }
        match twist {
            None => twist = Some(m.degree()),
            Some(k) if k != m.degree() => {
                return Err(CohomologyError::DegreeMismatch {
                    expected: k,
                    found: m.degree(),
                })
            }
            _ => {}
        }
    }
    Ok(twist)
}

fn discard_nonnegative(p: &mut SparsePolynomial) {
    p.retain_terms(Monomial::is_strictly_negative);
}

/// Multiplies an element of `H^2(P^2, O(k))` by a form `g` and discards
/// every product monomial with a nonnegative exponent.
pub fn truncating_multiply(
    g: &SparsePolynomial,
    u: &SparsePolynomial,
) -> Result<SparsePolynomial, CohomologyError> {
    if let Some(m) = g.first_negative_monomial() {
        return Err(CohomologyError::NegativeExponent(m));
    }
    if g.field() != u.field() {
        return Err(CohomologyError::ModulusMismatch);
    }
    model_twist(u)?;
    let mut out = g
        .checked_mul(u)
        .map_err(|_| CohomologyError::ModulusMismatch)?;
    discard_nonnegative(&mut out);
    Ok(out)
}

/// A plane curve `V(f)` with its degree, genus and smoothness verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCurve {
    equation: SparsePolynomial,
    degree: i32,
    genus: i64,
    smoothness: SmoothnessReport,
    frobenius_multiplier: SparsePolynomial,
}

impl PlaneCurve {
    /// Validates `f` (homogeneous, in `x, y, z`) and runs the Jacobian test.
    pub fn new(equation: SparsePolynomial) -> Result<Self, CohomologyError> {
        let smoothness = is_projectively_smooth(&equation)?;
        let degree = equation.homogeneous_degree().expect("checked homogeneous");
        let d = degree as i64;
        let p = equation.field().characteristic();
        Ok(PlaneCurve {
            frobenius_multiplier: equation.pow(p - 1),
            genus: (d - 1) * (d - 2) / 2,
            degree,
            equation,
            smoothness,
        })
    }

    pub fn equation(&self) -> &SparsePolynomial {
        &self.equation
    }

    pub fn field(&self) -> PrimeField {
        self.equation.field()
    }

    pub fn prime(&self) -> u64 {
        self.field().modulus()
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// `(d-1)(d-2)/2`.
    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn smoothness(&self) -> &SmoothnessReport {
        &self.smoothness
    }

    pub fn is_smooth(&self) -> bool {
        self.smoothness.is_smooth()
    }

    /// `deg O_X(m) = m * d`.
    pub fn line_bundle_degree(&self, m: i32) -> i64 {
        m as i64 * self.degree as i64
    }

    /// `h^0(X, O_X(m)) = C(m+2, 2) - C(m-d+2, 2)`, binomials vanishing when
    /// the top argument is below 2.
    pub fn h0_dimension(&self, m: i32) -> i64 {
        fn choose2(n: i64) -> i64 {
            if n < 2 {
                0
            } else {
                n * (n - 1) / 2
            }
        }
        choose2(m as i64 + 2) - choose2((m - self.degree) as i64 + 2)
    }

    /// `h^1` predicted by Riemann-Roch from `h^0`.
    pub fn riemann_roch_h1(&self, m: i32) -> i64 {
        self.h0_dimension(m) - (self.line_bundle_degree(m) + 1 - self.genus)
    }

    fn kernel_condition(&self, rep: &SparsePolynomial) -> Result<bool, CohomologyError> {
        Ok(truncating_multiply(&self.equation, rep)?.is_zero())
    }
}

/// An element of `H^1(X, O_X(m))`, stored as its kernel representative in
/// `H^2(P^2, O(m - d))`.
#[derive(Clone, PartialEq, Eq)]
pub struct CohomologyClass<'c> {
    curve: &'c PlaneCurve,
    twist: i32,
    representative: SparsePolynomial,
}

impl fmt::Debug for CohomologyClass<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CohomologyClass")
            .field("twist", &self.twist)
            .field("representative", &self.representative)
            .finish()
    }
}

impl<'c> CohomologyClass<'c> {
    /// Validates the representative's shape and kernel membership.
    pub fn new(
        curve: &'c PlaneCurve,
        twist: i32,
        representative: SparsePolynomial,
    ) -> Result<Self, CohomologyError> {
        if representative.field() != curve.field() {
            return Err(CohomologyError::ModulusMismatch);
        }
        if let Some(k) = model_twist(&representative)? {
            if k != twist - curve.degree {
                return Err(CohomologyError::DegreeMismatch {
                    expected: twist - curve.degree,
                    found: k,
                });
            }
        }
        if !curve.kernel_condition(&representative)? {
            return Err(CohomologyError::NotInKernel);
        }
        Ok(CohomologyClass {
            curve,
            twist,
            representative,
        })
    }

    pub fn zero(curve: &'c PlaneCurve, twist: i32) -> Self {
        CohomologyClass {
            curve,
            twist,
            representative: SparsePolynomial::zero(curve.field()),
        }
    }

    pub fn curve(&self) -> &'c PlaneCurve {
        self.curve
    }

    pub fn twist(&self) -> i32 {
        self.twist
    }

    pub fn representative(&self) -> &SparsePolynomial {
        &self.representative
    }

    /// The model identifies `H^1(X, O_X(m))` with a subspace, so this is a
    /// literal zero test on the representative.
    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }

    fn compatible(&self, other: &Self) -> Result<(), CohomologyError> {
        if self.curve.equation != other.curve.equation {
            return Err(CohomologyError::DifferentCurves);
        }
        if self.twist != other.twist {
            return Err(CohomologyError::DegreeMismatch {
                expected: self.twist,
                found: other.twist,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.compatible(other)?;
        Ok(CohomologyClass {
            representative: &self.representative + &other.representative,
            ..self.clone()
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.compatible(other)?;
        Ok(CohomologyClass {
            representative: &self.representative - &other.representative,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: crate::ffpoly::Fp) -> Self {
        CohomologyClass {
            representative: self.representative.scale(c),
            ..self.clone()
        }
    }

    /// Frobenius pull-back `H^1(X, O_X(m)) -> H^1(X, O_X(pm))`, computed as
    /// `f^(p-1) * u^[p]` and re-checked for kernel membership.
    pub fn frobenius_pullback(&self) -> Result<CohomologyClass<'c>, CohomologyError> {
        let p = self.curve.field().characteristic() as i32;
        let lifted = self.representative.exponent_power(p);
        let rep = truncating_multiply(&self.curve.frobenius_multiplier, &lifted)?;
        CohomologyClass::new(self.curve, p * self.twist, rep)
    }

    /// The map induced on `H^1` by multiplication with a form `g` of
    /// degree `e`: `H^1(X, O_X(m)) -> H^1(X, O_X(m + e))`.
    pub fn mult_map(&self, g: &SparsePolynomial) -> Result<CohomologyClass<'c>, CohomologyError> {
        let e = g
            .homogeneous_degree()
            .ok_or(CohomologyError::NotHomogeneous)?;
        let rep = truncating_multiply(g, &self.representative)?;
        CohomologyClass::new(self.curve, self.twist + e, rep)
    }
}

/// Basis of `H^1(X, O_X(m))` as the kernel of multiplication by `f` from
/// `H^2(P^2, O(m - d))` to `H^2(P^2, O(m))`.
pub fn h1_basis(curve: &PlaneCurve, m: i32) -> Result<Vec<CohomologyClass<'_>>, CohomologyError> {
    if !curve.is_smooth() {
        return Err(CohomologyError::NotSmooth);
    }
    let field = curve.field();
    let domain = NegMonomialSpace::new(m - curve.degree);
    let codomain = NegMonomialSpace::new(m);
    let mut matrix = Matrix::zeros(field, codomain.dimension(), domain.dimension());
    for (j, mono) in domain.basis().iter().enumerate() {
        let image =
            truncating_multiply(&curve.equation, &SparsePolynomial::monomial(field, *mono))?;
        for (i, c) in codomain.coordinates(&image)?.into_iter().enumerate() {
            matrix.set(i, j, c);
        }
    }
    matrix
        .kernel_basis()
        .into_iter()
        .map(|v| CohomologyClass::new(curve, m, domain.element(field, &v)))
        .collect()
}

/// A Čech fraction `numerator / (y^y_power * z^z_power)` on the curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction {
    pub numerator: SparsePolynomial,
    pub y_power: i32,
    pub z_power: i32,
}

impl Fraction {
    /// Degree of the fraction; a zero numerator counts as degree 0.
    pub fn twist(&self) -> Result<i32, CohomologyError> {
        let e = if self.numerator.is_zero() {
            0
        } else {
            self.numerator
                .homogeneous_degree()
                .ok_or(CohomologyError::NotHomogeneous)?
        };
        Ok(e - self.y_power - self.z_power)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) / (y^{} * z^{})",
            self.numerator, self.y_power, self.z_power
        )
    }
}

/// Moves a Čech fraction into the model by expanding
/// `numerator / (y^b z^c f)` as a series in descending powers of `x`.
///
/// Writes `f = l x^d (1 + T)` and sums `(-T)^j`. Each factor of `T` raises
/// the combined `(y, z)`-degree, so terms with a nonnegative `y` or `z`
/// exponent can be dropped as soon as they appear and the sum is finite.
pub fn connecting_expand<'c>(
    curve: &'c PlaneCurve,
    fraction: &Fraction,
) -> Result<CohomologyClass<'c>, CohomologyError> {
    let field = curve.field();
    let twist = fraction.twist()?;
    let num = &fraction.numerator;
    if num.field() != field {
        return Err(CohomologyError::ModulusMismatch);
    }
    if let Some(m) = num.first_negative_monomial() {
        return Err(CohomologyError::NegativeExponent(m));
    }
    if num.is_zero() {
        return Ok(CohomologyClass::zero(curve, twist));
    }
    let d = curve.degree;
    let x_d = Monomial::var(Var::X, d);
    let lead = curve.equation.coefficient(&x_d);
    let lead_inv = lead.inverse().ok_or(CohomologyError::NoLeadingXPower)?;
    let mut tail = curve.equation.clone();
    tail.retain_terms(|m| *m != x_d);
    if tail
        .monomials()
        .any(|m| m.exponent(Var::Y) + m.exponent(Var::Z) < 1)
    {
        return Err(CohomologyError::NoLeadingXPower);
    }
    let x_inv_d = Monomial::var(Var::X, -d);
    let neg_t = (-&tail).mul_monomial(&x_inv_d).scale(lead_inv);

    let alive = |m: &Monomial| m.exponent(Var::Y) < 0 && m.exponent(Var::Z) < 0;
    let mut current = num
        .mul_monomial(&x_inv_d.mul(&Monomial::xyz(0, -fraction.y_power, -fraction.z_power)))
        .scale(lead_inv);
    current.retain_terms(alive);
    let mut acc = SparsePolynomial::zero(field);
    while !current.is_zero() {
        acc = &acc + &current;
        current = &current * &neg_t;
        current.retain_terms(alive);
    }
    discard_nonnegative(&mut acc);
    CohomologyClass::new(curve, twist, acc)
}
