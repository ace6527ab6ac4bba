//! Sparse Laurent polynomials in `x, y, z, t` over F_p.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::field::{Fp, PrimeField};
use super::monomial::{Monomial, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    ModulusMismatch { left: u64, right: u64 },
    NegativeExponent(Monomial),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ModulusMismatch { left, right } => {
                write!(f, "modulus mismatch: {left} vs {right}")
            }
            PolyError::NegativeExponent(m) => write!(f, "negative exponent in monomial {m}"),
        }
    }
}

impl core::error::Error for PolyError {}

/// A finite F_p-linear combination of Laurent monomials. Zero coefficients
/// are never stored; terms are kept in grevlex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    field: PrimeField,
    terms: BTreeMap<Monomial, u64>,
}

impl SparsePolynomial {
    pub fn zero(field: PrimeField) -> Self {
        SparsePolynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Fp) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: Fp, m: Monomial) -> Self {
        let mut p = Self::zero(c.field());
        if !c.is_zero() {
            p.terms.insert(m, c.value());
        }
        p
    }

    pub fn monomial(field: PrimeField, m: Monomial) -> Self {
        Self::term(field.one(), m)
    }

    pub fn var(field: PrimeField, v: Var) -> Self {
        Self::monomial(field, Monomial::var(v, 1))
    }

    /// Builds a polynomial from signed integer coefficients, summing repeats.
    pub fn from_terms<I>(field: PrimeField, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Monomial)>,
    {
        let mut p = Self::zero(field);
        for (c, m) in terms {
            p.add_term_raw(m, field.reduce_signed(c));
        }
        p
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Fp {
        Fp::new(self.field, self.terms.get(m).copied().unwrap_or(0))
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, Fp)> + '_ {
        let field = self.field;
        self.terms
            .iter()
            .rev()
            .map(move |(m, &c)| (*m, Fp::new(field, c)))
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys().rev()
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Monomial, u64> {
        &self.terms
    }

    pub fn leading_term(&self) -> Option<(Monomial, Fp)> {
        self.terms
            .iter()
            .next_back()
            .map(|(m, &c)| (*m, Fp::new(self.field, c)))
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.keys().next_back().copied()
    }

    /// `Some(d)` when every term has total degree `d`; the zero polynomial is
    /// not assigned a degree.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(Monomial::has_negative_exponent)
    }

    pub fn first_negative_monomial(&self) -> Option<Monomial> {
        self.terms
            .keys()
            .find(|m| m.has_negative_exponent())
            .copied()
    }

    /// Highest exponent of `v` over all terms (0 for the zero polynomial).
    pub fn degree_in(&self, v: Var) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Variables occurring with nonzero exponent somewhere.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.terms.keys().any(|m| m.exponent(v) != 0))
            .collect()
    }

    pub(crate) fn add_term_raw(&mut self, m: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        let field = self.field;
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let s = field.add_raw(*e.get(), c);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_term(&mut self, c: Fp, m: Monomial) {
        assert_eq!(c.field(), self.field, "coefficient from a different field");
        self.add_term_raw(m, c.value());
    }

    fn check_field(&self, other: &Self) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::ModulusMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term_raw(*m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term_raw(*m, self.field.neg_raw(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_field(other)?;
        let f = self.field;
        let mut out = Self::zero(f);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                out.add_term_raw(ma.mul(mb), f.mul_raw(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: Fp) -> Self {
        assert_eq!(c.field(), self.field, "scalar from a different field");
        if c.is_zero() {
            return Self::zero(self.field);
        }
        let f = self.field;
        SparsePolynomial {
            field: f,
            terms: self
                .terms
                .iter()
                .map(|(m, &v)| (*m, f.mul_raw(v, c.value())))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        SparsePolynomial {
            field: self.field,
            terms: self.terms.iter().map(|(k, &v)| (k.mul(m), v)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut acc = Self::one(self.field);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exponent-wise `k`-th power of every monomial with coefficients kept.
    /// For `k = p` this is the Frobenius map on Laurent polynomials over F_p.
    pub fn exponent_power(&self, k: i32) -> Self {
        SparsePolynomial {
            field: self.field,
            terms: self.terms.iter().map(|(m, &c)| (m.pow(k), c)).collect(),
        }
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn retain_terms(&mut self, mut keep: impl FnMut(&Monomial) -> bool) {
        self.terms.retain(|m, _| keep(m));
    }

    /// Sets `v = 0`: drops every term in which `v` occurs with positive
    /// exponent. Requires no negative powers of `v`.
    pub fn restrict_to_zero(&self, v: Var) -> Self {
        let mut out = self.clone();
        out.retain_terms(|m| m.exponent(v) == 0);
        out
    }

    /// Formal partial derivative with coefficients reduced mod p.
    pub fn partial_derivative(&self, v: Var) -> Result<Self, PolyError> {
        if let Some(m) = self.first_negative_monomial() {
            return Err(PolyError::NegativeExponent(m));
        }
        let f = self.field;
        let mut out = Self::zero(f);
        for (m, &c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let factor = f.reduce_signed(e as i64);
            out.add_term_raw(m.with_exponent(v, e - 1), f.mul_raw(c, factor));
        }
        Ok(out)
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(c.inverse().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.value() == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] (mod {})", self, self.field.modulus())
    }
}

// Operator forms panic on modulus mismatch; use the `checked_*` methods when
// the operands come from untrusted sources.
impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        let f = self.field;
        SparsePolynomial {
            field: f,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (*m, f.neg_raw(c)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn field(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn curve(p: u64) -> SparsePolynomial {
        let d = 3 * p as i32;
        SparsePolynomial::from_terms(
            field(p),
            [
                (1, Monomial::xyz(d, 0, 0)),
                (1, Monomial::xyz(1, d - 1, 0)),
                (1, Monomial::xyz(0, 1, d - 1)),
            ],
        )
    }

    #[test]
    fn add_cancels() {
        let f = field(5);
        let x = SparsePolynomial::var(f, Var::X);
        let y = SparsePolynomial::var(f, Var::Y);
        let s = &(&x + &y) + &(-&x);
        assert_eq!(s, y);
        assert_eq!(&s + &SparsePolynomial::zero(f), s);
    }

    #[test]
    fn add_builds_char_two_curve() {
        let f = field(2);
        let a = SparsePolynomial::from_terms(
            f,
            [(1, Monomial::xyz(6, 0, 0)), (1, Monomial::xyz(1, 5, 0))],
        );
        let b = SparsePolynomial::from_terms(f, [(1, Monomial::xyz(0, 1, 5))]);
        assert_eq!(&a + &b, curve(2));
        assert_eq!((&a + &b).to_string(), "x^6 + x*y^5 + y*z^5");
    }

    #[test]
    fn modulus_mismatch_is_an_error() {
        let a = SparsePolynomial::one(field(2));
        let b = SparsePolynomial::one(field(3));
        assert_eq!(
            a.checked_add(&b),
            Err(PolyError::ModulusMismatch { left: 2, right: 3 })
        );
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn laurent_inverse_pair() {
        let f = field(7);
        let x = SparsePolynomial::var(f, Var::X);
        let xinv = SparsePolynomial::monomial(f, Monomial::var(Var::X, -1));
        assert_eq!(&x * &xinv, SparsePolynomial::one(f));
    }

    #[test]
    fn freshmans_dream_univariate() {
        let f = field(2);
        let t1 =
            SparsePolynomial::from_terms(f, [(1, Monomial::var(Var::T, 1)), (1, Monomial::ONE)]);
        let sq = t1.pow(2);
        let expected =
            SparsePolynomial::from_terms(f, [(1, Monomial::var(Var::T, 2)), (1, Monomial::ONE)]);
        assert_eq!(sq, expected);
    }

    #[test]
    fn square_of_char_two_curve() {
        // (x^6 + x y^5 + y z^5)^2 expanded by hand: cross terms carry a factor 2.
        let f = curve(2);
        let expected = SparsePolynomial::from_terms(
            field(2),
            [
                (1, Monomial::xyz(12, 0, 0)),
                (1, Monomial::xyz(2, 10, 0)),
                (1, Monomial::xyz(0, 2, 10)),
            ],
        );
        assert_eq!(&f * &f, expected);
        assert_eq!(f.pow(2), expected);
    }

    #[test]
    fn partial_derivatives_of_family() {
        for p in [2u64, 3, 5, 7] {
            let fl = field(p);
            let d = 3 * p as i32;
            let f = curve(p);
            // d/dx: 3p x^{3p-1} vanishes, leaving y^{3p-1}.
            assert_eq!(
                f.partial_derivative(Var::X).unwrap(),
                SparsePolynomial::monomial(fl, Monomial::xyz(0, d - 1, 0))
            );
            // d/dy: (3p-1) = -1 mod p.
            assert_eq!(
                f.partial_derivative(Var::Y).unwrap(),
                SparsePolynomial::from_terms(
                    fl,
                    [
                        (-1, Monomial::xyz(1, d - 2, 0)),
                        (1, Monomial::xyz(0, 0, d - 1))
                    ]
                )
            );
            assert_eq!(
                f.partial_derivative(Var::Z).unwrap(),
                SparsePolynomial::from_terms(fl, [(-1, Monomial::xyz(0, 1, d - 2))])
            );
        }
        let c = SparsePolynomial::constant(field(3).element(2));
        assert!(c.partial_derivative(Var::Z).unwrap().is_zero());
    }

    #[test]
    fn derivative_rejects_laurent_input() {
        let m = Monomial::xyz(-1, 0, 0);
        let p = SparsePolynomial::monomial(field(3), m);
        assert_eq!(
            p.partial_derivative(Var::X),
            Err(PolyError::NegativeExponent(m))
        );
    }

    #[test]
    fn homogeneity() {
        assert_eq!(curve(3).homogeneous_degree(), Some(9));
        let f = field(3);
        let mixed =
            SparsePolynomial::from_terms(f, [(1, Monomial::xyz(1, 0, 0)), (1, Monomial::ONE)]);
        assert_eq!(mixed.homogeneous_degree(), None);
        assert!(SparsePolynomial::zero(f).is_homogeneous());
    }
}
