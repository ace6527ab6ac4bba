//! Dense univariate polynomials over F_p: Euclidean gcd and squarefree
//! decomposition.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::{Fp, PrimeField};
use super::monomial::{Monomial, Var};
use super::poly::SparsePolynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnivariateError {
    ZeroInput,
    NotUnivariate,
    NegativeExponent,
    ModulusMismatch,
}

impl fmt::Display for UnivariateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnivariateError::ZeroInput => write!(f, "gcd input is zero"),
            UnivariateError::NotUnivariate => {
                write!(f, "inputs are not univariate in a common variable")
            }
            UnivariateError::NegativeExponent => write!(f, "negative exponent in univariate input"),
            UnivariateError::ModulusMismatch => write!(f, "modulus mismatch"),
        }
    }
}

impl core::error::Error for UnivariateError {}

/// Coefficients in ascending degree order, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl UnivariatePoly {
    pub fn zero(field: PrimeField) -> Self {
        UnivariatePoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn from_coeffs(field: PrimeField, coeffs: impl IntoIterator<Item = i64>) -> Self {
        let mut p = UnivariatePoly {
            field,
            coeffs: coeffs.into_iter().map(|c| field.reduce_signed(c)).collect(),
        };
        p.trim();
        p
    }

    /// Reads `p` as a polynomial in `v`; every other variable must be absent.
    pub fn from_sparse(p: &SparsePolynomial, v: Var) -> Result<Self, UnivariateError> {
        let field = p.field();
        let mut coeffs = Vec::new();
        for (m, c) in p.terms() {
            for w in Var::ALL {
                if w != v && m.exponent(w) != 0 {
                    return Err(UnivariateError::NotUnivariate);
                }
            }
            let e = m.exponent(v);
            if e < 0 {
                return Err(UnivariateError::NegativeExponent);
            }
            let e = e as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = c.value();
        }
        let mut out = UnivariatePoly { field, coeffs };
        out.trim();
        Ok(out)
    }

    pub fn to_sparse(&self, v: Var) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero(self.field);
        for (e, &c) in self.coeffs.iter().enumerate() {
            out.add_term(Fp::new(self.field, c), Monomial::var(v, e as i32));
        }
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let f = self.field;
        let inv = f.inv_raw(self.leading_coefficient());
        UnivariatePoly {
            field: f,
            coeffs: self.coeffs.iter().map(|&c| f.mul_raw(c, inv)).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        let mut out = UnivariatePoly {
            field: f,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(e, &c)| f.mul_raw(c, e as u64 % f.modulus()))
                .collect(),
        };
        out.trim();
        out
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let f = self.field;
        let mut rem = self.coeffs.clone();
        let dd = divisor.coeffs.len() - 1;
        let inv = f.inv_raw(divisor.leading_coefficient());
        if rem.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul_raw(rem[i], inv);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = f.sub_raw(rem[k], f.mul_raw(c, dc));
            }
        }
        let mut q = UnivariatePoly {
            field: f,
            coeffs: quot,
        };
        let mut r = UnivariatePoly {
            field: f,
            coeffs: rem,
        };
        q.trim();
        r.trim();
        (q, r)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// For a polynomial whose derivative vanishes, the unique `g` with
    /// `g(t)^p = self(t)`.
    fn pth_root(&self) -> Self {
        let p = self.field.modulus() as usize;
        let coeffs = self.coeffs.iter().step_by(p).copied().collect();
        let mut out = UnivariatePoly {
            field: self.field,
            coeffs,
        };
        out.trim();
        out
    }

    /// Squarefree decomposition of a nonzero polynomial: pairs `(g, i)` with
    /// `g` monic squarefree of positive degree, pairwise coprime, and
    /// `self = lc * prod g^i`. Sorted by multiplicity.
    pub fn squarefree_decomposition(&self) -> Vec<(UnivariatePoly, u32)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let mut out = Vec::new();
        self.monic().sqf_into(1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        out
    }

    fn sqf_into(&self, scale: u32, out: &mut Vec<(UnivariatePoly, u32)>) {
        if self.degree().unwrap_or(0) == 0 {
            return;
        }
        let p = self.field.characteristic();
        let d = self.derivative();
        if d.is_zero() {
            self.pth_root().sqf_into(scale * p, out);
            return;
        }
        let mut c = self.gcd(&d);
        let mut w = self.div_rem(&c).0;
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((z.monic(), i * scale));
            }
            i += 1;
            c = c.div_rem(&y).0;
            w = y;
        }
        if c.degree().unwrap_or(0) > 0 {
            c.pth_root().sqf_into(scale * p, out);
        }
    }
}

/// The common variable of two (nonzero) univariate polynomials; constants
/// are univariate in any variable.
fn common_variable(a: &SparsePolynomial, b: &SparsePolynomial) -> Result<Var, UnivariateError> {
    let mut vars = a.variables();
    for v in b.variables() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    match vars.as_slice() {
        [] => Ok(Var::T),
        [v] => Ok(*v),
        _ => Err(UnivariateError::NotUnivariate),
    }
}

/// Monic gcd of two nonzero univariate polynomials in the same variable.
pub fn univariate_gcd(
    g1: &SparsePolynomial,
    g2: &SparsePolynomial,
) -> Result<SparsePolynomial, UnivariateError> {
    if g1.field() != g2.field() {
        return Err(UnivariateError::ModulusMismatch);
    }
    if g1.is_zero() || g2.is_zero() {
        return Err(UnivariateError::ZeroInput);
    }
    let v = common_variable(g1, g2)?;
    let a = UnivariatePoly::from_sparse(g1, v)?;
    let b = UnivariatePoly::from_sparse(g2, v)?;
    Ok(a.gcd(&b).to_sparse(v))
}
