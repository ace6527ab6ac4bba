//! Buchberger's algorithm over F_p (grevlex, `x > y > z`) and the Jacobian
//! smoothness test for projective plane curves.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::ffpoly::{Monomial, PolyError, PrimeField, SparsePolynomial, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    NegativeExponent(Monomial),
    ModulusMismatch,
    NotHomogeneous,
    ZeroPolynomial,
    /// The curve equation mentions the helper variable `t`.
    NotPlanar,
    /// An input generator failed to reduce to zero modulo the computed basis.
    Inconsistent,
}

impl fmt::Display for GroebnerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroebnerError::NegativeExponent(m) => write!(f, "negative exponent in {m}"),
            GroebnerError::ModulusMismatch => write!(f, "generators over different fields"),
            GroebnerError::NotHomogeneous => write!(f, "polynomial is not homogeneous"),
            GroebnerError::ZeroPolynomial => write!(f, "polynomial is zero"),
            GroebnerError::NotPlanar => write!(f, "polynomial uses variables other than x, y, z"),
            GroebnerError::Inconsistent => {
                write!(f, "internal error: generator not in the computed ideal")
            }
        }
    }
}

impl core::error::Error for GroebnerError {}

impl From<PolyError> for GroebnerError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::ModulusMismatch { .. } => GroebnerError::ModulusMismatch,
            PolyError::NegativeExponent(m) => GroebnerError::NegativeExponent(m),
        }
    }
}

/// Only graded reverse lexicographic order with `x > y > z > t` is supported;
/// it is the `Ord` of [`Monomial`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
}

/// A reduced Gröbner basis: monic generators sorted by descending leading
/// monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    field: PrimeField,
    generators: Vec<SparsePolynomial>,
    order: MonomialOrder,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[SparsePolynomial] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .filter_map(SparsePolynomial::leading_monomial)
            .collect()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.leading_monomials().iter().any(Monomial::is_one)
    }

    /// Checks Buchberger's criterion exhaustively: every S-polynomial of
    /// every pair of generators reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let g = &self.generators;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if !reduce(&s_polynomial(&g[i], &g[j]), g).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// No leading monomial divides a term of another generator, and every
    /// generator is monic.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.generators.iter().enumerate().all(|(i, g)| {
            g.leading_term()
                .map(|(_, c)| c.value() == 1)
                .unwrap_or(false)
                && g.monomials().all(|m| {
                    lms.iter()
                        .enumerate()
                        .all(|(j, lm)| i == j || !lm.divides(m))
                })
        })
    }
}

fn s_polynomial(a: &SparsePolynomial, b: &SparsePolynomial) -> SparsePolynomial {
    let (la, ca) = a.leading_term().expect("nonzero");
    let (lb, cb) = b.leading_term().expect("nonzero");
    let l = la.lcm(&lb);
    let left = a
        .mul_monomial(&l.div(&la))
        .scale(ca.inverse().expect("nonzero"));
    let right = b
        .mul_monomial(&l.div(&lb))
        .scale(cb.inverse().expect("nonzero"));
    &left - &right
}

/// Full multivariate division remainder. Divisors need not be monic.
fn reduce(g: &SparsePolynomial, divisors: &[SparsePolynomial]) -> SparsePolynomial {
    let field = g.field();
    let leads: Vec<(Monomial, u64)> = divisors
        .iter()
        .map(|d| {
            let (m, c) = d.leading_term().expect("nonzero divisor");
            (m, field.inv_raw(c.value()))
        })
        .collect();
    let mut work: BTreeMap<Monomial, u64> = g.raw_terms().clone();
    let mut rem = SparsePolynomial::zero(field);
    while let Some((&m, &c)) = work.iter().next_back() {
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let (lm, lc_inv) = leads[k];
                let q = m.div(&lm);
                let factor = field.mul_raw(c, lc_inv);
                for (dm, &dc) in divisors[k].raw_terms() {
                    let key = dm.mul(&q);
                    let sub = field.mul_raw(factor, dc);
                    let entry = work.entry(key).or_insert(0);
                    *entry = field.sub_raw(*entry, sub);
                    if *entry == 0 {
                        work.remove(&key);
                    }
                }
            }
            None => {
                work.remove(&m);
                rem.add_term_raw(m, c);
            }
        }
    }
    rem
}

fn check_inputs(gens: &[SparsePolynomial]) -> Result<Option<PrimeField>, GroebnerError> {
    let mut field = None;
    for g in gens {
        if let Some(m) = g.first_negative_monomial() {
            return Err(GroebnerError::NegativeExponent(m));
        }
        match field {
            None => field = Some(g.field()),
            Some(f) if f != g.field() => return Err(GroebnerError::ModulusMismatch),
            _ => {}
        }
    }
    Ok(field)
}

/// Computes the reduced Gröbner basis of the ideal generated by `generators`.
///
/// Pairs are selected by smallest lcm; pairs with coprime leading monomials
/// are skipped (Buchberger's first criterion). Every input is re-checked to
/// have normal form zero before returning.
pub fn buchberger(generators: &[SparsePolynomial]) -> Result<GroebnerBasis, GroebnerError> {
    let Some(field) = check_inputs(generators)? else {
        return Err(GroebnerError::ZeroPolynomial);
    };
    let mut basis: Vec<SparsePolynomial> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(SparsePolynomial::monic)
        .collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }

    while !pairs.is_empty() {
        let pick = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| {
                let a = basis[i].leading_monomial().unwrap();
                let b = basis[j].leading_monomial().unwrap();
                a.lcm(&b)
            })
            .map(|(k, _)| k)
            .unwrap();
        let (i, j) = pairs.swap_remove(pick);
        let li = basis[i].leading_monomial().unwrap();
        let lj = basis[j].leading_monomial().unwrap();
        if li.is_coprime(&lj) {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let n = basis.len();
        if r.leading_monomial() == Some(Monomial::ONE) {
            basis = alloc::vec![r];
            break;
        }
        for k in 0..n {
            pairs.push((k, n));
        }
        basis.push(r);
    }

    let gb = GroebnerBasis {
        field,
        generators: interreduce(basis),
        order: MonomialOrder::GrevLex,
    };
    if generators
        .iter()
        .any(|g| !reduce(g, &gb.generators).is_zero())
    {
        return Err(GroebnerError::Inconsistent);
    }
    Ok(gb)
}

fn interreduce(mut basis: Vec<SparsePolynomial>) -> Vec<SparsePolynomial> {
    // Drop generators whose leading monomial is divisible by another's.
    basis.sort_by_key(|g| g.leading_monomial().unwrap());
    let mut minimal: Vec<SparsePolynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(&lm))
        {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<SparsePolynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, h)| h.clone())
            .collect();
        out.push(reduce(&minimal[i], &others).monic());
    }
    out.sort_by_key(|g| core::cmp::Reverse(g.leading_monomial()));
    out
}

/// Remainder of `g` on division by the basis; zero iff `g` is in the ideal.
pub fn normal_form(
    g: &SparsePolynomial,
    gb: &GroebnerBasis,
) -> Result<SparsePolynomial, GroebnerError> {
    if let Some(m) = g.first_negative_monomial() {
        return Err(GroebnerError::NegativeExponent(m));
    }
    if g.field() != gb.field {
        return Err(GroebnerError::ModulusMismatch);
    }
    Ok(reduce(g, &gb.generators))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    Singular,
}

impl fmt::Display for Smoothness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Smoothness::Smooth => write!(f, "SMOOTH"),
            Smoothness::Singular => write!(f, "SINGULAR"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub verdict: Smoothness,
    /// For each of `x, y, z` that has one, a leading monomial of the
    /// Jacobian basis that is a pure power of it.
    pub pure_power_witnesses: Vec<(Var, Monomial)>,
    pub basis_size: usize,
}

impl SmoothnessReport {
    pub fn is_smooth(&self) -> bool {
        self.verdict == Smoothness::Smooth
    }
}

/// Jacobian criterion: `V(f)` is smooth iff `(f, f_x, f_y, f_z)` has no
/// projective zero, i.e. iff the Gröbner staircase is finite. Finite
/// staircases are detected by a pure power of each variable among the
/// leading monomials; this is independent of the base field extension.
pub fn is_projectively_smooth(f: &SparsePolynomial) -> Result<SmoothnessReport, GroebnerError> {
    if f.is_zero() {
        return Err(GroebnerError::ZeroPolynomial);
    }
    if let Some(m) = f.first_negative_monomial() {
        return Err(GroebnerError::NegativeExponent(m));
    }
    if f.homogeneous_degree().is_none() {
        return Err(GroebnerError::NotHomogeneous);
    }
    if f.degree_in(Var::T) != 0 {
        return Err(GroebnerError::NotPlanar);
    }
    let mut gens = alloc::vec![f.clone()];
    for v in Var::PROJECTIVE {
        gens.push(f.partial_derivative(v)?);
    }
    let gb = buchberger(&gens)?;
    let lms = gb.leading_monomials();
    let mut witnesses = Vec::new();
    for v in Var::PROJECTIVE {
        let w = lms
            .iter()
            .filter(|m| m.is_one() || m.pure_power_of() == Some(v))
            .min()
            .copied();
        if let Some(m) = w {
            witnesses.push((v, m));
        }
    }
    let verdict = if witnesses.len() == 3 {
        Smoothness::Smooth
    } else {
        Smoothness::Singular
    };
    Ok(SmoothnessReport {
        verdict,
        pure_power_witnesses: witnesses,
        basis_size: gb.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::parse_polynomial;

    fn poly(s: &str, p: u64) -> SparsePolynomial {
        parse_polynomial(s, PrimeField::new(p).unwrap()).unwrap()
    }

    #[test]
    fn variables_are_already_a_basis() {
        let gb = buchberger(&[poly("x", 5), poly("y", 5)]).unwrap();
        assert_eq!(gb.generators(), &[poly("x", 5), poly("y", 5)]);
        assert!(gb.is_reduced());
        assert!(gb.s_pairs_reduce_to_zero());
    }

    #[test]
    fn monomial_ideal_single_s_pair() {
        // S(x^2, xy) = y*x^2 - x*xy = 0, so the input is already reduced.
        let gb = buchberger(&[poly("x^2", 2), poly("x*y", 2)]).unwrap();
        assert_eq!(gb.generators(), &[poly("x^2", 2), poly("x*y", 2)]);
    }

    #[test]
    fn nontrivial_basis() {
        // (x^2 - y, x*y - 1): the basis picks up y^2 - x.
        let gb = buchberger(&[poly("x^2 - y", 7), poly("x*y - 1", 7)]).unwrap();
        assert!(gb.s_pairs_reduce_to_zero());
        assert!(gb.is_reduced());
        for g in [poly("x^2 - y", 7), poly("x*y - 1", 7), poly("y^2 - x", 7)] {
            assert!(normal_form(&g, &gb).unwrap().is_zero());
        }
        assert!(!normal_form(&poly("x", 7), &gb).unwrap().is_zero());
    }

    #[test]
    fn unit_ideal() {
        let gb = buchberger(&[poly("x + 1", 3), poly("x", 3)]).unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.generators(), &[poly("1", 3)]);
    }

    #[test]
    fn normal_form_examples() {
        let gb = buchberger(&[poly("x", 5), poly("y", 5), poly("z", 5)]).unwrap();
        assert_eq!(normal_form(&poly("1", 5), &gb).unwrap(), poly("1", 5));
        let gx = buchberger(&[poly("x", 5)]).unwrap();
        assert!(normal_form(&poly("x*y", 5), &gx).unwrap().is_zero());
        let laurent = SparsePolynomial::monomial(gx.field, Monomial::xyz(-1, 0, 0));
        assert!(matches!(
            normal_form(&laurent, &gx),
            Err(GroebnerError::NegativeExponent(_))
        ));
    }

    #[test]
    fn rejects_bad_inputs() {
        let laurent =
            SparsePolynomial::monomial(PrimeField::new(3).unwrap(), Monomial::xyz(0, -2, 0));
        assert!(matches!(
            buchberger(&[laurent]),
            Err(GroebnerError::NegativeExponent(_))
        ));
        assert_eq!(
            buchberger(&[poly("x", 3), poly("y", 5)]),
            Err(GroebnerError::ModulusMismatch)
        );
        assert_eq!(
            is_projectively_smooth(&poly("x^2 + y", 5)),
            Err(GroebnerError::NotHomogeneous)
        );
        assert_eq!(
            is_projectively_smooth(&poly("x^2 + t^2", 5)),
            Err(GroebnerError::NotPlanar)
        );
    }

    #[test]
    fn cuspidal_cubic_is_singular() {
        let r = is_projectively_smooth(&poly("y^2*z - x^3", 5)).unwrap();
        assert_eq!(r.verdict, Smoothness::Singular);
        // No pure power of z: the cusp sits at (0:0:1).
        assert!(r.pure_power_witnesses.iter().all(|(v, _)| *v != Var::Z));
    }

    #[test]
    fn fermat_curves_are_smooth_when_p_does_not_divide_d() {
        for (p, d) in [(2u64, 3), (3, 4), (5, 3), (5, 4), (7, 5)] {
            let f = poly(&alloc::format!("x^{d} + y^{d} + z^{d}"), p);
            let r = is_projectively_smooth(&f).unwrap();
            assert_eq!(r.verdict, Smoothness::Smooth, "p={p} d={d}");
        }
        // p | d: every partial vanishes, the curve is a p-th power.
        let f = poly("x^3 + y^3 + z^3", 3);
        assert_eq!(
            is_projectively_smooth(&f).unwrap().verdict,
            Smoothness::Singular
        );
    }
}
