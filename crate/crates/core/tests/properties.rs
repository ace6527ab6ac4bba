use frobhn_core::bundles::{hn_merge, hn_oracle, HnPiece, LineBundleSymbol};
use frobhn_core::cohomology::{h1_basis, CohomologyClass, PlaneCurve};
use frobhn_core::ffpoly::{
    parse_polynomial, univariate_gcd, Monomial, PrimeField, SparsePolynomial, UnivariatePoly, Var,
};
use frobhn_core::groebner::{buchberger, normal_form};
use proptest::prelude::*;

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn family(p: u64) -> PlaneCurve {
    let d = 3 * p;
    let f = parse_polynomial(&format!("x^{d} + x*y^{} + y*z^{}", d - 1, d - 1), field(p)).unwrap();
    PlaneCurve::new(f).unwrap()
}

fn poly_from(p: u64, terms: &[(i64, (i32, i32, i32))]) -> SparsePolynomial {
    SparsePolynomial::from_terms(
        field(p),
        terms
            .iter()
            .map(|&(c, (a, b, e))| (c, Monomial::xyz(a, b, e))),
    )
}

fn terms(max_exp: i32, max_len: usize) -> impl Strategy<Value = Vec<(i64, (i32, i32, i32))>> {
    prop::collection::vec(
        (-50i64..50, (0..=max_exp, 0..=max_exp, 0..=max_exp)),
        0..=max_len,
    )
}

/// Terms of a homogeneous form of degree `deg`.
fn form_terms(deg: i32, max_len: usize) -> impl Strategy<Value = Vec<(i64, (i32, i32, i32))>> {
    prop::collection::vec((-50i64..50, 0..=deg, 0..=deg), 1..=max_len).prop_map(move |v| {
        v.into_iter()
            .map(|(c, a, b)| {
                let b = b.min(deg - a);
                (c, (a, b, deg - a - b))
            })
            .collect()
    })
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(p in prime(), a in terms(4, 6), b in terms(4, 6), c in terms(4, 6)) {
        let (a, b, c) = (poly_from(p, &a), poly_from(p, &b), poly_from(p, &c));
        let zero = SparsePolynomial::zero(field(p));
        let one = SparsePolynomial::one(field(p));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn freshmans_dream(p in prop::sample::select(vec![2u64, 3, 5]), a in terms(3, 5), b in terms(3, 5)) {
        let (a, b) = (poly_from(p, &a), poly_from(p, &b));
        let k = p as u32;
        prop_assert_eq!((&a + &b).pow(k), &a.pow(k) + &b.pow(k));
    }

    #[test]
    fn print_then_parse_is_identity(p in prime(), a in terms(6, 8)) {
        let a = poly_from(p, &a);
        prop_assert_eq!(parse_polynomial(&a.to_string(), field(p)).unwrap(), a);
    }

    #[test]
    fn gcd_divides_both(p in prime(), a in prop::collection::vec(-20i64..20, 1..8), b in prop::collection::vec(-20i64..20, 1..8), common in prop::collection::vec(-20i64..20, 1..4)) {
        let f = field(p);
        let c = UnivariatePoly::from_coeffs(f, common);
        let a = UnivariatePoly::from_coeffs(f, a);
        let b = UnivariatePoly::from_coeffs(f, b);
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let (ca, cb) = (
            &c.to_sparse(Var::X) * &a.to_sparse(Var::X),
            &c.to_sparse(Var::X) * &b.to_sparse(Var::X),
        );
        let g = univariate_gcd(&ca, &cb).unwrap();
        let g = UnivariatePoly::from_sparse(&g, Var::X).unwrap();
        for h in [&ca, &cb] {
            let h = UnivariatePoly::from_sparse(h, Var::X).unwrap();
            prop_assert!(h.div_rem(&g).1.is_zero());
        }
        // The common factor divides the gcd.
        prop_assert!(g.div_rem(&c).1.is_zero());
    }

    #[test]
    fn hn_merge_matches_oracle(degrees in prop::collection::vec(-20i64..=20, 1..=8)) {
        let lines: Vec<LineBundleSymbol> = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| LineBundleSymbol::new(format!("L_{i}"), d))
            .collect();
        let pieces: Vec<HnPiece> = lines.iter().map(HnPiece::line).collect();
        let merged = hn_merge(&pieces).unwrap();
        prop_assert_eq!(&merged, &hn_oracle(&lines));
        prop_assert!(merged.is_strictly_decreasing());
        prop_assert_eq!(merged.rank() as usize, lines.len());
    }

    #[test]
    fn hn_merge_matches_oracle_with_ties(degrees in prop::collection::vec(-2i64..=2, 1..=8)) {
        let lines: Vec<LineBundleSymbol> = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| LineBundleSymbol::new(format!("L_{i}"), d))
            .collect();
        let pieces: Vec<HnPiece> = lines.iter().map(HnPiece::line).collect();
        prop_assert_eq!(hn_merge(&pieces).unwrap(), hn_oracle(&lines));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn emitted_bases_are_groebner(
        p in prop::sample::select(vec![2u64, 3, 5]),
        gens in prop::collection::vec(form_terms(2, 4), 1..=3),
        probe in form_terms(3, 4),
    ) {
        let gens: Vec<SparsePolynomial> = gens.iter().map(|t| poly_from(p, t)).collect();
        prop_assume!(gens.iter().any(|g| !g.is_zero()));
        let gb = buchberger(&gens).unwrap();
        prop_assert!(gb.s_pairs_reduce_to_zero());
        prop_assert!(gb.is_reduced());
        for g in &gens {
            prop_assert!(normal_form(g, &gb).unwrap().is_zero());
        }
        let probe = poly_from(p, &probe);
        let nf = normal_form(&probe, &gb).unwrap();
        prop_assert_eq!(normal_form(&nf, &gb).unwrap(), nf.clone());
        // probe - nf lies in the ideal
        prop_assert!(normal_form(&(&probe - &nf), &gb).unwrap().is_zero());
    }
}

fn combination<'c>(
    basis: &[CohomologyClass<'c>],
    coeffs: &[i64],
    p: u64,
    twist: i32,
    curve: &'c PlaneCurve,
) -> CohomologyClass<'c> {
    basis
        .iter()
        .zip(coeffs)
        .fold(CohomologyClass::zero(curve, twist), |acc, (b, &c)| {
            acc.checked_add(&b.scale(field(p).element(c))).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn frobenius_is_additive_and_semilinear(
        p in prop::sample::select(vec![2u64, 3]),
        twist in -2i32..=0,
        u in prop::collection::vec(-10i64..10, 40),
        v in prop::collection::vec(-10i64..10, 40),
        a in -10i64..10,
        g in form_terms(1, 3),
    ) {
        let curve = family(p);
        let basis = h1_basis(&curve, twist).unwrap();
        let u = combination(&basis, &u, p, twist, &curve);
        let v = combination(&basis, &v, p, twist, &curve);
        let fu = u.frobenius_pullback().unwrap();
        let fv = v.frobenius_pullback().unwrap();
        let sum = u.checked_add(&v).unwrap().frobenius_pullback().unwrap();
        prop_assert_eq!(sum, fu.checked_add(&fv).unwrap());

        let a = field(p).element(a);
        prop_assert_eq!(u.scale(a).frobenius_pullback().unwrap(), fu.scale(a.pow(p)));

        let g = poly_from(p, &g);
        prop_assume!(!g.is_zero());
        let lhs = u.mult_map(&g).unwrap().frobenius_pullback().unwrap();
        let rhs = fu.mult_map(&g.pow(p as u32)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn riemann_roch_consistency() {
    for p in [2u64, 3, 5] {
        let curve = family(p);
        for m in -3..=3 {
            let dim = h1_basis(&curve, m).unwrap().len() as i64;
            assert_eq!(dim, curve.riemann_roch_h1(m), "p = {p}, m = {m}");
        }
    }
}
