use frobhn_core::bundles::{
    available_levels, base_class, build_counterexample, default_summands, family_equation,
    hn_oracle, slope_interleaving_holds, Outcome, Slope, Statement,
};
use frobhn_core::cohomology::{connecting_expand, PlaneCurve};
use frobhn_core::ffpoly::{PrimeField, SparsePolynomial, Var};

const PRIMES: [u64; 4] = [2, 3, 5, 7];

#[test]
fn default_certificates_pass_and_replay() {
    for p in PRIMES {
        let n = default_summands(p);
        let cert = build_counterexample(p, n).unwrap();
        assert_eq!(
            cert.outcome(),
            &Outcome::Pass {
                hn_length: 2 * n,
                exceeds_p: true
            },
            "p = {p}"
        );
        assert!(cert.steps().iter().all(|s| s.passed));
        cert.replay().unwrap();
        for fact in cert.facts().facts() {
            assert!(fact.premises().iter().all(|q| *q < fact.id));
        }
    }
}

#[test]
fn filtration_matches_oracle_on_split_pieces() {
    for p in PRIMES {
        for n in 1..=available_levels(p).len() {
            let cert = build_counterexample(p, n).unwrap();
            let f = cert.filtration().unwrap();
            assert_eq!(*f, hn_oracle(cert.split_lines()), "p = {p}, n = {n}");
            assert_eq!(f.length(), 2 * n);
            assert!(f.is_strictly_decreasing());
        }
    }
}

#[test]
fn every_level_has_slope_minus_three_p_over_two() {
    for p in PRIMES {
        let n = available_levels(p).len();
        assert_eq!(n as u64, (3 * p).div_ceil(2));
        let cert = build_counterexample(p, n).unwrap();
        assert!(cert.passed());
        for row in cert.rows() {
            assert_eq!(row.deg_sub + row.deg_quot, -3 * p as i64);
            assert_eq!(row.slope, Slope::new(-3 * p as i64, 2));
            assert!(row.deg_sub < row.deg_quot);
        }
        let levels: Vec<usize> = cert.rows().iter().map(|r| r.level).collect();
        assert_eq!(levels, available_levels(p));
    }
}

#[test]
fn split_slopes_interleave() {
    for p in PRIMES {
        let cert = build_counterexample(p, default_summands(p)).unwrap();
        let mut high = Vec::new();
        let mut low = Vec::new();
        for fact in cert.facts().facts() {
            if let Statement::FrobeniusSplits {
                high: h, low: l, ..
            } = &fact.statement
            {
                high.push(h.slope());
                low.push(l.slope());
            }
        }
        assert!(slope_interleaving_holds(&high, &low), "p = {p}");
    }
}

#[test]
fn p3_worked_degrees() {
    let cert = build_counterexample(3, 2).unwrap();
    let slopes = cert.filtration().unwrap().slopes();
    assert_eq!(slopes, [0, -3, -24, -27].map(Slope::integer));
    let degrees: Vec<i64> = cert.split_lines().iter().map(|l| l.degree).collect();
    assert_eq!(degrees, [0, -27, -3, -24]);
}

#[test]
fn frobenius_commutes_with_multiplication_by_z() {
    for p in PRIMES {
        let field = PrimeField::new(p).unwrap();
        let curve = PlaneCurve::new(family_equation(field)).unwrap();
        let c = connecting_expand(&curve, &base_class(field)).unwrap();
        let z = SparsePolynomial::var(field, Var::Z);
        let zc = c.mult_map(&z).unwrap();
        assert!(!zc.is_zero());
        let f_zc = zc.frobenius_pullback().unwrap();
        let zp_fc = c
            .frobenius_pullback()
            .unwrap()
            .mult_map(&z.pow(p as u32))
            .unwrap();
        assert_eq!(f_zc, zp_fc);
        assert!(f_zc.is_zero());
    }
}
