use proptest::prelude::*;

use lndfilt::families::FamilyInstance;
use lndfilt::morphisms::{build_auto_danielewski, data_ctx, iso_decide, verify_degree_preservation, AutomorphismData};
use lndfilt::poly::int;
use lndfilt::poly::parse::parse_polynomial;
use lndfilt::selftest;
use lndfilt::{Degree, Monomial, Polynomial, Rational, VariableContext};

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..10, 1i64..6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != int(0))
}

fn polynomial(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, Rational)>> {
    proptest::collection::vec((proptest::collection::vec(0..=max_exp, nvars), rational()), 0..=max_terms)
}

fn build(ctx: &VariableContext, terms: Vec<(Vec<u32>, Rational)>) -> Polynomial {
    Polynomial::from_terms(ctx, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e), c)).collect::<Vec<_>>())
}

fn toy() -> FamilyInstance {
    selftest::toy().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_polynomials_parse_back(terms in polynomial(4, 5, 6)) {
        let ctx = VariableContext::new(&["x", "y2", "Z", "s_1"]).unwrap();
        let p = build(&ctx, terms);
        prop_assert_eq!(parse_polynomial(&p.to_string(), &ctx).unwrap(), p);
    }

    #[test]
    fn degree_is_additive_and_ultrametric(a in polynomial(3, 2, 4), b in polynomial(3, 2, 4)) {
        let inst = toy();
        let ctx = inst.ring.ctx().clone();
        let d = &inst.derivation;
        let (a, b) = (inst.ring.reduce(&build(&ctx, a)), inst.ring.reduce(&build(&ctx, b)));
        let (da, db) = (d.degree(&a).unwrap(), d.degree(&b).unwrap());
        prop_assert_eq!(d.degree(&(&a * &b)).unwrap(), da + db);
        prop_assert!(d.degree(&(&a + &b)).unwrap() <= da.max(db));
    }

    #[test]
    fn derivation_lowers_degree_by_one(terms in polynomial(3, 2, 4)) {
        let inst = toy();
        let b = inst.ring.reduce(&build(inst.ring.ctx(), terms));
        let d = &inst.derivation;
        match d.degree(&b).unwrap() {
            Degree::Finite(k) if k > 0 => prop_assert_eq!(d.degree(&d.apply(&b)).unwrap(), Degree::Finite(k - 1)),
            _ => prop_assert!(inst.ring.is_zero(&d.apply(&b))),
        }
    }

    #[test]
    fn isomorphism_verdict_is_symmetric(c1 in -3i64..4, c2 in -3i64..4, c3 in -2i64..3) {
        let p1 = format!("Y^2 + ({c1})*X + ({c3})*X^2");
        let p2 = format!("Y^2 + ({c2})*X");
        let b1 = selftest::danielewski(2, &p1).unwrap();
        let b2 = selftest::danielewski(2, &p2).unwrap();
        let there = iso_decide(&b1, &b2).unwrap();
        let back = iso_decide(&b2, &b1).unwrap();
        prop_assert_eq!(there.kind(), back.kind());
    }

    #[test]
    fn automorphisms_round_trip(lambda in nonzero_rational(), mu in nonzero_rational(), a in polynomial(1, 2, 3)) {
        let inst = selftest::danielewski(2, "Y^2").unwrap();
        let data = AutomorphismData::new(lambda, mu, build(&data_ctx(), a)).unwrap();
        let alpha = build_auto_danielewski(&inst, &data).unwrap();
        let inverse = alpha.inverse().unwrap();
        let round = alpha.then(&inverse).unwrap();
        for (i, img) in round.images().iter().enumerate() {
            prop_assert!(inst.ring.equal(img, &inst.ring.var(i)));
        }
        let report = verify_degree_preservation(&alpha, &inst.derivation, 4, 4, 1).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failures);
    }
}
