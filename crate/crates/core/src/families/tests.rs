use super::*;
use crate::poly::{int, Degree};

fn cfg() -> GbConfig {
    GbConfig::default()
}

fn poly(s: &str, ctx: &VariableContext) -> Polynomial {
    parse_polynomial(s, ctx).unwrap()
}

fn dan(n: u32, p: &str) -> FamilyInstance {
    FamilyInstance::danielewski(n, &poly(p, &danielewski_ctx()), &cfg()).unwrap()
}

fn kr2(n: u32, e: u32, l: u32, q: &str) -> FamilyInstance {
    FamilyInstance::koras_russell2(n, e, l, &poly(q, &koras_russell_ctx()), &cfg()).unwrap()
}

fn newf(n: u32, e: u32, p: &str, q: &str) -> FamilyInstance {
    FamilyInstance::new_family(n, e, &poly(p, &new_family_p_ctx()), &poly(q, &new_family_q_ctx()), &cfg()).unwrap()
}

fn el(inst: &FamilyInstance, s: &str) -> Polynomial {
    inst.ring.parse_element(s).unwrap()
}

#[test]
fn danielewski_data() {
    let d = dan(2, "Y^2");
    assert_eq!(d.degrees, [0, 1, 2]);
    assert_eq!(d.derivation.image(2), &el(&d, "2*y"));
    assert_eq!(d.plinth, el(&d, "x^2"));
    assert!(d.derivation.kernel_member(&d.plinth));
    let d = dan(2, "Y^3 + X*Y");
    assert_eq!(d.degrees, [0, 1, 3]);
    assert!(d.ring.equal(d.derivation.image(2), &el(&d, "3*y^2 + x")));
}

#[test]
fn danielewski_translation() {
    let d = dan(2, "Y^2 - 1");
    assert_eq!(d.translation, int(1));
    assert!(d.ring.equal(d.relation(), &el(&d, "x^2*z - y^2 - 2*y")));
    assert!(FamilyInstance::danielewski(2, &poly("Y^2 + 1", &danielewski_ctx()), &cfg()).is_err());
}

#[test]
fn parameter_ranges() {
    let dc = danielewski_ctx();
    assert!(matches!(
        FamilyInstance::danielewski(1, &poly("Y^2", &dc), &cfg()),
        Err(Error::ParameterOutOfRange(_))
    ));
    assert!(FamilyInstance::danielewski(2, &poly("Y", &dc), &cfg()).is_err());
    assert!(FamilyInstance::danielewski(2, &poly("2*Y^2", &dc), &cfg()).is_err());
    let kc = koras_russell_ctx();
    assert!(FamilyInstance::koras_russell2(2, 1, 2, &poly("T^2", &kc), &cfg()).is_err());
    assert!(FamilyInstance::koras_russell2(2, 2, 2, &poly("T^2 + 1", &kc), &cfg()).is_err());
    assert!(FamilyInstance::koras_russell2(2, 2, 2, &poly("T", &kc), &cfg()).is_err());
    let (pc, qc) = (new_family_p_ctx(), new_family_q_ctx());
    assert!(FamilyInstance::new_family(2, 1, &poly("S", &pc), &poly("Y", &qc), &cfg()).is_err());
    assert!(FamilyInstance::new_family(2, 0, &poly("S^2", &pc), &poly("Y", &qc), &cfg()).is_err());
}

#[test]
fn koras_russell_data() {
    let k = kr2(2, 2, 2, "T^2");
    assert_eq!(k.degrees, [0, 2, 0, 1]);
    assert!(k.derivation.is_local_slice(&k.slice));
    assert!(k.ring.equal(&k.derivation.apply(&k.slice), &el(&k, "(x^2 + z^2)^2")));
    assert_eq!(k.derivation.degree(&el(&k, "t*y")).unwrap(), Degree::Finite(3));
    assert!(k.ring.equal(k.relation(), &el(&k, "y*(x^2 + z^2)^2 - t^2")));
}

#[test]
fn new_family_reproduces_toy() {
    let t = newf(2, 1, "S^2", "Y^2");
    assert_eq!(t.degrees, [0, 2, 4]);
    assert!(t.ring.equal(t.relation(), &el(&t, "x^2*y - (y^2 - x*z)^2")));
    assert_eq!(t.slice, el(&t, "y^2 - x*z"));
    assert!(t.ring.equal(&t.derivation.apply(&t.slice), &el(&t, "x^3")));
    assert_eq!(t.derivation.degree(&t.slice).unwrap(), Degree::Finite(1));
    let g = newf(3, 2, "S^2 + X*S", "Y^3");
    assert_eq!(g.degrees, [0, 2, 6]);
    assert!(g.derivation.certificate().is_ok());
}

#[test]
fn new_family_translation() {
    // P(0, Q(0, c)) = (c^2 - 4)^2 has the root c = 2.
    let t = newf(2, 1, "S^2", "Y^2 - 4");
    assert_eq!(t.translation, int(2));
    assert!(t.relation().constant_term().is_zero());
}

#[test]
fn singularity() {
    let c = VariableContext::new(&["X", "Y", "Z"]).unwrap();
    assert!(singular_at_origin(&poly("X^2*Z - Y^2", &c)).unwrap());
    assert!(!singular_at_origin(&poly("X - Y^2", &c)).unwrap());
    assert!(singular_at_origin(&poly("X + 1", &c)).is_err());
    let c4 = VariableContext::new(&["X", "Y", "Z", "T"]).unwrap();
    assert!(singular_at_origin(&poly("Y*(X^2 + Z^3)^2 - T^2", &c4)).unwrap());
}

#[test]
fn stated_layer_formulas() {
    for inst in [dan(2, "Y^2"), dan(3, "Y^3 + X*Y"), kr2(2, 2, 2, "T^2"), newf(2, 1, "S^2", "Y^2")] {
        let report = inst.verify_layer_formula(8, 1).unwrap();
        assert!(report.passed(), "{:?}: {report:?}", inst.family);
        assert!(report.checked > 9);
    }
}

#[test]
fn stated_graded_relations_vanish() {
    for inst in [dan(2, "Y^2"), dan(3, "Y^3 + X*Y"), kr2(2, 2, 2, "T^2"), newf(2, 1, "S^2", "Y^2"), newf(3, 2, "S^2 + X*S", "Y^3")] {
        let f = inst.filtration().unwrap();
        assert!(inst.graded_relation_failures(&f).unwrap().is_empty(), "{:?}", inst.family);
    }
}

#[test]
fn koras_russell_is_proper_empirically() {
    let f = kr2(2, 2, 2, "T^2").filtration().unwrap();
    assert!(f.properness_check(8, 2).is_proper());
}

#[test]
fn search_on_danielewski() {
    let d = dan(2, "Y^2");
    let res = d
        .bounded_lnd_search(&SearchConfig {
            image_degree: 3,
            ..SearchConfig::default()
        })
        .unwrap();
    assert!(res.dimension > 0);
    assert!(res.grading_rank >= 1);
    assert!(res.survivors().count() > 0);
    assert!(res.all_multiples(), "{:#?}", res.candidates);
    assert!(res.candidates.iter().any(|c| !c.nilpotent));
    let ev = d.ml_evidence(&res, 4).unwrap();
    assert!(ev.matches_prediction, "{ev:?}");
}

#[test]
fn kernel_of_canonical_derivation() {
    let d = dan(2, "Y^2");
    let ev = kernel_intersection(&d.ring, &[d.derivation.clone()], 6).unwrap();
    assert_eq!(ev.dimension, 7);
    let zero = kernel_intersection(&d.ring, &[Derivation::zero(&d.ring)], 2).unwrap();
    assert_eq!(zero.dimension, d.ring.standard_monomials(2).len());
}

#[test]
fn search_rejects_zero_bounds() {
    let d = dan(2, "Y^2");
    let bad = SearchConfig {
        image_degree: 0,
        ..SearchConfig::default()
    };
    assert!(d.bounded_lnd_search(&bad).is_err());
    let small = SearchConfig {
        max_unknowns: 3,
        ..SearchConfig::default()
    };
    assert!(matches!(d.bounded_lnd_search(&small), Err(Error::SystemTooLarge { .. })));
}
