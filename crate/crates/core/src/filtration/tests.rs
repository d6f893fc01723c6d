use super::*;
use crate::ideal::{GbConfig, Ideal};
use crate::lnd::{Derivation, RingPresentation};
use crate::poly::{Degree, Polynomial, VariableContext};
use crate::sample::{self, Shape};

fn toy() -> Derivation {
    let c = VariableContext::new(&["x", "y", "z"]).unwrap();
    let ring = RingPresentation::parse(&c, &["x^2*y - (y^2 - x*z)^2"], &GbConfig::default()).unwrap();
    Derivation::parse(&ring, &["0", "2*x*(y^2 - x*z)", "4*y*(y^2 - x*z) - x^2"]).unwrap()
}

fn toy_filtration() -> CandidateFiltration {
    let d = toy();
    let spec = FiltrationSpec::new(&d, vec![el(&d, "x")], vec![el(&d, "y^2 - x*z")]).unwrap();
    CandidateFiltration::new(&spec).unwrap()
}

fn danielewski() -> CandidateFiltration {
    let c = VariableContext::new(&["x", "y", "z"]).unwrap();
    let ring = RingPresentation::parse(&c, &["x^2*z - y^2"], &GbConfig::default()).unwrap();
    let d = Derivation::parse(&ring, &["0", "x^2", "2*y"]).unwrap();
    let spec = FiltrationSpec::new(&d, vec![el(&d, "x")], vec![el(&d, "y")]).unwrap();
    CandidateFiltration::new(&spec).unwrap()
}

fn el(d: &Derivation, s: &str) -> Polynomial {
    d.ring().parse_element(s).unwrap()
}

fn ext(f: &CandidateFiltration, s: &str) -> Polynomial {
    crate::poly::parse::parse_polynomial(s, f.ctx()).unwrap()
}

fn texts(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

#[test]
fn extended_variables() {
    let f = toy_filtration();
    assert_eq!(f.ctx().names(), ["X", "Y", "Z", "S"]);
    assert_eq!(f.weights().weights(), [0, 2, 4, 1]);
    let roles: Vec<Role> = f.vars().iter().map(|v| v.role).collect();
    assert_eq!(roles, [Role::Kernel, Role::Generator, Role::Generator, Role::Slice]);
}

#[test]
fn toy_layers() {
    let f = toy_filtration();
    assert_eq!(texts(&f.layer(0).unwrap().generators), ["1"]);
    let mut l1 = texts(&f.layer(1).unwrap().generators);
    l1.sort();
    assert_eq!(l1, ["1", "S"]);
    let mut l4 = texts(&f.layer(4).unwrap().reduced);
    l4.sort();
    assert_eq!(l4, ["1", "S", "Y", "Y*S", "Z"]);
    assert_eq!(f.layer(4).unwrap().generators.len(), 10);
}

#[test]
fn toy_is_proper_with_prime_initial_ideal() {
    let f = toy_filtration();
    assert!(matches!(f.properness_check(8, 1), Properness::Proper(ProperRoute::BinomialPrime { .. })));
    let expected = Ideal::new(f.ctx(), vec![ext(&f, "X^2*Y - S^2"), ext(&f, "Y^2 - X*Z")]).unwrap();
    assert!(f.initial_ideal().unwrap().same_ideal(&expected, &GbConfig::default()).unwrap());
    let g = f.graded_presentation().unwrap();
    assert_eq!(g.degrees, [0, 2, 4, 1]);
    for r in &g.relations {
        assert!(r.is_homogeneous(&g.weights()));
    }
}

#[test]
fn danielewski_is_proper() {
    let f = danielewski();
    assert_eq!(f.ctx().names(), ["X", "Y", "Z"]);
    assert_eq!(f.weights().weights(), [0, 1, 2]);
    assert!(f.properness_check(8, 1).is_proper());
    let g = f.graded_presentation().unwrap();
    let expected = Ideal::new(f.ctx(), vec![ext(&f, "X^2*Z - Y^2")]).unwrap();
    assert!(g.ring.relations().same_ideal(&expected, &GbConfig::default()).unwrap());
}

#[test]
fn wrong_slice_is_improper() {
    let d = toy();
    let spec = FiltrationSpec::new_unchecked(&d, vec![el(&d, "x")], vec![el(&d, "y")]).unwrap();
    assert!(FiltrationSpec::new(&d, vec![el(&d, "x")], vec![el(&d, "y")]).is_err());
    let f = CandidateFiltration::new(&spec).unwrap();
    match f.properness_check(16, 3) {
        Properness::Improper { witness: Some(w), .. } => match w {
            Witness::DegreeMismatch { omega, oracle, .. } => assert_ne!(omega, oracle),
            Witness::Multiplicativity { omega_a, omega_b, omega_ab, .. } => assert_ne!(omega_ab, omega_a + omega_b),
        },
        other => panic!("{other:?}"),
    }
    assert!(f.graded_presentation().is_err());
}

#[test]
fn gr_examples() {
    let f = toy_filtration();
    let d = f.derivation().clone();
    let g = f.gr(&el(&d, "y^2")).unwrap();
    assert_eq!((g.value, g.degree), (ext(&f, "X*Z"), Degree::Finite(4)));
    let g = f.gr(&el(&d, "7")).unwrap();
    assert_eq!((g.value, g.degree), (ext(&f, "7"), Degree::Finite(0)));
    let g = f.gr(&el(&d, "x^2*y")).unwrap();
    assert_eq!(g.degree, Degree::Finite(2));
    assert!(f.graded_ring().unwrap().equal(&g.value, &ext(&f, "S^2")));
    assert!(f.gr(&el(&d, "0")).unwrap().is_zero());
    assert_eq!(f.gr(&el(&d, "0")).unwrap().degree, Degree::NegInfinity);
}

#[test]
fn gr_property_examples() {
    let f = toy_filtration();
    let d = f.derivation().clone();
    let graded = f.graded_ring().unwrap().clone();
    assert_eq!(f.gr(&el(&d, "y*z")).unwrap().value, ext(&f, "Y*Z"));
    assert_eq!(f.gr(&el(&d, "z + x")).unwrap().value, ext(&f, "Z"));
    let (a, b) = (f.gr(&el(&d, "y^2")).unwrap(), f.gr(&el(&d, "-x*z")).unwrap());
    assert_eq!(a.degree, b.degree);
    assert!(f.gr(&el(&d, "y^2 - x*z")).unwrap().degree < a.degree);
    assert!(graded.reduce(&(&a.value + &b.value)).is_zero());
}

#[test]
fn gr_properties_hold_on_samples() {
    for f in [toy_filtration(), danielewski()] {
        let report = f.gr_properties_test(14, 5).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.p1.checked > 0 && report.p2.checked > 0 && report.p4.checked > 0);
    }
}

#[test]
fn induced_toy_derivation() {
    let f = toy_filtration();
    let bar = f.induced_derivation(f.derivation()).unwrap();
    assert_eq!(bar.degree, Some(-1));
    let images = bar.derivation.images();
    assert!(images[0].is_zero());
    assert_eq!(images[1], ext(&f, "2*X*S"));
    assert_eq!(images[2], ext(&f, "4*Y*S"));
    assert_eq!(images[3], ext(&f, "X^3"));
    let zero = f.induced_derivation(&Derivation::zero(f.ring())).unwrap();
    assert!(zero.derivation.is_zero());
    assert_eq!(zero.degree, None);
}

#[test]
fn induced_danielewski_derivation() {
    let f = danielewski();
    let bar = f.induced_derivation(f.derivation()).unwrap();
    assert_eq!(bar.degree, Some(-1));
    assert_eq!(texts(bar.derivation.images()), ["0", "X^2", "2*Y"]);
    assert!(bar.derivation.certificate().is_ok());
}

#[test]
fn induced_derivation_is_homogeneous_and_kills_kernel() {
    let f = toy_filtration();
    let bar = f.induced_derivation(f.derivation()).unwrap();
    let w = f.weights();
    for (v, img) in f.vars().iter().zip(bar.derivation.images()) {
        if !img.is_zero() {
            assert!(img.is_homogeneous(w));
            assert_eq!(img.weighted_degree(w), Degree::Finite(u64::from(v.weight) - 1));
        }
    }
    let d = f.derivation().clone();
    let s = el(&d, "y^2 - x*z");
    let mut rng = sample::rng(9);
    for _ in 0..10 {
        let k = sample::polynomial(&mut rng, d.ring().ctx(), &Shape::all(d.ring().ctx(), 2, 3));
        let kernel_elt = k.substitute(&[el(&d, "x"), el(&d, "x^2"), el(&d, "3*x + 1")]).unwrap();
        assert!(d.kernel_member(&kernel_elt));
        let g = f.gr(&kernel_elt).unwrap();
        assert!(bar.derivation.apply(&g.value).is_zero());
    }
    assert!(!bar.derivation.apply(&f.gr(&s).unwrap().value).is_zero());
    assert!(bar.derivation.certificate().is_ok());
}

#[test]
fn layer_equality_holds_for_proper_specs() {
    for f in [toy_filtration(), danielewski()] {
        let report = f.layer_equality(8, 2).unwrap();
        assert!(report.checked > 10);
        assert!(report.mismatches.is_empty(), "{report:?}");
    }
}

#[test]
fn degree_function_axioms() {
    let d = toy();
    let deg = DegreeFunction::lnd(&d);
    let mut rng = sample::rng(21);
    let shape = Shape::all(d.ring().ctx(), 3, 3);
    assert_eq!(deg.eval(&el(&d, "0")).unwrap(), Degree::NegInfinity);
    for _ in 0..20 {
        let a = sample::polynomial(&mut rng, d.ring().ctx(), &shape);
        let b = sample::polynomial(&mut rng, d.ring().ctx(), &shape);
        let (da, db) = (deg.eval(&a).unwrap(), deg.eval(&b).unwrap());
        assert_eq!(deg.eval(&(&a * &b)).unwrap(), da + db);
        assert!(deg.eval(&(&a + &b)).unwrap() <= da.max(db));
    }
    let w = DegreeFunction::weight(crate::poly::WeightVector::new(vec![1, 2, 3]));
    assert_eq!(w.eval(&el(&d, "x*z + y")).unwrap(), Degree::Finite(4));
}
