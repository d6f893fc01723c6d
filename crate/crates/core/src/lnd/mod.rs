//! Presented algebras and their derivations.

mod derivation;
mod ring;

pub use derivation::{Derivation, Nilpotency, NilpotencyCertificate, DEFAULT_NILP_BOUND};
pub use ring::RingPresentation;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::GbConfig;
    use crate::morphisms::RingMorphism;
    use crate::poly::{Degree, Polynomial, VariableContext};
    use crate::sample::{self, Shape};

    const TOY_IMAGES: [&str; 3] = ["0", "2*x*(y^2 - x*z)", "4*y*(y^2 - x*z) - x^2"];

    fn toy() -> Derivation {
        let c = VariableContext::new(&["x", "y", "z"]).unwrap();
        let ring = RingPresentation::parse(&c, &["x^2*y - (y^2 - x*z)^2"], &GbConfig::default()).unwrap();
        Derivation::parse(&ring, &TOY_IMAGES).unwrap()
    }

    fn free_toy() -> Derivation {
        let c = VariableContext::new(&["x", "y", "z"]).unwrap();
        Derivation::parse(&RingPresentation::free(&c), &TOY_IMAGES).unwrap()
    }

    fn el(d: &Derivation, s: &str) -> Polynomial {
        d.ring().parse_element(s).unwrap()
    }

    #[test]
    fn well_definedness() {
        let d = toy();
        assert!(Derivation::parse(d.ring(), &["0", "0", "0"]).unwrap().is_zero());
        match Derivation::parse(d.ring(), &["0", "1", "0"]) {
            Err(crate::Error::NotWellDefined { .. }) => {}
            other => panic!("{other:?}"),
        }
        // The residue of the rejected derivation is x^2 (mod I): check directly.
        let bad = Derivation::new_unchecked(d.ring(), vec![el(&d, "0"), el(&d, "1"), el(&d, "0")]);
        let r = bad.apply(&d.ring().relations().generators()[0]);
        assert!(d.ring().equal(&r, &el(&d, "x^2 - 4*y*(y^2 - x*z)")));
    }

    #[test]
    fn toy_values() {
        let d = toy();
        assert!(d.ring().equal(&d.apply(&el(&d, "y^2 - x*z")), &el(&d, "x^3")));
        assert!(d.apply(&el(&d, "7")).is_zero());
        assert!(d.ring().equal(
            &d.apply(&el(&d, "y*z")),
            &el(&d, "2*x*(y^2 - x*z)*z + y*(4*y*(y^2 - x*z) - x^2)")
        ));
        assert!(d.iterate(&el(&d, "y"), 3).is_zero());
        assert!(d.iterate(&el(&d, "z"), 5).is_zero());
        assert!(!d.iterate(&el(&d, "z"), 4).is_zero());
        assert_eq!(d.iterate(&el(&d, "y"), 0), el(&d, "y"));
    }

    #[test]
    fn toy_degrees() {
        let d = toy();
        let deg = |s: &str| d.degree(&el(&d, s)).unwrap();
        assert_eq!(deg("x"), Degree::Finite(0));
        assert_eq!(deg("y"), Degree::Finite(2));
        assert_eq!(deg("z"), Degree::Finite(4));
        assert_eq!(deg("y^2 - x*z"), Degree::Finite(1));
        assert_eq!(deg("y*z"), Degree::Finite(6));
        assert_eq!(deg("0"), Degree::NegInfinity);
        assert_eq!(d.deg_lnd(&el(&d, "z"), 3), Err(crate::Error::BoundExceeded { bound: 3 }));
    }

    #[test]
    fn nilpotency_verdicts() {
        let d = toy();
        assert_eq!(
            d.is_locally_nilpotent(10),
            Nilpotency::Yes(NilpotencyCertificate {
                orders: vec![0, 2, 4],
                bound: 10
            })
        );
        let z = Derivation::zero(d.ring());
        assert!(matches!(z.is_locally_nilpotent(1), Nilpotency::Yes(c) if c.orders == vec![0, 0, 0]));
        let c = VariableContext::new(&["x", "y", "z"]).unwrap();
        let euler = Derivation::parse(&RingPresentation::free(&c), &["x", "y", "z"]).unwrap();
        for bound in [1, 5, 30] {
            assert!(matches!(euler.is_locally_nilpotent(bound), Nilpotency::NoWithinBound { .. }));
        }
    }

    #[test]
    fn kernel_and_slices() {
        let d = toy();
        assert!(d.kernel_member(&el(&d, "x")));
        assert!(d.kernel_member(&el(&d, "5")));
        assert!(!d.kernel_member(&el(&d, "y")));
        assert!(d.is_local_slice(&el(&d, "y^2 - x*z")));
        assert!(!d.is_local_slice(&el(&d, "x^2")));
        assert!(!d.is_local_slice(&el(&d, "z")));
    }

    #[test]
    fn conjugation() {
        let d = free_toy();
        let ring = d.ring().clone();
        let id = RingMorphism::identity(&ring);
        assert_eq!(d.conjugate(&id).unwrap(), d);
        let alpha = RingMorphism::parse(&ring, &ring, &["x", "y", "z + x^2"])
            .unwrap()
            .with_inverse_images(&["x", "y", "z - x^2"])
            .unwrap();
        let da = d.conjugate(&alpha).unwrap();
        let cert = match da.is_locally_nilpotent(20) {
            Nilpotency::Yes(c) => c,
            other => panic!("{other:?}"),
        };
        assert_eq!(&cert.orders[..2], &[0, 2]);
        let mut rng = sample::rng(11);
        let shape = Shape::all(ring.ctx(), 3, 3);
        for _ in 0..20 {
            let b = sample::polynomial(&mut rng, ring.ctx(), &shape);
            assert_eq!(da.degree(&b).unwrap(), d.degree(&alpha.apply(&b).unwrap()).unwrap());
        }
    }

    #[test]
    fn slice_expansion_reconstructs() {
        let d = toy();
        let r = el(&d, "y^2 - x*z");
        let c = d.apply(&r);
        for f in ["y", "z", "y*z + x", "z^2 - 3*y"] {
            let f = el(&d, f);
            let a = d.slice_expansion(&f, &r).unwrap();
            let n = a.len() - 1;
            let mut sum = Polynomial::zero(d.ring().ctx());
            for (i, ai) in a.iter().enumerate() {
                assert!(d.kernel_member(ai));
                sum = &sum + &(ai * &r.pow(i as u32));
            }
            assert!(d.ring().equal(&sum, &(&c.pow(n as u32) * &f)));
        }
    }
}
