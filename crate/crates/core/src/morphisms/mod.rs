//! Morphisms of presented algebras, automorphisms of the hypersurface
//! families, and isomorphism decisions.

mod automorphism;
mod iso;
mod morphism;

pub use automorphism::{
    build_auto_danielewski, build_auto_newfamily, data_ctx, normalize_danielewski, recover_danielewski_data,
    recover_newfamily_data, verify_conjugation_identity, verify_degree_preservation, AutomorphismData, Normalized,
    PreservationReport,
};
pub use iso::{iso_decide, solve_multiplicative, IsoDecision, MultiplicativeSolution};
pub use morphism::RingMorphism;
