//! Exact computations with locally nilpotent derivations: filtrations,
//! associated graded algebras, and the hypersurface families built on them.

pub mod error;
pub mod families;
pub mod filtration;
pub mod ideal;
pub mod linalg;
pub mod lnd;
pub mod morphisms;
pub mod poly;
pub mod sample;
pub mod selftest;
mod serde_text;

pub use error::{Error, Result};
pub use ideal::{GbConfig, GroebnerBasis, Ideal, MonomialOrder};
pub use lnd::{Derivation, RingPresentation};
pub use morphisms::RingMorphism;
pub use poly::{Degree, Monomial, Polynomial, Rational, VariableContext, WeightVector};
