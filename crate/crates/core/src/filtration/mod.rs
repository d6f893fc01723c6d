//! Degree functions, the candidate filtration built from kernel generators
//! and local slices, and its associated graded algebra.

mod candidate;
mod degree;
mod graded;
mod spec;

pub use candidate::{
    CandidateFiltration, ExtendedVar, Layer, LayerEqualityReport, Mismatch, ProperRoute, Properness, Role, Witness,
};
pub use degree::{DegreeFunction, DegreeKind};
pub use graded::{GradedElement, GradedPresentation, GrReport, InducedDerivation, PropertyTally};
pub use spec::FiltrationSpec;

#[cfg(test)]
mod tests;
