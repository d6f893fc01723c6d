use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lnd::Derivation;
use crate::poly::Polynomial;

/// Input data of the candidate filtration: a locally nilpotent derivation,
/// generators `z_i` of its kernel, and local slices `s_j` whose images
/// generate the plinth ideal.
#[derive(Clone, Debug)]
pub struct FiltrationSpec {
    derivation: Derivation,
    kernel: Vec<Polynomial>,
    slices: Vec<Polynomial>,
    degrees: Vec<u32>,
}

impl FiltrationSpec {
    /// Checks that the origin lies on the variety, that every `z_i` is in the
    /// kernel and every `s_j` is a local slice, all vanishing at the origin.
    pub fn new(derivation: &Derivation, kernel: Vec<Polynomial>, slices: Vec<Polynomial>) -> Result<Self> {
        let spec = Self::new_unchecked(derivation, kernel, slices)?;
        let ring = derivation.ring();
        if let Some(g) = ring.relations().generators().iter().find(|g| !g.constant_term().is_zero()) {
            return Err(Error::Precondition(format!("origin is not on the variety: relation `{g}`")));
        }
        for z in &spec.kernel {
            if !derivation.kernel_member(z) {
                return Err(Error::Precondition(format!("`{z}` is not in the kernel")));
            }
            if !z.constant_term().is_zero() {
                return Err(Error::Precondition(format!("kernel generator `{z}` does not vanish at 0")));
            }
        }
        for s in &spec.slices {
            if !derivation.is_local_slice(s) {
                return Err(Error::Precondition(format!("`{s}` is not a local slice")));
            }
            if !s.constant_term().is_zero() {
                return Err(Error::Precondition(format!("slice `{s}` does not vanish at 0")));
            }
        }
        Ok(spec)
    }

    /// Only requires local nilpotency (for the generator degrees).
    pub fn new_unchecked(derivation: &Derivation, kernel: Vec<Polynomial>, slices: Vec<Polynomial>) -> Result<Self> {
        let ctx = derivation.ring().ctx();
        if let Some(p) = kernel.iter().chain(&slices).find(|p| p.ctx() != ctx) {
            return Err(Error::ContextMismatch {
                left: ctx.names().join(","),
                right: p.ctx().names().join(","),
            });
        }
        let degrees = derivation.certificate()?.orders.clone();
        Ok(Self {
            derivation: derivation.clone(),
            kernel,
            slices,
            degrees,
        })
    }

    pub fn derivation(&self) -> &Derivation {
        &self.derivation
    }

    pub fn kernel(&self) -> &[Polynomial] {
        &self.kernel
    }

    pub fn slices(&self) -> &[Polynomial] {
        &self.slices
    }

    /// `deg(x_i)` for each ring variable.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }
}
