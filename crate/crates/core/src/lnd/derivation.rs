use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use super::RingPresentation;
use crate::error::{Error, Result};
use crate::morphisms::RingMorphism;
use crate::poly::{int, Degree, Polynomial, Rational, WeightVector};

/// Default iteration bound for nilpotency certificates.
pub const DEFAULT_NILP_BOUND: usize = 64;

/// Exact per-variable nilpotency orders: `orders[i]` is the least `k` with
/// `D^(k+1)(x_i) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotencyCertificate {
    pub orders: Vec<u32>,
    pub bound: usize,
}

impl NilpotencyCertificate {
    /// Weights under which the weighted degree of any representative bounds
    /// the derivation degree from above.
    pub fn weights(&self) -> WeightVector {
        WeightVector::new(self.orders.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Nilpotency {
    Yes(NilpotencyCertificate),
    /// `variable` was still nonzero after `bound` applications.
    NoWithinBound { variable: String, bound: usize },
}

/// A derivation of a presented algebra, given by the images of the variables.
#[derive(Clone)]
pub struct Derivation {
    ring: RingPresentation,
    images: Vec<Polynomial>,
    nilp_bound: usize,
    cert: OnceLock<Nilpotency>,
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, img) in self.images.iter().enumerate() {
            m.entry(&self.ring.ctx().name(i), &img.to_string());
        }
        m.finish()
    }
}

impl PartialEq for Derivation {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.images == other.images
    }
}

impl Derivation {
    /// Accepts the images iff every relation generator is sent into the
    /// relation ideal.
    pub fn new(ring: &RingPresentation, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != ring.nvars() {
            return Err(Error::Precondition(format!(
                "derivation needs {} images, got {}",
                ring.nvars(),
                images.len()
            )));
        }
        if let Some(bad) = images.iter().find(|p| p.ctx() != ring.ctx()) {
            return Err(Error::ContextMismatch {
                left: ring.ctx().names().join(","),
                right: bad.ctx().names().join(","),
            });
        }
        let d = Self::new_unchecked(ring, images.iter().map(|p| ring.reduce(p)).collect());
        for g in ring.relations().generators() {
            let r = d.apply(g);
            if !r.is_zero() {
                return Err(Error::NotWellDefined {
                    relation: g.to_string(),
                    residue: r.to_string(),
                });
            }
        }
        Ok(d)
    }

    /// Skips the well-definedness check. Images are used as given.
    pub fn new_unchecked(ring: &RingPresentation, images: Vec<Polynomial>) -> Self {
        Self {
            ring: ring.clone(),
            images,
            nilp_bound: DEFAULT_NILP_BOUND,
            cert: OnceLock::new(),
        }
    }

    pub fn parse(ring: &RingPresentation, images: &[&str]) -> Result<Self> {
        let imgs = images.iter().map(|s| ring.parse_element(s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, imgs)
    }

    pub fn zero(ring: &RingPresentation) -> Self {
        Self::new_unchecked(ring, vec![Polynomial::zero(ring.ctx()); ring.nvars()])
    }

    /// Bound used by the lazily computed certificate behind [`Derivation::degree`].
    pub fn with_nilp_bound(mut self, bound: usize) -> Self {
        self.nilp_bound = bound;
        self.cert = OnceLock::new();
        self
    }

    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, var: usize) -> &Polynomial {
        &self.images[var]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Polynomial::is_zero)
    }

    /// `f · D`.
    pub fn scaled(&self, f: &Polynomial) -> Derivation {
        Self::new_unchecked(&self.ring, self.images.iter().map(|p| self.ring.reduce(&(p * f))).collect())
    }

    /// Leibniz extension, reduced modulo the relations.
    pub fn apply(&self, b: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(self.ring.ctx());
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() || b.degree_in(i).unwrap_or(0) == 0 {
                continue;
            }
            acc = &acc + &(&b.partial_derivative(i) * img);
        }
        self.ring.reduce(&acc)
    }

    pub fn iterate(&self, b: &Polynomial, k: usize) -> Polynomial {
        let mut cur = self.ring.reduce(b);
        for _ in 0..k {
            if cur.is_zero() {
                break;
            }
            cur = self.apply(&cur);
        }
        cur
    }

    /// Nilpotency on generators, which gives local nilpotency on the whole
    /// algebra.
    pub fn is_locally_nilpotent(&self, bound: usize) -> Nilpotency {
        let mut orders = Vec::with_capacity(self.images.len());
        for i in 0..self.ring.nvars() {
            match self.deg_lnd(&self.ring.var(i), bound) {
                Ok(Degree::Finite(d)) => orders.push(d as u32),
                Ok(Degree::NegInfinity) => orders.push(0),
                Err(_) => {
                    return Nilpotency::NoWithinBound {
                        variable: self.ring.ctx().name(i).to_string(),
                        bound,
                    }
                }
            }
        }
        Nilpotency::Yes(NilpotencyCertificate { orders, bound })
    }

    /// Certificate under the derivation's own bound, computed once.
    pub fn certificate(&self) -> Result<&NilpotencyCertificate> {
        match self.cert.get_or_init(|| self.is_locally_nilpotent(self.nilp_bound)) {
            Nilpotency::Yes(c) => Ok(c),
            Nilpotency::NoWithinBound { bound, .. } => Err(Error::BoundExceeded { bound: *bound }),
        }
    }

    /// `min { i : D^(i+1)(b) = 0 }` by iteration, failing after `bound`
    /// applications that did not reach zero.
    pub fn deg_lnd(&self, b: &Polynomial, bound: usize) -> Result<Degree> {
        let mut cur = self.ring.reduce(b);
        if cur.is_zero() {
            return Ok(Degree::NegInfinity);
        }
        for i in 0..bound {
            cur = self.apply(&cur);
            if cur.is_zero() {
                return Ok(Degree::Finite(i as u64));
            }
        }
        Err(Error::BoundExceeded { bound })
    }

    /// Exact degree with the bound taken from the certificate: the
    /// certificate-weighted degree of `b` plus one always suffices.
    pub fn degree(&self, b: &Polynomial) -> Result<Degree> {
        let w = self.certificate()?.weights();
        match b.weighted_degree(&w) {
            Degree::NegInfinity => Ok(Degree::NegInfinity),
            Degree::Finite(d) => self.deg_lnd(b, d as usize + 1),
        }
    }

    pub fn kernel_member(&self, b: &Polynomial) -> bool {
        self.apply(b).is_zero()
    }

    pub fn is_local_slice(&self, s: &Polynomial) -> bool {
        let ds = self.apply(s);
        !ds.is_zero() && self.apply(&ds).is_zero()
    }

    /// `α⁻¹ ∘ D ∘ α` for an automorphism `α` of this ring with known inverse.
    pub fn conjugate(&self, alpha: &RingMorphism) -> Result<Derivation> {
        if alpha.source() != &self.ring || alpha.target() != &self.ring {
            return Err(Error::Precondition("conjugating morphism must be an endomorphism of the ring".into()));
        }
        let inv = alpha
            .inverse()
            .ok_or_else(|| Error::NotInvertible("no inverse recorded".into()))?;
        let images = alpha
            .images()
            .iter()
            .map(|a| inv.apply(&self.apply(a)))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(&self.ring, images)
    }

    /// Coefficients `a_0..a_n` with `c^n · f = Σ a_i r^i`, each `a_i` in the
    /// kernel, where `c = D(r)` for a local slice `r` and `n = deg f`.
    pub fn slice_expansion(&self, f: &Polynomial, r: &Polynomial) -> Result<Vec<Polynomial>> {
        if !self.is_local_slice(r) {
            return Err(Error::Precondition(format!("`{r}` is not a local slice")));
        }
        let c = self.apply(r);
        let n = match self.degree(f)? {
            Degree::NegInfinity => return Ok(Vec::new()),
            Degree::Finite(n) => n as usize,
        };
        let mut derivs = vec![self.ring.reduce(f)];
        for _ in 0..n {
            let next = self.apply(derivs.last().unwrap());
            derivs.push(next);
        }
        let c_pows: Vec<Polynomial> = (0..=n).map(|k| c.pow(k as u32)).collect();
        let r_pows: Vec<Polynomial> = (0..=n).map(|k| r.pow(k as u32)).collect();
        let fact = |k: usize| -> Rational { (1..=k).fold(int(1), |a, j| a * int(j as i64)) };
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut a = Polynomial::zero(self.ring.ctx());
            for j in 0..=n - i {
                let mut coeff = fact(j).recip();
                if j % 2 == 1 {
                    coeff = -coeff;
                }
                let t = &(&derivs[i + j] * &r_pows[j]) * &c_pows[n - i - j];
                a = &a + &t.scale(&coeff);
            }
            out.push(self.ring.reduce(&a.scale(&fact(i).recip())));
        }
        Ok(out)
    }
}
