use std::fmt;

use crate::error::{Error, Result};
use crate::lnd::RingPresentation;
use crate::poly::Polynomial;

/// k-algebra map between presented algebras, given on the source variables.
#[derive(Clone)]
pub struct RingMorphism {
    source: RingPresentation,
    target: RingPresentation,
    images: Vec<Polynomial>,
    inverse: Option<Vec<Polynomial>>,
}

impl fmt::Debug for RingMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, img) in self.images.iter().enumerate() {
            m.entry(&self.source.ctx().name(i), &img.to_string());
        }
        m.finish()
    }
}

impl RingMorphism {
    /// Images are reduced in the target. No homomorphism check is made here;
    /// see [`RingMorphism::check`].
    pub fn new(source: &RingPresentation, target: &RingPresentation, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::Precondition(format!(
                "morphism needs {} images, got {}",
                source.nvars(),
                images.len()
            )));
        }
        if let Some(bad) = images.iter().find(|p| p.ctx() != target.ctx()) {
            return Err(Error::ContextMismatch {
                left: target.ctx().names().join(","),
                right: bad.ctx().names().join(","),
            });
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            images: images.iter().map(|p| target.reduce(p)).collect(),
            inverse: None,
        })
    }

    pub fn parse(source: &RingPresentation, target: &RingPresentation, images: &[&str]) -> Result<Self> {
        let imgs = images.iter().map(|s| target.parse_element(s)).collect::<Result<Vec<_>>>()?;
        Self::new(source, target, imgs)
    }

    pub fn identity(ring: &RingPresentation) -> Self {
        let mut m = Self::new(ring, ring, ring.vars()).expect("identity");
        m.inverse = Some(ring.vars());
        m
    }

    pub fn source(&self) -> &RingPresentation {
        &self.source
    }

    pub fn target(&self) -> &RingPresentation {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.ctx() != self.source.ctx() {
            return Err(Error::ContextMismatch {
                left: self.source.ctx().names().join(","),
                right: p.ctx().names().join(","),
            });
        }
        Ok(self.target.reduce(&p.substitute(&self.images)?))
    }

    /// Every source relation lands in the target's relation ideal.
    pub fn check(&self) -> bool {
        self.source
            .relations()
            .generators()
            .iter()
            .all(|g| self.apply(g).is_ok_and(|r| r.is_zero()))
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &RingMorphism) -> Result<RingMorphism> {
        if g.source != self.target {
            return Err(Error::Precondition("composition across different rings".into()));
        }
        let images = self.images.iter().map(|p| g.apply(p)).collect::<Result<Vec<_>>>()?;
        let mut out = RingMorphism::new(&self.source, &g.target, images)?;
        if let (Some(inv_self), Some(inv_g)) = (self.inverse(), g.inverse()) {
            let images = inv_g.images.iter().map(|p| inv_self.apply(p)).collect::<Result<Vec<_>>>()?;
            out.inverse = Some(images);
        }
        Ok(out)
    }

    /// Attaches `inverse` after checking that it is a homomorphism and that
    /// both compositions fix every variable.
    pub fn with_inverse(mut self, inverse: &RingMorphism) -> Result<Self> {
        if inverse.source != self.target || inverse.target != self.source {
            return Err(Error::NotInvertible("inverse has mismatched rings".into()));
        }
        if !self.check() {
            return Err(Error::NotInvertible("map is not a homomorphism".into()));
        }
        if !inverse.check() {
            return Err(Error::NotInvertible("candidate inverse is not a homomorphism".into()));
        }
        for (a, b, name) in [(&self, inverse, "inverse after map"), (inverse, &self, "map after inverse")] {
            for (i, p) in a.images.iter().enumerate() {
                let back = b.apply(p)?;
                if !a.source.equal(&back, &a.source.var(i)) {
                    return Err(Error::NotInvertible(format!(
                        "{name} sends {} to {back}",
                        a.source.ctx().name(i)
                    )));
                }
            }
        }
        self.inverse = Some(inverse.images.clone());
        Ok(self)
    }

    pub fn with_inverse_images(self, images: &[&str]) -> Result<Self> {
        let inv = RingMorphism::parse(&self.target, &self.source, images)?;
        self.with_inverse(&inv)
    }

    pub fn has_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    /// The recorded inverse, itself carrying `self` as its inverse.
    pub fn inverse(&self) -> Option<RingMorphism> {
        self.inverse.as_ref().map(|imgs| RingMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            images: imgs.clone(),
            inverse: Some(self.images.clone()),
        })
    }
}
