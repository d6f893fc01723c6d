use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::Result;
use crate::lnd::Derivation;
use crate::poly::{Degree, Polynomial, WeightVector};

#[derive(Clone, Debug)]
pub enum DegreeKind {
    /// `deg_D` by iteration, bounded by the derivation's certificate.
    Lnd(Derivation),
    /// Weighted degree of the given representative.
    Weight(WeightVector),
}

/// A degree function with a memo of evaluated elements.
#[derive(Debug)]
pub struct DegreeFunction {
    kind: DegreeKind,
    cache: Mutex<HashMap<Polynomial, Degree>>,
}

impl DegreeFunction {
    pub fn lnd(d: &Derivation) -> Self {
        Self::from_kind(DegreeKind::Lnd(d.clone()))
    }

    pub fn weight(w: WeightVector) -> Self {
        Self::from_kind(DegreeKind::Weight(w))
    }

    fn from_kind(kind: DegreeKind) -> Self {
        Self {
            kind,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn kind(&self) -> &DegreeKind {
        &self.kind
    }

    pub fn eval(&self, p: &Polynomial) -> Result<Degree> {
        let key = match &self.kind {
            DegreeKind::Lnd(d) => d.ring().reduce(p),
            DegreeKind::Weight(_) => p.clone(),
        };
        if let Some(v) = self.cache.lock().expect("degree cache").get(&key) {
            return Ok(*v);
        }
        let v = match &self.kind {
            DegreeKind::Lnd(d) => d.degree(&key)?,
            DegreeKind::Weight(w) => key.weighted_degree(w),
        };
        self.cache.lock().expect("degree cache").insert(key, v);
        Ok(v)
    }
}
