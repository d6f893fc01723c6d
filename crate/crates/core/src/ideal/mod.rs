//! Ideals of polynomial rings: Gröbner bases, normal forms, elimination,
//! saturation, initial ideals, and primality of binomial ideals.

mod groebner;
mod lattice;
mod order;

pub use groebner::{leading_monomial, GbConfig, GroebnerBasis};
pub use lattice::{smith_normal_form, LatticeBasis, SmithForm};
pub use order::MonomialOrder;

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, VariableContext, WeightVector};

/// Finitely generated ideal with a per-order cache of reduced Gröbner bases.
pub struct Ideal {
    ctx: VariableContext,
    gens: Vec<Polynomial>,
    cache: Mutex<Vec<Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Self {
            ctx: self.ctx.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter().map(|g| g.to_string())).finish()
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ctx: &VariableContext, gens: Vec<Polynomial>) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|g| g.ctx() != ctx) {
            return Err(Error::ContextMismatch {
                left: ctx.describe(),
                right: bad.ctx().describe(),
            });
        }
        Ok(Self {
            ctx: ctx.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Mutex::new(Vec::new()),
        })
    }

    pub fn zero(ctx: &VariableContext) -> Self {
        Self::new(ctx, Vec::new()).expect("empty")
    }

    fn from_basis(basis: GroebnerBasis) -> Self {
        Self {
            ctx: basis.ctx().clone(),
            gens: basis.polys().to_vec(),
            cache: Mutex::new(vec![Arc::new(basis)]),
        }
    }

    pub fn ctx(&self) -> &VariableContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced Gröbner basis under `order`, computed once and cached.
    pub fn groebner(&self, order: &MonomialOrder, cfg: &GbConfig) -> Result<Arc<GroebnerBasis>> {
        if let Some(b) = self.cache.lock().expect("cache lock").iter().find(|b| b.order() == order) {
            return Ok(Arc::clone(b));
        }
        let b = Arc::new(GroebnerBasis::compute(&self.ctx, &self.gens, order, cfg)?);
        self.cache.lock().expect("cache lock").push(Arc::clone(&b));
        Ok(b)
    }

    pub fn normal_form(&self, p: &Polynomial, order: &MonomialOrder, cfg: &GbConfig) -> Result<Polynomial> {
        self.check(p)?;
        Ok(self.groebner(order, cfg)?.reduce(p))
    }

    pub fn contains(&self, p: &Polynomial, cfg: &GbConfig) -> Result<bool> {
        self.check(p)?;
        Ok(self.default_basis(cfg)?.reduces_to_zero(p))
    }

    pub fn is_unit(&self, cfg: &GbConfig) -> Result<bool> {
        Ok(self.default_basis(cfg)?.is_unit())
    }

    /// Equality of ideals via reduced bases.
    pub fn same_ideal(&self, other: &Ideal, cfg: &GbConfig) -> Result<bool> {
        if self.ctx != other.ctx {
            return Ok(false);
        }
        Ok(self.default_basis(cfg)?.polys() == other.default_basis(cfg)?.polys())
    }

    fn default_basis(&self, cfg: &GbConfig) -> Result<Arc<GroebnerBasis>> {
        self.groebner(&MonomialOrder::grevlex(self.ctx.len()), cfg)
    }

    fn check(&self, p: &Polynomial) -> Result<()> {
        if p.ctx() != &self.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx.describe(),
                right: p.ctx().describe(),
            });
        }
        Ok(())
    }

    /// `I ∩ k[variables not in drop]`, expressed in the same context.
    pub fn eliminate(&self, drop: &[usize], cfg: &GbConfig) -> Result<Ideal> {
        if drop.is_empty() {
            return Ok(self.clone());
        }
        if let Some(&bad) = drop.iter().find(|&&i| i >= self.ctx.len()) {
            return Err(Error::Precondition(format!("variable index {bad} out of range")));
        }
        let order = MonomialOrder::elimination(self.ctx.len(), drop);
        let b = self.groebner(&order, cfg)?;
        let keep: Vec<usize> = (0..self.ctx.len()).filter(|i| !drop.contains(i)).collect();
        Ideal::new(
            &self.ctx,
            b.polys().iter().filter(|g| g.uses_only(&keep)).cloned().collect(),
        )
    }

    /// `I : f^∞` via a fresh variable `t` and elimination of `t` from
    /// `I + ⟨1 − t·f⟩`.
    pub fn saturate(&self, f: &Polynomial, cfg: &GbConfig) -> Result<Ideal> {
        self.check(f)?;
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut name = String::from("t");
        while self.ctx.index_of(&name).is_some() {
            name.push('_');
        }
        let ext = self.ctx.extended(&[name.as_str()], false)?;
        let t = Polynomial::var(&ext, self.ctx.len());
        let mut gens = self.gens.iter().map(|g| g.embed(&ext)).collect::<Result<Vec<_>>>()?;
        gens.push(&Polynomial::one(&ext) - &(&t * &f.embed(&ext)?));
        let elim = Ideal::new(&ext, gens)?.eliminate(&[self.ctx.len()], cfg)?;
        Ideal::new(
            &self.ctx,
            elim.gens.iter().map(|g| g.restrict(&self.ctx)).collect::<Result<Vec<_>>>()?,
        )
    }

    /// Ideal of `w`-top forms of all elements, from a basis under the
    /// `w`-refined order. The returned generators form a reduced basis under
    /// that same order, which is cached.
    pub fn initial_ideal(&self, w: &WeightVector, cfg: &GbConfig) -> Result<Ideal> {
        self.initial_ideal_under(&MonomialOrder::weight_refined(w.clone()), cfg)
    }

    /// As [`Ideal::initial_ideal`] for an explicit weighted order, whose
    /// tiebreak decides which reduced basis is cached on the result.
    pub fn initial_ideal_under(&self, order: &MonomialOrder, cfg: &GbConfig) -> Result<Ideal> {
        let MonomialOrder::Weighted { weights: w, .. } = order else {
            return Err(Error::Precondition("initial ideals need a weighted order".into()));
        };
        if w.len() != self.ctx.len() {
            return Err(Error::Precondition(format!(
                "weight vector of length {} on {} variables",
                w.len(),
                self.ctx.len()
            )));
        }
        let b = self.groebner(order, cfg)?;
        let tops = b.polys().iter().map(|g| g.top_form(w)).collect::<Result<Vec<_>>>()?;
        let basis = GroebnerBasis::compute(&self.ctx, &tops, order, cfg)?;
        Ok(Ideal::from_basis(basis))
    }

    /// Primality for ideals whose reduced basis consists of pure binomials
    /// `x^a − x^b`.
    pub fn binomial_prime(&self, cfg: &GbConfig) -> Result<BinomialPrimality> {
        let n = self.ctx.len();
        let b = self.default_basis(cfg)?;
        if b.is_unit() {
            return Ok(BinomialPrimality::NotPrime {
                reason: "unit ideal".into(),
            });
        }
        let mut rows = Vec::new();
        for g in b.polys() {
            match pure_binomial(g) {
                Some((a, c)) => rows.push(
                    (0..n)
                        .map(|i| BigInt::from(i64::from(a.exp(i)) - i64::from(c.exp(i))))
                        .collect(),
                ),
                None => {
                    return Ok(BinomialPrimality::Inapplicable {
                        reason: format!("basis element `{g}` is not a difference of two monomials"),
                    })
                }
            }
        }
        let lattice = LatticeBasis::new(n, rows)?;
        let all_vars = Polynomial::term(&self.ctx, Monomial::from_exponents(vec![1; n]), One::one());
        let sat = self.saturate(&all_vars, cfg)?;
        if !sat.same_ideal(self, cfg)? {
            return Ok(BinomialPrimality::NotPrime {
                reason: "not saturated with respect to the product of the variables".into(),
            });
        }
        let divisors = lattice.elementary_divisors();
        if divisors.iter().all(One::is_one) {
            Ok(BinomialPrimality::Prime { lattice, divisors })
        } else {
            Ok(BinomialPrimality::NotPrime {
                reason: format!(
                    "exponent lattice not saturated; elementary divisors {}",
                    divisors.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                ),
            })
        }
    }
}

/// `(a, b)` for `g = x^a − x^b`.
fn pure_binomial(g: &Polynomial) -> Option<(Monomial, Monomial)> {
    let terms: Vec<_> = g.terms().collect();
    match terms.as_slice() {
        [(m1, c1), (m2, c2)] if c1.abs().is_one() && (*c1 + *c2).is_zero() => {
            if c1.is_positive() {
                Some(((*m1).clone(), (*m2).clone()))
            } else {
                Some(((*m2).clone(), (*m1).clone()))
            }
        }
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum BinomialPrimality {
    Prime {
        lattice: LatticeBasis,
        #[serde(serialize_with = "crate::serde_text::seq")]
        divisors: Vec<BigInt>,
    },
    NotPrime { reason: String },
    Inapplicable { reason: String },
}

impl BinomialPrimality {
    pub fn is_prime(&self) -> bool {
        matches!(self, BinomialPrimality::Prime { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_polynomial;

    fn ideal(names: &[&str], gens: &[&str]) -> Ideal {
        let c = VariableContext::new(names).unwrap();
        let g = gens.iter().map(|s| parse_polynomial(s, &c).unwrap()).collect();
        Ideal::new(&c, g).unwrap()
    }

    fn p(i: &Ideal, s: &str) -> Polynomial {
        parse_polynomial(s, i.ctx()).unwrap()
    }

    const TOY_J: [&str; 2] = ["x^2*y - (y^2 - x*z)^2", "y^2 - x*z - s"];

    #[test]
    fn toy_membership() {
        let j = ideal(&["x", "y", "z", "s"], &TOY_J);
        let cfg = GbConfig::default();
        assert!(j.contains(&p(&j, "x^2*y - s^2"), &cfg).unwrap());
        assert!(!j.contains(&p(&j, "x*y - s"), &cfg).unwrap());
        let ord = MonomialOrder::grevlex(4);
        assert_eq!(
            j.normal_form(&p(&j, "s^2"), &ord, &cfg).unwrap(),
            j.normal_form(&p(&j, "x^2*y"), &ord, &cfg).unwrap()
        );
    }

    #[test]
    fn toy_relation_normal_form() {
        let i = ideal(&["x", "y", "z"], &["x^2*y - (y^2 - x*z)^2"]);
        let cfg = GbConfig::default();
        let ord = MonomialOrder::grevlex(3);
        assert_eq!(
            i.normal_form(&p(&i, "x^2*y"), &ord, &cfg).unwrap(),
            i.normal_form(&p(&i, "(y^2 - x*z)^2"), &ord, &cfg).unwrap()
        );
        assert!(i.normal_form(&i.generators()[0], &ord, &cfg).unwrap().is_zero());
    }

    #[test]
    fn elimination_examples() {
        let cfg = GbConfig::default();
        let i = ideal(&["t", "x"], &["t*x - 1"]);
        assert!(i.eliminate(&[0], &cfg).unwrap().generators().is_empty());
        let i = ideal(&["t", "x", "y"], &["y - x^2", "t - x"]);
        let e = i.eliminate(&[0], &cfg).unwrap();
        assert!(e.same_ideal(&ideal(&["t", "x", "y"], &["y - x^2"]), &cfg).unwrap());
        assert!(i.eliminate(&[], &cfg).unwrap().same_ideal(&i, &cfg).unwrap());
    }

    #[test]
    fn saturation_examples() {
        let cfg = GbConfig::default();
        let i = ideal(&["x", "y"], &["x*y"]);
        let s = i.saturate(&p(&i, "x"), &cfg).unwrap();
        assert!(s.same_ideal(&ideal(&["x", "y"], &["y"]), &cfg).unwrap());
        let i = ideal(&["x", "y"], &["x^2"]);
        assert!(i.saturate(&p(&i, "x"), &cfg).unwrap().is_unit(&cfg).unwrap());
        let toy = ideal(&["x", "y", "z", "s"], &["x^2*y - s^2", "y^2 - x*z"]);
        let s = toy.saturate(&p(&toy, "x*y*z*s"), &cfg).unwrap();
        assert!(s.same_ideal(&toy, &cfg).unwrap());
        assert_eq!(i.saturate(&Polynomial::zero(i.ctx()), &cfg).unwrap_err(), Error::ZeroInput);
    }

    #[test]
    fn initial_ideal_toy() {
        let cfg = GbConfig::default();
        let j = ideal(&["x", "y", "z", "s"], &TOY_J);
        let w = WeightVector::new(vec![0, 2, 4, 1]);
        let jhat = j.initial_ideal(&w, &cfg).unwrap();
        assert!(jhat.generators().iter().all(|g| g.is_homogeneous(&w)));
        let expected = ideal(&["x", "y", "z", "s"], &["x^2*y - s^2", "y^2 - x*z"]);
        assert!(jhat.same_ideal(&expected, &cfg).unwrap());
    }

    #[test]
    fn initial_ideal_of_homogeneous_is_itself() {
        let cfg = GbConfig::default();
        let i = ideal(&["x", "y", "z"], &["x^2*z - y^2"]);
        let w = WeightVector::new(vec![0, 1, 2]);
        assert!(i.initial_ideal(&w, &cfg).unwrap().same_ideal(&i, &cfg).unwrap());
    }

    #[test]
    fn initial_ideal_danielewski() {
        let cfg = GbConfig::default();
        let j = ideal(&["x", "y", "z"], &["x^2*z - y^3 - x*y - x"]);
        let w = WeightVector::new(vec![0, 1, 3]);
        let jhat = j.initial_ideal(&w, &cfg).unwrap();
        assert!(jhat.same_ideal(&ideal(&["x", "y", "z"], &["x^2*z - y^3"]), &cfg).unwrap());
    }

    #[test]
    fn binomial_primality() {
        let cfg = GbConfig::default();
        let toy = ideal(&["x", "y", "z", "s"], &["x^2*y - s^2", "y^2 - x*z"]);
        match toy.binomial_prime(&cfg).unwrap() {
            BinomialPrimality::Prime { divisors, .. } => assert_eq!(divisors, vec![BigInt::from(1); 2]),
            other => panic!("{other:?}"),
        }
        let sq = ideal(&["x", "y"], &["x^2 - y^2"]);
        assert!(matches!(sq.binomial_prime(&cfg).unwrap(), BinomialPrimality::NotPrime { .. }));
        let dan = ideal(&["x", "y", "z"], &["x^2*z - y^3"]);
        assert!(dan.binomial_prime(&cfg).unwrap().is_prime());
        let other = ideal(&["x", "y"], &["x^2 - y - 1"]);
        assert!(matches!(other.binomial_prime(&cfg).unwrap(), BinomialPrimality::Inapplicable { .. }));
        let unit = ideal(&["x", "y"], &["1"]);
        assert!(matches!(unit.binomial_prime(&cfg).unwrap(), BinomialPrimality::NotPrime { .. }));
        // Not saturated: x*(y - z) style embedded component.
        let emb = ideal(&["x", "y", "z"], &["x*y - x*z"]);
        assert!(matches!(emb.binomial_prime(&cfg).unwrap(), BinomialPrimality::NotPrime { .. }));
    }
}
