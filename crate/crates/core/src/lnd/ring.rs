use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::{GbConfig, GroebnerBasis, Ideal, MonomialOrder};
use crate::poly::parse::parse_polynomial;
use crate::poly::{Monomial, Polynomial, VariableContext};

struct Inner {
    ctx: VariableContext,
    relations: Ideal,
    order: MonomialOrder,
    basis: Arc<GroebnerBasis>,
    cfg: GbConfig,
}

/// `k[x_1..x_n] / I` with the Gröbner basis of `I` computed up front, so
/// every equality test afterwards is a pure normal-form comparison.
#[derive(Clone)]
pub struct RingPresentation(Arc<Inner>);

impl fmt::Debug for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k[{}]/{:?}", self.0.ctx.names().join(","), self.0.relations)
    }
}

impl PartialEq for RingPresentation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ctx == other.0.ctx && self.0.order == other.0.order && self.0.basis.polys() == other.0.basis.polys())
    }
}

impl RingPresentation {
    pub fn new(ctx: &VariableContext, relations: Vec<Polynomial>, cfg: &GbConfig) -> Result<Self> {
        Self::with_order(ctx, relations, MonomialOrder::grevlex(ctx.len()), cfg)
    }

    pub fn with_order(ctx: &VariableContext, relations: Vec<Polynomial>, order: MonomialOrder, cfg: &GbConfig) -> Result<Self> {
        let relations = Ideal::new(ctx, relations)?;
        let basis = relations.groebner(&order, cfg)?;
        if basis.is_unit() {
            return Err(Error::Precondition("relations generate the unit ideal".into()));
        }
        Ok(Self(Arc::new(Inner {
            ctx: ctx.clone(),
            relations,
            order,
            basis,
            cfg: *cfg,
        })))
    }

    /// Parses each relation in `ctx`.
    pub fn parse(ctx: &VariableContext, relations: &[&str], cfg: &GbConfig) -> Result<Self> {
        let rels = relations
            .iter()
            .map(|r| parse_polynomial(r, ctx))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, rels, cfg)
    }

    pub fn free(ctx: &VariableContext) -> Self {
        Self::new(ctx, Vec::new(), &GbConfig::default()).expect("no relations")
    }

    pub fn ctx(&self) -> &VariableContext {
        &self.0.ctx
    }

    pub fn nvars(&self) -> usize {
        self.0.ctx.len()
    }

    pub fn relations(&self) -> &Ideal {
        &self.0.relations
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.0.basis
    }

    pub fn config(&self) -> &GbConfig {
        &self.0.cfg
    }

    pub fn var(&self, idx: usize) -> Polynomial {
        Polynomial::var(&self.0.ctx, idx)
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn parse_element(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(text, &self.0.ctx)
    }

    /// Canonical representative of the class of `p`.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        self.0.basis.reduce(p)
    }

    pub fn is_zero(&self, p: &Polynomial) -> bool {
        self.0.basis.reduces_to_zero(p)
    }

    pub fn equal(&self, a: &Polynomial, b: &Polynomial) -> bool {
        self.is_zero(&(a - b))
    }

    /// Standard monomials (a basis of the quotient) of total degree `<= bound`.
    pub fn standard_monomials(&self, bound: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars()];
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, ring: &RingPresentation, out: &mut Vec<Monomial>) {
            if i == exps.len() {
                let m = Monomial::from_exponents(exps.clone());
                if ring.basis().is_standard(&m) {
                    out.push(m);
                }
                return;
            }
            for e in 0..=left {
                exps[i] = e;
                rec(i + 1, left - e, exps, ring, out);
            }
            exps[i] = 0;
        }
        rec(0, bound, &mut exps, self, &mut out);
        out.sort();
        out
    }
}
