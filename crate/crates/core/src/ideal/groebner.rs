use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use super::MonomialOrder;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Rational, VariableContext};

/// Limits for Gröbner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbConfig {
    /// Maximum number of elementary reduction steps per basis computation.
    pub budget: u64,
}

impl Default for GbConfig {
    fn default() -> Self {
        Self { budget: 1_000_000 }
    }
}

#[derive(Clone, Debug)]
struct Term {
    key: Vec<i64>,
    mono: Monomial,
    coef: Rational,
}

/// Polynomial as a vector of terms sorted by descending order key.
#[derive(Clone, Debug, Default)]
struct Sorted(Vec<Term>);

impl Sorted {
    fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<Term> = p
            .terms()
            .map(|(m, c)| Term {
                key: order.key(m),
                mono: m.clone(),
                coef: c.clone(),
            })
            .collect();
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        Sorted(terms)
    }

    fn to_poly(&self, ctx: &VariableContext) -> Polynomial {
        Polynomial::from_terms(ctx, self.0.iter().map(|t| (t.mono.clone(), t.coef.clone())))
    }

    fn lead(&self) -> &Term {
        &self.0[0]
    }

    fn make_monic(&mut self) {
        let inv = self.0[0].coef.recip();
        if inv.is_one() {
            return;
        }
        for t in &mut self.0 {
            t.coef *= &inv;
        }
    }
}

/// `a[from..] - c * m * b[1..]`, where the leading terms are known to cancel.
fn sub_scaled_tail(a: &[Term], c: &Rational, mkey: &[i64], m: &Monomial, b: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let shifted = b.iter().map(|t| Term {
        key: t.key.iter().zip(mkey).map(|(x, y)| x + y).collect(),
        mono: t.mono.mul(m),
        coef: -(&t.coef * c),
    });
    let mut ia = a.iter().cloned().peekable();
    let mut ib = shifted.peekable();
    loop {
        let ord = match (ia.peek(), ib.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some(x), Some(y)) => x.key.cmp(&y.key),
        };
        match ord {
            Ordering::Greater => out.push(ia.next().unwrap()),
            Ordering::Less => out.push(ib.next().unwrap()),
            Ordering::Equal => {
                let mut x = ia.next().unwrap();
                let y = ib.next().unwrap();
                x.coef += y.coef;
                if !x.coef.is_zero() {
                    out.push(x);
                }
            }
        }
    }
    out
}

struct Steps {
    used: u64,
    budget: u64,
}

impl Steps {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.budget {
            Err(Error::BudgetExhausted(self.budget))
        } else {
            Ok(())
        }
    }
}

/// Full reduction of `f` modulo monic `basis`.
fn reduce(f: Sorted, basis: &[&Sorted], order: &MonomialOrder, steps: &mut Steps) -> Result<Sorted> {
    let mut rem = Vec::new();
    let mut cur = f.0;
    let mut pos = 0;
    while pos < cur.len() {
        let lt = &cur[pos];
        let hit = basis.iter().find_map(|g| lt.mono.div(&g.lead().mono).map(|q| (q, *g)));
        match hit {
            Some((q, g)) => {
                steps.tick()?;
                let qkey = order.key(&q);
                let c = lt.coef.clone();
                cur = sub_scaled_tail(&cur[pos + 1..], &c, &qkey, &q, &g.0[1..]);
                pos = 0;
            }
            None => {
                rem.push(cur[pos].clone());
                pos += 1;
            }
        }
    }
    Ok(Sorted(rem))
}

fn spoly(f: &Sorted, g: &Sorted, order: &MonomialOrder) -> Sorted {
    let l = f.lead().mono.lcm(&g.lead().mono);
    let uf = l.div(&f.lead().mono).expect("lcm");
    let ug = l.div(&g.lead().mono).expect("lcm");
    let scaled_f: Vec<Term> = {
        let k = order.key(&uf);
        f.0[1..]
            .iter()
            .map(|t| Term {
                key: t.key.iter().zip(&k).map(|(x, y)| x + y).collect(),
                mono: t.mono.mul(&uf),
                coef: t.coef.clone(),
            })
            .collect()
    };
    Sorted(sub_scaled_tail(&scaled_f, &Rational::one(), &order.key(&ug), &ug, &g.0[1..]))
}

/// A reduced, monic Gröbner basis together with its order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ctx: VariableContext,
    order: MonomialOrder,
    elems: Vec<Sorted>,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Buchberger's algorithm with the product and chain criteria, normal
    /// selection, and final interreduction.
    pub fn compute(ctx: &VariableContext, gens: &[Polynomial], order: &MonomialOrder, cfg: &GbConfig) -> Result<Self> {
        if order.nvars() != ctx.len() {
            return Err(Error::InvalidContext(format!(
                "order on {} variables used with {} variables",
                order.nvars(),
                ctx.len()
            )));
        }
        let mut steps = Steps {
            used: 0,
            budget: cfg.budget,
        };
        let mut g: Vec<Sorted> = Vec::new();
        let mut pending: HashSet<(usize, usize)> = HashSet::new();
        for p in gens {
            if p.ctx() != ctx {
                return Err(Error::ContextMismatch {
                    left: ctx.describe(),
                    right: p.ctx().describe(),
                });
            }
            let refs: Vec<&Sorted> = g.iter().collect();
            let mut r = reduce(Sorted::from_poly(p, order), &refs, order, &mut steps)?;
            if r.0.is_empty() {
                continue;
            }
            r.make_monic();
            let n = g.len();
            g.push(r);
            pending.extend((0..n).map(|i| (i, n)));
        }
        while !pending.is_empty() {
            let &(i, j) = pending
                .iter()
                .min_by(|a, b| {
                    let la = order.key(&g[a.0].lead().mono.lcm(&g[a.1].lead().mono));
                    let lb = order.key(&g[b.0].lead().mono.lcm(&g[b.1].lead().mono));
                    la.cmp(&lb).then(a.cmp(b))
                })
                .unwrap();
            pending.remove(&(i, j));
            let (li, lj) = (&g[i].lead().mono, &g[j].lead().mono);
            if li.is_coprime(lj) {
                continue;
            }
            let l = li.lcm(lj);
            let chain = (0..g.len()).any(|k| {
                k != i
                    && k != j
                    && g[k].lead().mono.divides(&l)
                    && !pending.contains(&(i.min(k), i.max(k)))
                    && !pending.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            let s = spoly(&g[i], &g[j], order);
            let refs: Vec<&Sorted> = g.iter().collect();
            let mut r = reduce(s, &refs, order, &mut steps)?;
            if r.0.is_empty() {
                continue;
            }
            r.make_monic();
            let n = g.len();
            g.push(r);
            pending.extend((0..n).map(|i| (i, n)));
        }
        // Minimize, then interreduce.
        let mut keep: Vec<Sorted> = Vec::new();
        for (idx, p) in g.iter().enumerate() {
            let lm = &p.lead().mono;
            let redundant = g.iter().enumerate().any(|(k, q)| {
                k != idx && q.lead().mono.divides(lm) && (q.lead().mono != *lm || k < idx)
            });
            if !redundant {
                keep.push(p.clone());
            }
        }
        let mut reduced = Vec::with_capacity(keep.len());
        for idx in 0..keep.len() {
            let others: Vec<&Sorted> = keep.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, q)| q).collect();
            let head = Sorted(vec![keep[idx].0[0].clone()]);
            let tail = reduce(Sorted(keep[idx].0[1..].to_vec()), &others, order, &mut steps)?;
            let mut full = head;
            full.0.extend(tail.0);
            reduced.push(full);
        }
        reduced.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));
        let polys = reduced.iter().map(|s| s.to_poly(ctx)).collect();
        Ok(Self {
            ctx: ctx.clone(),
            order: order.clone(),
            elems: reduced,
            polys,
        })
    }

    pub fn ctx(&self) -> &VariableContext {
        &self.ctx
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Basis elements, sorted by increasing leading monomial.
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|s| s.lead().mono.clone()).collect()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elems.iter().any(|s| s.lead().mono.is_one())
    }

    /// Canonical remainder of `p`. Panics on a context mismatch.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.ctx(), &self.ctx, "normal form across contexts");
        let refs: Vec<&Sorted> = self.elems.iter().collect();
        let mut steps = Steps {
            used: 0,
            budget: u64::MAX,
        };
        reduce(Sorted::from_poly(p, &self.order), &refs, &self.order, &mut steps)
            .expect("unbounded budget")
            .to_poly(&self.ctx)
    }

    pub fn reduces_to_zero(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }

    /// True when `m` is not divisible by any leading monomial.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.elems.iter().any(|s| s.lead().mono.divides(m))
    }
}

/// Leading monomial of a nonzero polynomial under `order`.
pub fn leading_monomial(p: &Polynomial, order: &MonomialOrder) -> Option<Monomial> {
    p.terms().map(|(m, _)| m).max_by(|a, b| order.cmp(a, b)).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_polynomial;

    fn ctx(names: &[&str]) -> VariableContext {
        VariableContext::new(names).unwrap()
    }

    fn gb(c: &VariableContext, gens: &[&str], order: MonomialOrder) -> GroebnerBasis {
        let gens: Vec<_> = gens.iter().map(|g| parse_polynomial(g, c).unwrap()).collect();
        GroebnerBasis::compute(c, &gens, &order, &GbConfig::default()).unwrap()
    }

    #[test]
    fn principal_monomial() {
        let c = ctx(&["x", "y"]);
        let b = gb(&c, &["x"], MonomialOrder::lex(2));
        assert_eq!(b.polys().len(), 1);
        assert_eq!(b.polys()[0].to_string(), "x");
    }

    #[test]
    fn monomial_pair_is_already_a_basis() {
        let c = ctx(&["x", "y"]);
        let b = gb(&c, &["x^2", "x*y"], MonomialOrder::grevlex(2));
        let mut s: Vec<String> = b.polys().iter().map(|p| p.to_string()).collect();
        s.sort();
        assert_eq!(s, vec!["x*y", "x^2"]);
    }

    #[test]
    fn twisted_cubic_lex() {
        // Classical: <y - x^2, z - x^3> under lex z > y > x.
        let c = ctx(&["z", "y", "x"]);
        let b = gb(&c, &["y - x^2", "z - x^3"], MonomialOrder::lex(3));
        let s: Vec<String> = b.polys().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, vec!["-x^2 + y", "-x^3 + z"]);
    }

    #[test]
    fn unit_ideal_detected() {
        let c = ctx(&["x", "y"]);
        let b = gb(&c, &["x*y - 1", "x"], MonomialOrder::grevlex(2));
        assert!(b.is_unit());
        assert_eq!(b.polys().len(), 1);
    }

    #[test]
    fn budget_is_reported() {
        let c = ctx(&["x", "y", "z"]);
        let gens: Vec<_> = ["x^3 - y*z + 1", "y^3 - x*z^2", "z^3 - x^2*y + x"]
            .iter()
            .map(|g| parse_polynomial(g, &c).unwrap())
            .collect();
        let r = GroebnerBasis::compute(&c, &gens, &MonomialOrder::lex(3), &GbConfig { budget: 5 });
        assert_eq!(r.unwrap_err(), Error::BudgetExhausted(5));
    }

    #[test]
    fn reduce_is_canonical() {
        let c = ctx(&["x", "y", "z"]);
        let b = gb(&c, &["x^2*y - (y^2 - x*z)^2"], MonomialOrder::grevlex(3));
        let r = parse_polynomial("x^2*y", &c).unwrap();
        let nf = b.reduce(&r);
        let alt = b.reduce(&parse_polynomial("(y^2 - x*z)^2", &c).unwrap());
        assert_eq!(nf, alt);
        assert!(b.reduces_to_zero(&(&r - &parse_polynomial("(y^2 - x*z)^2", &c).unwrap())));
    }
}
