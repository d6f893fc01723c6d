use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Degree, Monomial, Rational, VariableContext, WeightVector};
use crate::error::{Error, Result};

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are stored in graded-lexicographic order and never carry a zero
/// coefficient, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ctx: VariableContext,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ctx: &VariableContext) -> Self {
        Self {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &VariableContext) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &VariableContext, c: Rational) -> Self {
        Self::term(ctx, Monomial::one(ctx.len()), c)
    }

    pub fn term(ctx: &VariableContext, mono: Monomial, c: Rational) -> Self {
        debug_assert_eq!(mono.nvars(), ctx.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Self {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn var(ctx: &VariableContext, idx: usize) -> Self {
        Self::term(ctx, Monomial::var(ctx.len(), idx, 1), Rational::one())
    }

    pub fn var_named(ctx: &VariableContext, name: &str) -> Result<Self> {
        let idx = ctx
            .index_of(name)
            .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))?;
        Ok(Self::var(ctx, idx))
    }

    /// Builds a polynomial from arbitrary `(monomial, coefficient)` pairs,
    /// merging duplicates and dropping zeros.
    pub fn from_terms<I>(ctx: &VariableContext, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn ctx(&self) -> &VariableContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Constant coefficient (value at the origin).
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.ctx.len()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map(|m| Degree::Finite(m.total_degree()))
            .unwrap_or(Degree::NegInfinity)
    }

    /// Exponent of `var` in the highest power appearing, `None` for zero.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx.describe(),
                right: other.ctx.describe(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let mut out = Polynomial::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::from_exponents(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Value at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ctx.len());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    v *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += v;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`. All images must share a context,
    /// which becomes the context of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ctx.len() {
            return Err(Error::Precondition(format!(
                "substitution needs {} images, got {}",
                self.ctx.len(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ctx.clone(),
            None => return Err(Error::Precondition("empty substitution".into())),
        };
        if let Some(bad) = images.iter().find(|p| p.ctx != target) {
            return Err(Error::ContextMismatch {
                left: target.describe(),
                right: bad.ctx.describe(),
            });
        }
        // Cache powers per variable; exponents are small.
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &cache[1];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Moves the polynomial into `target`, sending variable `i` to `map[i]`.
    pub fn remap(&self, target: &VariableContext, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.ctx.len());
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        out
    }

    /// Re-expresses the polynomial in a context containing all of its variables
    /// by name.
    pub fn embed(&self, target: &VariableContext) -> Result<Polynomial> {
        let map = self
            .ctx
            .names()
            .iter()
            .map(|n| target.index_of(n).ok_or_else(|| Error::UnknownIdentifier(n.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.remap(target, &map))
    }

    /// Inverse of [`Polynomial::embed`]: fails when a variable missing from
    /// `target` actually occurs.
    pub fn restrict(&self, target: &VariableContext) -> Result<Polynomial> {
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for i in m.support() {
                let name = self.ctx.name(i);
                let j = target
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))?;
                exps[j] = m.exp(i);
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        Ok(out)
    }

    pub fn uses_only(&self, vars: &[usize]) -> bool {
        self.terms.keys().all(|m| m.support().all(|i| vars.contains(&i)))
    }

    pub fn weighted_degree(&self, w: &WeightVector) -> Degree {
        self.terms
            .keys()
            .map(|m| Degree::Finite(m.weighted_degree(w)))
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    /// Sum of the terms of maximal `w`-degree.
    pub fn top_form(&self, w: &WeightVector) -> Result<Polynomial> {
        let top = self.weighted_degree(w).finite().ok_or(Error::ZeroInput)?;
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(w) == top)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// Terms of `w`-degree exactly `d`.
    pub fn homogeneous_component(&self, w: &WeightVector, d: u64) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(w) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self, w: &WeightVector) -> bool {
        let mut it = self.terms.keys().map(|m| m.weighted_degree(w));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Exact quotient `self / divisor` in the polynomial ring, `None` when the
    /// division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ctx(divisor)?;
        let (lead_m, lead_c) = match divisor.terms.iter().next_back() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::ZeroInput),
        };
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ctx);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            let q_m = match m.div(&lead_m) {
                Some(q) => q,
                None => return Ok(None),
            };
            let q_c = c / &lead_c;
            rem = &rem - &divisor.mul_monomial(&q_m, &q_c);
            quot.add_term(q_m, q_c);
        }
        Ok(Some(quot))
    }

    /// Coefficients as a polynomial in `var`: entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Polynomial::zero(&self.ctx); deg + 1];
        for (m, c) in &self.terms {
            let mut exps = m.exponents().to_vec();
            let k = exps[var] as usize;
            exps[var] = 0;
            out[k].add_term(Monomial::from_exponents(exps), c.clone());
        }
        out
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial contexts differ")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial contexts differ")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial contexts differ")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse::parse_polynomial};

    fn ctx(names: &[&str]) -> VariableContext {
        VariableContext::new(names).unwrap()
    }

    fn p(c: &VariableContext, s: &str) -> Polynomial {
        parse_polynomial(s, c).unwrap()
    }

    #[test]
    fn cancellation() {
        let c = ctx(&["x", "y"]);
        assert_eq!(&p(&c, "x+y") + &p(&c, "x-y"), p(&c, "2*x"));
    }

    #[test]
    fn binomial_square() {
        let c = ctx(&["x", "y", "z"]);
        let s = p(&c, "y^2 - x*z");
        assert_eq!(&s * &s, p(&c, "y^4 - 2*x*y^2*z + x^2*z^2"));
    }

    #[test]
    fn toy_relation_expansion() {
        let c = ctx(&["X", "Y", "Z"]);
        let rel = p(&c, "X^2*Y - (Y^2 - X*Z)^2");
        assert_eq!(rel, p(&c, "X^2*Y - Y^4 + 2*X*Y^2*Z - X^2*Z^2"));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = Polynomial::var(&ctx(&["x"]), 0);
        let b = Polynomial::var(&ctx(&["y"]), 0);
        assert!(matches!(a.checked_add(&b), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn weighted_degrees() {
        let c = ctx(&["X", "Y", "Z", "S"]);
        let w = WeightVector::new(vec![0, 2, 4, 1]);
        assert_eq!(p(&c, "X^2*Y - S^2").weighted_degree(&w), Degree::Finite(2));
        assert_eq!(Polynomial::zero(&c).weighted_degree(&w), Degree::NegInfinity);
        assert_eq!(p(&c, "Y^2 - X*Z - S").weighted_degree(&w), Degree::Finite(4));
        assert_eq!(p(&c, "7").weighted_degree(&w), Degree::Finite(0));
    }

    #[test]
    fn top_forms() {
        let c = ctx(&["X", "Y", "Z", "S"]);
        let w = WeightVector::new(vec![0, 2, 4, 1]);
        assert_eq!(p(&c, "Y^2 - X*Z - S").top_form(&w).unwrap(), p(&c, "Y^2 - X*Z"));
        assert_eq!(p(&c, "3*X*Z^2").top_form(&w).unwrap(), p(&c, "3*X*Z^2"));
        let rel = p(&c, "X^2*Y - Y^4 + 2*X*Y^2*Z - X^2*Z^2");
        assert_eq!(rel.top_form(&w).unwrap(), p(&c, "-(Y^2 - X*Z)^2"));
        assert_eq!(Polynomial::zero(&c).top_form(&w), Err(Error::ZeroInput));
    }

    #[test]
    fn exact_division() {
        let c = ctx(&["x", "y"]);
        let num = p(&c, "(x + y)^3 * (x - 2*y)");
        assert_eq!(num.div_exact(&p(&c, "x - 2*y")).unwrap(), Some(p(&c, "(x+y)^3")));
        assert_eq!(p(&c, "x^2 + 1").div_exact(&p(&c, "x")).unwrap(), None);
    }

    #[test]
    fn derivative_and_substitution() {
        let c = ctx(&["x", "y"]);
        let f = p(&c, "x^3*y + 2*y^2");
        assert_eq!(f.partial_derivative(1), p(&c, "x^3 + 4*y"));
        let g = f.substitute(&[p(&c, "y"), p(&c, "x+1")]).unwrap();
        assert_eq!(g, p(&c, "y^3*(x+1) + 2*(x+1)^2"));
        assert_eq!(f.evaluate(&[int(1), int(2)]), int(10));
    }
}
