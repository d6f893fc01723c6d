//! Seeded random polynomials for the empirical checks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::poly::{int, Monomial, Polynomial, VariableContext};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of random polynomials.
#[derive(Clone, Debug)]
pub struct Shape {
    /// Variables allowed to occur.
    pub vars: Vec<usize>,
    pub max_degree: u32,
    pub max_terms: usize,
    /// Coefficients are drawn from `-coef..=coef` without zero.
    pub coef: i64,
}

impl Shape {
    pub fn all(ctx: &VariableContext, max_degree: u32, max_terms: usize) -> Self {
        Self {
            vars: (0..ctx.len()).collect(),
            max_degree,
            max_terms,
            coef: 3,
        }
    }
}

pub fn monomial<R: Rng>(rng: &mut R, ctx: &VariableContext, shape: &Shape) -> Monomial {
    let mut exps = vec![0u32; ctx.len()];
    let deg = rng.gen_range(0..=shape.max_degree);
    for _ in 0..deg {
        if shape.vars.is_empty() {
            break;
        }
        exps[shape.vars[rng.gen_range(0..shape.vars.len())]] += 1;
    }
    Monomial::from_exponents(exps)
}

/// Nonzero random polynomial.
pub fn polynomial<R: Rng>(rng: &mut R, ctx: &VariableContext, shape: &Shape) -> Polynomial {
    loop {
        let n = rng.gen_range(1..=shape.max_terms.max(1));
        let p = Polynomial::from_terms(
            ctx,
            (0..n).map(|_| {
                let mut c = rng.gen_range(-shape.coef..=shape.coef);
                if c == 0 {
                    c = 1;
                }
                (monomial(rng, ctx, shape), int(c))
            }),
        );
        if !p.is_zero() {
            return p;
        }
    }
}
