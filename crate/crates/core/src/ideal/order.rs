use std::cmp::Ordering;

use crate::poly::{Monomial, WeightVector};

/// A multiplicative well-order on monomials.
///
/// `perm` lists variable indices from most to least significant for the
/// lexicographic comparisons; the identity permutation compares in context
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex {
        perm: Vec<usize>,
    },
    GrLex {
        perm: Vec<usize>,
    },
    GRevLex {
        perm: Vec<usize>,
    },
    /// Compare by `weights` first; break ties with `tiebreak`. Weights are
    /// non-negative and the tiebreak is a term order, so the result is again a
    /// term order even when some weights are zero.
    Weighted {
        weights: WeightVector,
        tiebreak: Box<MonomialOrder>,
    },
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

impl MonomialOrder {
    pub fn lex(nvars: usize) -> Self {
        MonomialOrder::Lex { perm: identity(nvars) }
    }

    pub fn grlex(nvars: usize) -> Self {
        MonomialOrder::GrLex { perm: identity(nvars) }
    }

    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder::GRevLex { perm: identity(nvars) }
    }

    /// `w`-degree refined by lex on the context order.
    pub fn weight_refined(weights: WeightVector) -> Self {
        let n = weights.len();
        MonomialOrder::Weighted {
            weights,
            tiebreak: Box::new(MonomialOrder::lex(n)),
        }
    }

    /// Block order in which any monomial involving a `drop` variable beats
    /// every monomial free of them.
    pub fn elimination(nvars: usize, drop: &[usize]) -> Self {
        let w = (0..nvars).map(|i| u32::from(drop.contains(&i))).collect();
        MonomialOrder::Weighted {
            weights: WeightVector::new(w),
            tiebreak: Box::new(MonomialOrder::grevlex(nvars)),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            MonomialOrder::Lex { perm } | MonomialOrder::GrLex { perm } | MonomialOrder::GRevLex { perm } => perm.len(),
            MonomialOrder::Weighted { weights, .. } => weights.len(),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex { perm } => lex(perm, a, b),
            MonomialOrder::GrLex { perm } => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| lex(perm, a, b)),
            MonomialOrder::GRevLex { perm } => a.total_degree().cmp(&b.total_degree()).then_with(|| {
                for &i in perm.iter().rev() {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Weighted { weights, tiebreak } => a
                .weighted_degree(weights)
                .cmp(&b.weighted_degree(weights))
                .then_with(|| tiebreak.cmp(a, b)),
        }
    }
}

impl MonomialOrder {
    /// Integer vector whose lexicographic order matches `cmp`. Linear in the
    /// exponents, so `key(a*b) = key(a) + key(b)`.
    pub(crate) fn key(&self, m: &Monomial) -> Vec<i64> {
        let e = |i: usize| i64::from(m.exp(i));
        match self {
            MonomialOrder::Lex { perm } => perm.iter().map(|&i| e(i)).collect(),
            MonomialOrder::GrLex { perm } => std::iter::once(m.total_degree() as i64)
                .chain(perm.iter().map(|&i| e(i)))
                .collect(),
            MonomialOrder::GRevLex { perm } => std::iter::once(m.total_degree() as i64)
                .chain(perm.iter().rev().map(|&i| -e(i)))
                .collect(),
            MonomialOrder::Weighted { weights, tiebreak } => std::iter::once(m.weighted_degree(weights) as i64)
                .chain(tiebreak.key(m))
                .collect(),
        }
    }
}

fn lex(perm: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
    for &i in perm {
        match a.exp(i).cmp(&b.exp(i)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn classic_comparisons() {
        let (a, b) = (m(&[1, 0, 2]), m(&[0, 3, 0]));
        assert_eq!(MonomialOrder::lex(3).cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::grlex(3).cmp(&a, &b), Ordering::Greater);
        // grevlex: same degree, last variable z has higher exponent in a
        assert_eq!(MonomialOrder::grevlex(3).cmp(&a, &b), Ordering::Less);
        let w = MonomialOrder::weight_refined(WeightVector::new(vec![0, 2, 4]));
        assert_eq!(w.cmp(&m(&[5, 0, 0]), &m(&[0, 1, 0])), Ordering::Less);
        assert_eq!(w.cmp(&m(&[1, 1, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_dominates() {
        let o = MonomialOrder::elimination(3, &[0]);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, 4).prop_map(Monomial::from_exponents)
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::lex(4),
            MonomialOrder::grlex(4),
            MonomialOrder::grevlex(4),
            MonomialOrder::weight_refined(WeightVector::new(vec![0, 2, 4, 1])),
            MonomialOrder::elimination(4, &[3]),
            MonomialOrder::Lex { perm: vec![2, 0, 3, 1] },
        ]
    }

    proptest! {
        #[test]
        fn multiplicative_and_total(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            for o in orders() {
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
                prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
                prop_assert_ne!(o.cmp(&a.mul(&c), &a), Ordering::Less);
                prop_assert_eq!(o.cmp(&a, &b), o.key(&a).cmp(&o.key(&b)));
            }
        }
    }
}
