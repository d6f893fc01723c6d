use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Rational;

/// Positive divisors of `n`, by trial division. `None` when `n` is too large
/// to factor this way.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(BigInt::from(k));
            if k * k != n {
                out.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    Some(out)
}

fn eval(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// A rational root of `Σ coeffs[k] t^k`, found through the rational root
/// theorem; roots of smaller absolute value are tried first.
pub fn rational_root(coeffs: &[Rational]) -> Option<Rational> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return None;
    }
    if coeffs[0].is_zero() {
        return Some(Rational::zero());
    }
    let denom = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from(denom.clone())).to_integer()).collect();
    let ps = divisors(&ints[0])?;
    let qs = divisors(ints.last().expect("len >= 2"))?;
    let mut candidates: Vec<Rational> = Vec::new();
    for p in &ps {
        for q in &qs {
            let r = Rational::new(p.clone(), q.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort_by(|a, b| a.abs().cmp(&b.abs()).then(b.cmp(a)));
    candidates.into_iter().find(|r| eval(&coeffs, r).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn roots() {
        assert_eq!(rational_root(&[int(0), int(1), int(1)]), Some(int(0)));
        assert_eq!(rational_root(&[int(-4), int(0), int(1)]), Some(int(2)));
        assert_eq!(rational_root(&[int(3), int(-8), int(4)]), Some(rat(1, 2)));
        assert_eq!(rational_root(&[int(1), int(0), int(1)]), None);
        assert_eq!(rational_root(&[rat(-1, 4), int(0), int(1)]), Some(rat(1, 2)));
        assert_eq!(rational_root(&[int(5)]), None);
    }
}
