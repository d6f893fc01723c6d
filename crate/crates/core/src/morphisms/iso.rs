use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::automorphism::{danielewski_map, normalize_danielewski, AutomorphismData};
use super::RingMorphism;
use crate::error::{Error, Result};
use crate::families::FamilyInstance;
use crate::ideal::smith_normal_form;
use crate::linalg::rref;
use crate::poly::{Polynomial, Rational};

/// Verdict of [`iso_decide`].
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IsoDecision {
    Isomorphic {
        #[serde(serialize_with = "crate::serde_text::one")]
        lambda: Rational,
        #[serde(serialize_with = "crate::serde_text::one")]
        mu: Rational,
        /// Images of `x, y, z` of the first surface.
        #[serde(serialize_with = "witness_images")]
        witness: RingMorphism,
    },
    NotIsomorphic {
        reason: String,
    },
    /// Solvable only after adjoining roots; the conditions are in `λ, μ`.
    NotOverRationals {
        conditions: Vec<String>,
    },
}

fn witness_images<S: serde::Serializer>(m: &RingMorphism, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.images().iter().map(ToString::to_string))
}

impl IsoDecision {
    pub fn kind(&self) -> &'static str {
        match self {
            IsoDecision::Isomorphic { .. } => "isomorphic",
            IsoDecision::NotIsomorphic { .. } => "not-isomorphic",
            IsoDecision::NotOverRationals { .. } => "not-over-rationals",
        }
    }

    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoDecision::Isomorphic { .. })
    }
}

/// Solution of `∏_c u_c^(A[r][c]) = rhs[r]` over the nonzero rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplicativeSolution {
    /// One solution; free directions are set to 1.
    Solved(Vec<Rational>),
    /// An integer relation among the rows whose constants do not multiply to 1.
    Inconsistent(String),
    /// Conditions `∏ u_c^(k_c) = ρ` with `ρ` not a rational power.
    Irrational(Vec<String>),
}

fn rpow_signed(r: &Rational, e: &BigInt) -> Rational {
    let k = e.abs().to_u32().expect("small exponent");
    let p = (0..k).fold(Rational::one(), |acc, _| acc * r);
    if e.is_negative() {
        p.recip()
    } else {
        p
    }
}

fn exact_root(n: &BigInt, d: u32) -> Option<BigInt> {
    let r = n.nth_root(d);
    (r.pow(d) == *n).then_some(r)
}

/// A rational `d`-th root of `r`, if one exists.
fn rational_root_of(r: &Rational, d: u32) -> Option<Rational> {
    if d == 1 {
        return Some(r.clone());
    }
    if r.is_negative() && d % 2 == 0 {
        return None;
    }
    let num = exact_root(&r.numer().abs(), d)?;
    let den = exact_root(r.denom(), d)?;
    let root = Rational::new(num, den);
    Some(if r.is_negative() { -root } else { root })
}

/// Inverse of a unimodular integer matrix.
fn unimodular_inverse(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|v| Rational::from(v.clone())).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    rref(&mut aug, 2 * n);
    aug.iter().map(|row| row[n..].iter().map(|v| v.to_integer()).collect()).collect()
}

fn monomial_text(names: &[&str], exps: &[BigInt]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(exps)
        .filter(|(_, e)| !e.is_zero())
        .map(|(n, e)| if e.is_one() { n.to_string() } else { format!("{n}^({e})") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Solves `∏_c u_c^(rows[r][c]) = rhs[r]` for nonzero rational `u` via the
/// Smith form of the exponent matrix.
pub fn solve_multiplicative(rows: &[Vec<i64>], rhs: &[Rational], names: &[&str]) -> MultiplicativeSolution {
    let ncols = names.len();
    if rows.is_empty() {
        return MultiplicativeSolution::Solved(vec![Rational::one(); ncols]);
    }
    let a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let snf = smith_normal_form(&a, ncols);
    let rank = snf.rank();
    let rho: Vec<Rational> = snf
        .left
        .iter()
        .map(|l| l.iter().zip(rhs).fold(Rational::one(), |acc, (e, r)| acc * rpow_signed(r, e)))
        .collect();
    for (l, value) in rho.iter().enumerate().skip(rank) {
        if !value.is_one() {
            let rel: Vec<String> = snf.left[l]
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(k, e)| format!("({})^({e})", rhs[k]))
                .collect();
            return MultiplicativeSolution::Inconsistent(format!("{} = {value}, not 1", rel.join("*")));
        }
    }
    let rinv = unimodular_inverse(&snf.right);
    let mut nu = vec![Rational::one(); ncols];
    let mut conditions = Vec::new();
    for l in 0..rank {
        let d = snf.diagonal[l].to_u32().expect("small divisor");
        match rational_root_of(&rho[l], d) {
            Some(root) => nu[l] = root,
            None => {
                let exps: Vec<BigInt> = rinv[l].iter().map(|v| v * d).collect();
                conditions.push(format!("{} = {}", monomial_text(names, &exps), rho[l]));
            }
        }
    }
    if !conditions.is_empty() {
        return MultiplicativeSolution::Irrational(conditions);
    }
    let u = (0..ncols)
        .map(|c| (0..ncols).fold(Rational::one(), |acc, l| acc * rpow_signed(&nu[l], &snf.right[c][l])))
        .collect();
    MultiplicativeSolution::Solved(u)
}

/// Decides whether two Danielewski surfaces are isomorphic over the
/// rationals, producing a verified isomorphism when they are.
pub fn iso_decide(inst1: &FamilyInstance, inst2: &FamilyInstance) -> Result<IsoDecision> {
    let b1 = normalize_danielewski(inst1)?;
    let b2 = normalize_danielewski(inst2)?;
    if b1.n != b2.n || b1.m != b2.m {
        return Ok(IsoDecision::NotIsomorphic {
            reason: format!("(n, m) = ({}, {}) vs ({}, {})", b1.n, b1.m, b2.n, b2.m),
        });
    }
    let (n, m) = (b1.n, b1.m);
    let f = b1.p.coefficients_in(1);
    let g = b2.p.coefficients_in(1);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 2..=m {
        let k = (m - i) as usize;
        for j in 0..n {
            let mono = crate::poly::Monomial::var(2, 0, j);
            let (fc, gc) = (f[k].coefficient(&mono), g[k].coefficient(&mono));
            match (fc.is_zero(), gc.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    rows.push(vec![i64::from(j), -i64::from(i)]);
                    rhs.push(gc / fc);
                }
                _ => {
                    return Ok(IsoDecision::NotIsomorphic {
                        reason: format!(
                            "λ^{j}·({fc}) = μ^{i}·({gc}) has no solution with λμ ≠ 0 (coefficient of Y^{k}X^{j})"
                        ),
                    })
                }
            }
        }
    }
    let (lambda, mu) = match solve_multiplicative(&rows, &rhs, &["λ", "μ"]) {
        MultiplicativeSolution::Solved(u) => (u[0].clone(), u[1].clone()),
        MultiplicativeSolution::Inconsistent(reason) => return Ok(IsoDecision::NotIsomorphic { reason }),
        MultiplicativeSolution::Irrational(conditions) => return Ok(IsoDecision::NotOverRationals { conditions }),
    };
    let zero = Polynomial::zero(&super::data_ctx());
    let fwd_data = AutomorphismData::new(lambda.clone(), mu.clone(), zero.clone())?;
    let back_data = AutomorphismData::new(lambda.recip(), mu.recip(), zero)?;
    let fwd = danielewski_map(&b1.ring, &b1.p, &b2.ring, &b2.p, n, &fwd_data)?;
    let back = danielewski_map(&b2.ring, &b2.p, &b1.ring, &b1.p, n, &back_data)?;
    let psi = fwd.with_inverse(&back).map_err(|e| Error::NotInvertible(format!("witness failed verification: {e}")))?;
    let witness = b1.to_norm.then(&psi)?.then(&b2.from_norm)?;
    Ok(IsoDecision::Isomorphic { lambda, mu, witness })
}
