use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Integer row lattice: the rows are generators, all of the same length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeBasis {
    ncols: usize,
    #[serde(serialize_with = "crate::serde_text::seq2")]
    rows: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn new(ncols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::Precondition(format!(
                "lattice row of length {} in a lattice of rank {ncols}",
                r.len()
            )));
        }
        Ok(Self { ncols, rows })
    }

    pub fn from_i64(ncols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(ncols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Nonzero diagonal entries of the Smith normal form, in divisibility order.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        smith_normal_form(&self.rows, self.ncols).divisors()
    }

    /// `L = (L ⊗ Q) ∩ Z^n`, i.e. every elementary divisor is 1.
    pub fn is_saturated(&self) -> bool {
        self.elementary_divisors().iter().all(One::is_one)
    }
}

/// `left · A · right = diag(diagonal)` with unimodular `left`, `right`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: Vec<Vec<BigInt>>,
    pub right: Vec<Vec<BigInt>>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    pub fn divisors(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_zero()).cloned().collect()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// row_dst -= q * row_src on `m` (works for both the matrix and `left`).
fn row_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let src_row = m[src].clone();
    for (d, s) in m[dst].iter_mut().zip(&src_row) {
        *d -= q * s;
    }
}

fn col_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * s;
    }
}

fn col_swap(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub fn smith_normal_form(rows: &[Vec<BigInt>], ncols: usize) -> SmithForm {
    let nrows = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut left = identity(nrows);
    let mut right = identity(ncols);
    let n = nrows.min(ncols);
    for t in 0..n {
        loop {
            // Smallest nonzero pivot in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..nrows {
                for j in t..ncols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, left, right, n);
            };
            a.swap(t, pi);
            left.swap(t, pi);
            col_swap(&mut a, t, pj);
            col_swap(&mut right, t, pj);

            let mut clean = true;
            for i in t + 1..nrows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut left, i, t, &q);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..ncols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut right, j, t, &q);
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let m1 = -BigInt::one();
                    row_axpy(&mut a, t, i, &m1);
                    row_axpy(&mut left, t, i, &m1);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in left[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    finish(a, left, right, n)
}

fn finish(a: Vec<Vec<BigInt>>, left: Vec<Vec<BigInt>>, right: Vec<Vec<BigInt>>, n: usize) -> SmithForm {
    SmithForm {
        diagonal: (0..n).map(|i| a[i][i].clone()).collect(),
        left,
        right,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let k = b.len();
        let c = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|r| (0..c).map(|j| (0..k).map(|l| &r[l] * &b[l][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn toy_lattice_divisors() {
        let l = LatticeBasis::from_i64(4, &[vec![2, 1, 0, -2], vec![-1, 2, -1, 0]]).unwrap();
        assert_eq!(l.elementary_divisors(), vec![BigInt::from(1), BigInt::from(1)]);
        assert!(l.is_saturated());
    }

    #[test]
    fn non_saturated() {
        let l = LatticeBasis::from_i64(2, &[vec![2, -2]]).unwrap();
        assert_eq!(l.elementary_divisors(), vec![BigInt::from(2)]);
        assert!(!l.is_saturated());
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let a = mat(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&a, 3);
        assert_eq!(s.divisors(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = mul(&mul(&s.left, &a), &s.right);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(*x, s.diagonal[i]);
                } else {
                    assert!(x.is_zero());
                }
            }
        }
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(LatticeBasis::from_i64(3, &[vec![1, 2]]).is_err());
    }
}
