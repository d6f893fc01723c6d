use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use super::FamilyInstance;
use crate::error::{Error, Result};
use crate::linalg;
use crate::lnd::{Derivation, RingPresentation};
use crate::poly::{int, Monomial, Polynomial, Rational};
use crate::sample;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Total degree bound on the images `D(x_i)`.
    pub image_degree: u32,
    pub nilp_bound: usize,
    /// Random combinations tested in addition to the basis.
    pub samples: usize,
    pub seed: u64,
    pub max_unknowns: usize,
    /// Iteration of a candidate stops once an iterate has more terms.
    pub max_terms: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            image_degree: 4,
            nilp_bound: 20,
            samples: 16,
            seed: 0,
            max_unknowns: 4000,
            max_terms: 500,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "kebab-case")]
pub enum Origin {
    Basis(usize),
    Sample(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum Classification {
    MultipleOfCanonical { f: String },
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NilpotencyStatus {
    Nilpotent,
    NotWithinBound,
    /// An iterate outgrew the term budget.
    Abandoned,
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub origin: Origin,
    pub images: Vec<String>,
    pub status: NilpotencyStatus,
    pub nilpotent: bool,
    /// Only for nilpotent candidates.
    pub classification: Option<Classification>,
    #[serde(skip)]
    pub derivation: Derivation,
}

#[derive(Clone, Debug, Serialize)]
pub struct LndSearchResult {
    pub unknowns: usize,
    /// Dimension of the space of derivations with bounded images.
    pub dimension: usize,
    /// Rank of the lattice of gradings making the relations homogeneous; the
    /// basis is homogeneous for all of them.
    pub grading_rank: usize,
    pub candidates: Vec<Candidate>,
}

impl LndSearchResult {
    pub fn survivors(&self) -> impl Iterator<Item = &Candidate> + '_ {
        self.candidates.iter().filter(|c| c.nilpotent)
    }

    /// Every nilpotent candidate is `f ∂` with `f` in the kernel.
    pub fn all_multiples(&self) -> bool {
        self.survivors()
            .all(|c| matches!(c.classification, Some(Classification::MultipleOfCanonical { .. })))
    }
}

/// Weight vectors (over Q) for which every relation is homogeneous.
fn grading_lattice(ring: &RingPresentation) -> Vec<Vec<Rational>> {
    let n = ring.nvars();
    let mut rows = Vec::new();
    for g in ring.relations().generators() {
        let mut terms = g.terms();
        let Some((first, _)) = terms.next() else { continue };
        for (m, _) in terms {
            rows.push(
                (0..n)
                    .map(|i| int(i64::from(m.exp(i)) - i64::from(first.exp(i))))
                    .collect(),
            );
        }
    }
    if rows.is_empty() {
        return (0..n)
            .map(|i| (0..n).map(|j| int(i64::from(i == j))).collect())
            .collect();
    }
    linalg::nullspace(&rows, n)
}

fn nilpotency(d: &Derivation, bound: usize, max_terms: usize) -> NilpotencyStatus {
    for i in 0..d.ring().nvars() {
        let mut cur = d.ring().var(i);
        let mut done = false;
        for _ in 0..=bound {
            cur = d.apply(&cur);
            if cur.is_zero() {
                done = true;
                break;
            }
            if cur.num_terms() > max_terms {
                return NilpotencyStatus::Abandoned;
            }
        }
        if !done {
            return NilpotencyStatus::NotWithinBound;
        }
    }
    NilpotencyStatus::Nilpotent
}

fn classify(d: &Derivation, canonical: &Derivation) -> Classification {
    let ring = d.ring();
    for (i, di) in canonical.images().iter().enumerate() {
        if di.is_zero() {
            continue;
        }
        let Ok(Some(f)) = d.image(i).div_exact(di) else { continue };
        if !canonical.kernel_member(&f) {
            continue;
        }
        let matches = d
            .images()
            .iter()
            .zip(canonical.images())
            .all(|(a, b)| ring.equal(a, &(&f * b)));
        if matches {
            return Classification::MultipleOfCanonical { f: f.to_string() };
        }
    }
    if d.is_zero() {
        return Classification::MultipleOfCanonical { f: "0".into() };
    }
    Classification::Other
}

impl FamilyInstance {
    /// Derivations whose images have total degree `<= image_degree`, found as
    /// the solutions of the linear conditions `NF(D(g)) = 0` for every
    /// relation `g`. The basis is split by every grading for which the
    /// relations are homogeneous; basis vectors and random combinations are
    /// then filtered by bounded nilpotency and compared with `∂`.
    pub fn bounded_lnd_search(&self, cfg: &SearchConfig) -> Result<LndSearchResult> {
        if cfg.image_degree == 0 || cfg.nilp_bound == 0 {
            return Err(Error::ParameterOutOfRange("search bounds must be at least 1".into()));
        }
        let ring = &self.ring;
        let n = ring.nvars();
        let monos = ring.standard_monomials(cfg.image_degree);
        let unknowns: Vec<(usize, Monomial)> = (0..n).flat_map(|i| monos.iter().map(move |m| (i, m.clone()))).collect();
        if unknowns.len() > cfg.max_unknowns {
            return Err(Error::SystemTooLarge {
                unknowns: unknowns.len(),
                limit: cfg.max_unknowns,
            });
        }

        // Column k of the constraint matrix: NF(m · ∂g/∂x_i) for every relation g.
        let relations = ring.relations().generators();
        let partials: Vec<Vec<Polynomial>> = relations
            .iter()
            .map(|g| (0..n).map(|i| g.partial_derivative(i)).collect())
            .collect();
        let mut row_index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
        let mut columns: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(unknowns.len());
        for (i, m) in &unknowns {
            let mut col = Vec::new();
            for (r, dg) in partials.iter().enumerate() {
                let nf = ring.reduce(&dg[*i].mul_monomial(m, &int(1)));
                for (mm, c) in nf.terms() {
                    let next = row_index.len();
                    let row = *row_index.entry((r, mm.clone())).or_insert(next);
                    col.push((row, c.clone()));
                }
            }
            columns.push(col);
        }

        let lattice = grading_lattice(ring);
        let mut blocks: BTreeMap<Vec<Rational>, Vec<usize>> = BTreeMap::new();
        for (k, (i, m)) in unknowns.iter().enumerate() {
            let key = lattice
                .iter()
                .map(|w| {
                    let wm: Rational = (0..n).map(|j| &w[j] * int(i64::from(m.exp(j)))).sum();
                    wm - &w[*i]
                })
                .collect();
            blocks.entry(key).or_default().push(k);
        }

        let mut basis: Vec<Vec<Rational>> = Vec::new();
        let mut block_of: Vec<usize> = Vec::new();
        for (b, cols) in blocks.values().enumerate() {
            let mut rows_used: BTreeMap<usize, usize> = BTreeMap::new();
            for &k in cols {
                for (row, _) in &columns[k] {
                    let next = rows_used.len();
                    rows_used.entry(*row).or_insert(next);
                }
            }
            let mut mat = vec![vec![Rational::zero(); cols.len()]; rows_used.len()];
            for (j, &k) in cols.iter().enumerate() {
                for (row, c) in &columns[k] {
                    mat[rows_used[row]][j] += c;
                }
            }
            for v in linalg::nullspace(&mat, cols.len()) {
                let mut full = vec![Rational::zero(); unknowns.len()];
                for (j, &k) in cols.iter().enumerate() {
                    full[k] = v[j].clone();
                }
                basis.push(full);
                block_of.push(b);
            }
        }

        let to_derivation = |v: &[Rational]| -> Result<Derivation> {
            let mut images = vec![Polynomial::zero(ring.ctx()); n];
            for ((i, m), c) in unknowns.iter().zip(v) {
                if !c.is_zero() {
                    images[*i] = &images[*i] + &Polynomial::term(ring.ctx(), m.clone(), c.clone());
                }
            }
            Derivation::new(ring, images)
        };
        let make = |origin: Origin, d: Derivation| -> Candidate {
            let status = nilpotency(&d, cfg.nilp_bound, cfg.max_terms);
            let nilpotent = status == NilpotencyStatus::Nilpotent;
            Candidate {
                origin,
                images: d.images().iter().map(ToString::to_string).collect(),
                status,
                nilpotent,
                classification: nilpotent.then(|| classify(&d, &self.derivation)),
                derivation: d,
            }
        };

        let mut candidates = Vec::new();
        for (k, v) in basis.iter().enumerate() {
            candidates.push(make(Origin::Basis(k), to_derivation(v)?));
        }
        let nilpotent_basis: Vec<usize> = candidates
            .iter()
            .enumerate()
            .filter(|(_, c)| c.nilpotent)
            .map(|(k, _)| k)
            .collect();
        let mut rng = sample::rng(cfg.seed);
        for s in 0..cfg.samples {
            if basis.is_empty() {
                break;
            }
            // Alternate between combinations of nilpotent basis vectors and
            // homogeneous combinations within one grading block.
            let pool: Vec<usize> = if s % 2 == 0 && !nilpotent_basis.is_empty() {
                nilpotent_basis.clone()
            } else {
                let b = block_of[rng.gen_range(0..basis.len())];
                (0..basis.len()).filter(|&k| block_of[k] == b).collect()
            };
            let mut v = vec![Rational::zero(); unknowns.len()];
            for &k in &pool {
                let c = int(rng.gen_range(-2..=2));
                if c.is_zero() {
                    continue;
                }
                for (x, b) in v.iter_mut().zip(&basis[k]) {
                    *x += &c * b;
                }
            }
            candidates.push(make(Origin::Sample(s), to_derivation(&v)?));
        }

        Ok(LndSearchResult {
            unknowns: unknowns.len(),
            dimension: basis.len(),
            grading_rank: lattice.len(),
            candidates,
        })
    }

    /// Intersection of the kernels of the nilpotent candidates, compared with
    /// the kernel of `∂` on standard monomials of degree `<= degree`.
    pub fn ml_evidence(&self, result: &LndSearchResult, degree: u32) -> Result<KernelEvidence> {
        let ds: Vec<Derivation> = result.survivors().map(|c| c.derivation.clone()).collect();
        if ds.is_empty() {
            return Err(Error::Precondition("no locally nilpotent derivation was found".into()));
        }
        let mut ev = kernel_intersection(&self.ring, &ds, degree)?;
        let kv = self.kernel_variables();
        let predicted: Vec<Monomial> = self
            .ring
            .standard_monomials(degree)
            .into_iter()
            .filter(|m| m.support().all(|i| kv.contains(&i)))
            .collect();
        ev.predicted_dimension = predicted.len();
        let all_killed = predicted.iter().all(|m| {
            let p = Polynomial::term(self.ring.ctx(), m.clone(), int(1));
            ds.iter().all(|d| d.kernel_member(&p))
        });
        ev.matches_prediction = all_killed && ev.dimension == predicted.len();
        Ok(ev)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelEvidence {
    pub degree: u32,
    pub derivations: usize,
    pub dimension: usize,
    #[serde(serialize_with = "crate::serde_text::seq")]
    pub basis: Vec<Polynomial>,
    pub predicted_dimension: usize,
    pub matches_prediction: bool,
}

/// Elements of `∩ ker D` spanned by standard monomials of degree `<= degree`.
pub fn kernel_intersection(ring: &RingPresentation, ds: &[Derivation], degree: u32) -> Result<KernelEvidence> {
    let monos = ring.standard_monomials(degree);
    let mut row_index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut entries = Vec::new();
    for (k, m) in monos.iter().enumerate() {
        let p = Polynomial::term(ring.ctx(), m.clone(), int(1));
        for (j, d) in ds.iter().enumerate() {
            for (mm, c) in d.apply(&p).terms() {
                let next = row_index.len();
                let row = *row_index.entry((j, mm.clone())).or_insert(next);
                entries.push((row, k, c.clone()));
            }
        }
    }
    let mut mat = vec![vec![Rational::zero(); monos.len()]; row_index.len()];
    for (r, k, c) in entries {
        mat[r][k] += c;
    }
    let basis: Vec<Polynomial> = linalg::nullspace(&mat, monos.len())
        .into_iter()
        .map(|v| {
            Polynomial::from_terms(
                ring.ctx(),
                monos.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect();
    Ok(KernelEvidence {
        degree,
        derivations: ds.len(),
        dimension: basis.len(),
        basis,
        predicted_dimension: 0,
        matches_prediction: false,
    })
}
