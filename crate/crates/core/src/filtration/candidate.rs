use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::FiltrationSpec;
use crate::error::{Error, Result};
use crate::ideal::{BinomialPrimality, GbConfig, GroebnerBasis, Ideal, MonomialOrder};
use crate::lnd::{Derivation, RingPresentation};
use crate::poly::{Degree, Monomial, Polynomial, VariableContext, WeightVector};
use crate::sample::{self, Shape};

/// What an extended variable stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    /// A kernel generator; weight 0.
    Kernel,
    /// A ring generator `x_i`; weight `deg(x_i)`.
    Generator,
    /// A local slice; weight 1.
    Slice,
}

#[derive(Clone, Debug)]
pub struct ExtendedVar {
    pub name: String,
    pub role: Role,
    pub weight: u32,
    /// The element of the ring this variable maps to.
    pub image: Polynomial,
}

/// The candidate filtration `G` on `B`: the image of the `ω`-filtration of
/// the polynomial ring on kernel generators, ring generators and slices.
///
/// A kernel generator or slice that is literally a ring variable is
/// identified with it instead of receiving a new variable.
#[derive(Debug)]
pub struct CandidateFiltration {
    spec: FiltrationSpec,
    ctx: VariableContext,
    vars: Vec<ExtendedVar>,
    ring_index: Vec<usize>,
    weights: WeightVector,
    order: MonomialOrder,
    j: Ideal,
    cfg: GbConfig,
    jhat: OnceLock<Ideal>,
    graded_ring: OnceLock<RingPresentation>,
}

/// Spanning monomials of `G_r` over `F_0`.
#[derive(Clone, Debug, Serialize)]
pub struct Layer {
    pub r: u64,
    #[serde(serialize_with = "crate::serde_text::seq")]
    pub generators: Vec<Polynomial>,
    /// Generators that are standard modulo the graded relations; they still
    /// span `G_r` over `F_0`.
    #[serde(serialize_with = "crate::serde_text::seq")]
    pub reduced: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Multiplicativity {
        a: String,
        b: String,
        omega_a: Degree,
        omega_b: Degree,
        omega_ab: Degree,
    },
    DegreeMismatch {
        element: String,
        omega: Degree,
        oracle: Degree,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "kebab-case")]
pub enum ProperRoute {
    /// The graded relations form a prime binomial ideal.
    BinomialPrime { divisors: Vec<String> },
    /// The induced degree agreed with the oracle and was multiplicative on
    /// every sampled pair.
    Empirical { samples: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Properness {
    Proper(ProperRoute),
    Improper { reason: String, witness: Option<Witness> },
    Undecided { reason: String },
}

impl Properness {
    pub fn is_proper(&self) -> bool {
        matches!(self, Properness::Proper(_))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub monomial: String,
    pub element: String,
    pub omega: Degree,
    pub oracle: Degree,
}

#[derive(Clone, Debug, Serialize)]
pub struct LayerEqualityReport {
    pub max_degree: u64,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

fn as_variable(p: &Polynomial) -> Option<usize> {
    let mut terms = p.terms();
    let (m, c) = terms.next()?;
    if terms.next().is_some() || !num_traits::One::is_one(c) || m.total_degree() != 1 {
        return None;
    }
    m.support().next()
}

fn fresh(used: &mut Vec<String>, base: String) -> String {
    let mut name = base;
    while used.contains(&name) {
        name.push('_');
    }
    used.push(name.clone());
    name
}

impl CandidateFiltration {
    pub fn new(spec: &FiltrationSpec) -> Result<Self> {
        let ring = spec.derivation().ring();
        let n = ring.nvars();
        let mut var_role: Vec<Option<Role>> = vec![None; n];
        let mut new_kernel = Vec::new();
        let mut new_slices = Vec::new();
        for z in spec.kernel() {
            match as_variable(z) {
                Some(i) if var_role[i].is_none() => var_role[i] = Some(Role::Kernel),
                _ => new_kernel.push(z.clone()),
            }
        }
        for s in spec.slices() {
            match as_variable(s) {
                Some(i) if var_role[i].is_none() => var_role[i] = Some(Role::Slice),
                _ => new_slices.push(s.clone()),
            }
        }

        let mut used = Vec::new();
        let mut vars = Vec::new();
        for (k, z) in new_kernel.iter().enumerate() {
            vars.push(ExtendedVar {
                name: fresh(&mut used, format!("Z{}", k + 1)),
                role: Role::Kernel,
                weight: 0,
                image: z.clone(),
            });
        }
        let mut ring_index = Vec::with_capacity(n);
        for i in 0..n {
            ring_index.push(vars.len());
            let role = var_role[i].unwrap_or(Role::Generator);
            vars.push(ExtendedVar {
                name: fresh(&mut used, ring.ctx().name(i).to_uppercase()),
                role,
                weight: match role {
                    Role::Kernel => 0,
                    Role::Slice => 1,
                    Role::Generator => spec.degrees()[i],
                },
                image: ring.var(i),
            });
        }
        for (k, s) in new_slices.iter().enumerate() {
            let base = if new_slices.len() == 1 { "S".to_string() } else { format!("S{}", k + 1) };
            vars.push(ExtendedVar {
                name: fresh(&mut used, base),
                role: Role::Slice,
                weight: 1,
                image: s.clone(),
            });
        }
        let ctx = VariableContext::new(&vars.iter().map(|v| v.name.as_str()).collect::<Vec<_>>())?;
        let weights = WeightVector::new(vars.iter().map(|v| v.weight).collect());
        let rank = |r: Role| match r {
            Role::Slice => 0,
            Role::Generator => 1,
            Role::Kernel => 2,
        };
        let mut perm: Vec<usize> = (0..vars.len()).collect();
        perm.sort_by_key(|&i| rank(vars[i].role));
        let order = MonomialOrder::Weighted {
            weights: weights.clone(),
            tiebreak: Box::new(MonomialOrder::Lex { perm }),
        };

        let mut gens: Vec<Polynomial> = ring
            .relations()
            .generators()
            .iter()
            .map(|g| g.remap(&ctx, &ring_index))
            .collect();
        let extra = vars.iter().enumerate().filter(|(k, _)| !ring_index.contains(k));
        for (k, v) in extra {
            gens.push(&Polynomial::var(&ctx, k) - &v.image.remap(&ctx, &ring_index));
        }
        let j = Ideal::new(&ctx, gens)?;
        Ok(Self {
            spec: spec.clone(),
            ctx,
            vars,
            ring_index,
            weights,
            order,
            j,
            cfg: *ring.config(),
            jhat: OnceLock::new(),
            graded_ring: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &FiltrationSpec {
        &self.spec
    }

    pub fn ring(&self) -> &RingPresentation {
        self.spec.derivation().ring()
    }

    pub fn derivation(&self) -> &Derivation {
        self.spec.derivation()
    }

    /// Context of `k[Z.., X.., S..]`.
    pub fn ctx(&self) -> &VariableContext {
        &self.ctx
    }

    pub fn vars(&self) -> &[ExtendedVar] {
        &self.vars
    }

    /// `ω` on the extended variables.
    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// `J = I + (Z_i − z_i) + (S_j − s_j)`.
    pub fn ideal(&self) -> &Ideal {
        &self.j
    }

    fn basis(&self) -> Result<Arc<GroebnerBasis>> {
        self.j.groebner(&self.order, &self.cfg)
    }

    /// `b(X)`, the naive preimage.
    pub fn lift(&self, b: &Polynomial) -> Polynomial {
        b.remap(&self.ctx, &self.ring_index)
    }

    /// `π`: evaluate an extended polynomial in the ring.
    pub fn project(&self, p: &Polynomial) -> Result<Polynomial> {
        let images: Vec<Polynomial> = self.vars.iter().map(|v| v.image.clone()).collect();
        Ok(self.ring().reduce(&p.substitute(&images)?))
    }

    /// The `ω`-minimal preimage of `b`: its normal form modulo `J` under the
    /// `ω`-refined order, since reduction never raises the weight.
    pub fn minimal_lift(&self, b: &Polynomial) -> Result<Polynomial> {
        Ok(self.basis()?.reduce(&self.lift(b)))
    }

    /// `ω_B(b) = min ω(P)` over preimages `P` of `b`.
    pub fn omega_b(&self, b: &Polynomial) -> Result<Degree> {
        Ok(self.minimal_lift(b)?.weighted_degree(&self.weights))
    }

    /// `Ĵ`: the ideal of `ω`-top forms of `J`.
    pub fn initial_ideal(&self) -> Result<&Ideal> {
        if let Some(j) = self.jhat.get() {
            return Ok(j);
        }
        let j = self.j.initial_ideal_under(&self.order, &self.cfg)?;
        let _ = self.jhat.set(j);
        Ok(self.jhat.get().expect("just set"))
    }

    /// `k[Z.., X.., S..] / Ĵ`, graded by `ω`.
    pub fn graded_ring(&self) -> Result<&RingPresentation> {
        if let Some(r) = self.graded_ring.get() {
            return Ok(r);
        }
        let jhat = self.initial_ideal()?;
        let r = RingPresentation::with_order(&self.ctx, jhat.generators().to_vec(), self.order.clone(), &self.cfg)?;
        let _ = self.graded_ring.set(r);
        Ok(self.graded_ring.get().expect("just set"))
    }

    /// Monomials in the non-kernel extended variables with weight `<= bound`.
    fn positive_monomials(&self, bound: u64) -> Vec<Monomial> {
        let active: Vec<usize> = (0..self.vars.len())
            .filter(|&k| self.vars[k].role != Role::Kernel && self.vars[k].weight > 0)
            .collect();
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.vars.len()];
        self.enumerate(&active, 0, bound, &mut exps, &mut out);
        out.sort_by(|a, b| self.order.cmp(a, b));
        out
    }

    fn enumerate(&self, active: &[usize], pos: usize, left: u64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == active.len() {
            out.push(Monomial::from_exponents(exps.clone()));
            return;
        }
        let k = active[pos];
        let w = u64::from(self.vars[k].weight);
        let mut e = 0u32;
        loop {
            exps[k] = e;
            self.enumerate(active, pos + 1, left - u64::from(e) * w, exps, out);
            if u64::from(e + 1) * w > left {
                break;
            }
            e += 1;
        }
        exps[k] = 0;
    }

    /// `G_r` as a finite list of monomial generators over `F_0`.
    pub fn layer(&self, r: u64) -> Result<Layer> {
        let monos = self.positive_monomials(r);
        let graded = self.graded_ring()?;
        let to_poly = |m: &Monomial| Polynomial::term(&self.ctx, m.clone(), num_traits::One::one());
        Ok(Layer {
            r,
            generators: monos.iter().map(to_poly).collect(),
            reduced: monos.iter().filter(|m| graded.basis().is_standard(m)).map(to_poly).collect(),
        })
    }

    /// Route A certifies through primality of `Ĵ`; otherwise the induced
    /// degree is compared with the derivation degree on every extended
    /// variable and on `samples` random pairs.
    pub fn properness_check(&self, samples: usize, seed: u64) -> Properness {
        let undecided = |e: Error| Properness::Undecided { reason: e.to_string() };
        let jhat = match self.initial_ideal() {
            Ok(j) => j,
            Err(e) => return undecided(e),
        };
        let primality = match jhat.binomial_prime(&self.cfg) {
            Ok(p) => p,
            Err(e) => return undecided(e),
        };
        match primality {
            BinomialPrimality::Prime { divisors, .. } => Properness::Proper(ProperRoute::BinomialPrime {
                divisors: divisors.iter().map(ToString::to_string).collect(),
            }),
            BinomialPrimality::NotPrime { reason } => match self.find_witness(samples, seed) {
                Ok(witness) => Properness::Improper {
                    reason: format!("graded relations are not prime: {reason}"),
                    witness,
                },
                Err(e) => undecided(e),
            },
            BinomialPrimality::Inapplicable { .. } => match self.find_witness(samples, seed) {
                Ok(None) => Properness::Proper(ProperRoute::Empirical { samples }),
                Ok(Some(w)) => Properness::Improper {
                    reason: "induced degree disagrees with the derivation degree".into(),
                    witness: Some(w),
                },
                Err(e) => undecided(e),
            },
        }
    }

    fn find_witness(&self, samples: usize, seed: u64) -> Result<Option<Witness>> {
        let d = self.derivation();
        let mismatch = |b: &Polynomial| -> Result<Option<Witness>> {
            let omega = self.omega_b(b)?;
            let oracle = d.degree(b)?;
            Ok((omega != oracle).then(|| Witness::DegreeMismatch {
                element: b.to_string(),
                omega,
                oracle,
            }))
        };
        for v in &self.vars {
            if let Some(w) = mismatch(&v.image)? {
                return Ok(Some(w));
            }
        }
        let mut rng = sample::rng(seed);
        let shape = Shape::all(self.ring().ctx(), 3, 3);
        for _ in 0..samples {
            let a = sample::polynomial(&mut rng, self.ring().ctx(), &shape);
            let b = sample::polynomial(&mut rng, self.ring().ctx(), &shape);
            for x in [&a, &b] {
                if let Some(w) = mismatch(x)? {
                    return Ok(Some(w));
                }
            }
            let (oa, ob, oab) = (self.omega_b(&a)?, self.omega_b(&b)?, self.omega_b(&(&a * &b))?);
            if oab != oa + ob {
                return Ok(Some(Witness::Multiplicativity {
                    a: a.to_string(),
                    b: b.to_string(),
                    omega_a: oa,
                    omega_b: ob,
                    omega_ab: oab,
                }));
            }
        }
        Ok(None)
    }

    /// Extended monomials of `ω`-weight `<= max_degree` with at most
    /// `kernel_degree` factors of weight-zero variables.
    pub fn coordinate_monomials(&self, max_degree: u64, kernel_degree: u32) -> Vec<Polynomial> {
        let zero_weight: Vec<usize> = (0..self.vars.len()).filter(|&k| self.vars[k].weight == 0).collect();
        let mut kernel_monos = Vec::new();
        let mut exps = vec![0u32; self.vars.len()];
        fn rec(vars: &[usize], pos: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos == vars.len() {
                out.push(Monomial::from_exponents(exps.clone()));
                return;
            }
            for e in 0..=left {
                exps[vars[pos]] = e;
                rec(vars, pos + 1, left - e, exps, out);
            }
            exps[vars[pos]] = 0;
        }
        rec(&zero_weight, 0, kernel_degree, &mut exps, &mut kernel_monos);
        let mut out = Vec::new();
        for m in self.positive_monomials(max_degree) {
            for k in &kernel_monos {
                out.push(Polynomial::term(&self.ctx, m.mul(k), num_traits::One::one()));
            }
        }
        out
    }

    /// For every coordinate monomial, the induced degree of its image must
    /// equal the derivation degree: it lies in `G_deg` and not in `G_(deg-1)`.
    pub fn layer_equality(&self, max_degree: u64, kernel_degree: u32) -> Result<LayerEqualityReport> {
        let mut report = LayerEqualityReport {
            max_degree,
            checked: 0,
            mismatches: Vec::new(),
        };
        for poly in self.coordinate_monomials(max_degree, kernel_degree) {
            let b = self.project(&poly)?;
            let omega = self.omega_b(&b)?;
            let oracle = self.derivation().degree(&b)?;
            report.checked += 1;
            if omega != oracle {
                report.mismatches.push(Mismatch {
                    monomial: poly.to_string(),
                    element: b.to_string(),
                    omega,
                    oracle,
                });
            }
        }
        Ok(report)
    }
}
