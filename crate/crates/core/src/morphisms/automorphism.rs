use num_traits::{One, Zero};
use serde::Serialize;

use super::RingMorphism;
use crate::error::{Error, Result};
use crate::families::{danielewski_ctx, new_family_p_ctx, new_family_q_ctx, Family, FamilyInstance};
use crate::lnd::{Derivation, RingPresentation};
use crate::poly::{int, Degree, Polynomial, Rational, VariableContext};
use crate::sample::{self, Shape};

/// The single variable `X` in which the polynomial `a` of
/// [`AutomorphismData`] is written.
pub fn data_ctx() -> VariableContext {
    VariableContext::new(&["X"]).expect("static name")
}

/// `(λ, μ, a(X))` parametrizing `x -> λx`, `y -> μy + x^n a(x)` (Danielewski)
/// or `s -> μs + x^(n+e) a(x)` (new family).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismData {
    #[serde(serialize_with = "crate::serde_text::one")]
    pub lambda: Rational,
    #[serde(serialize_with = "crate::serde_text::one")]
    pub mu: Rational,
    #[serde(serialize_with = "crate::serde_text::one")]
    pub a: Polynomial,
}

impl AutomorphismData {
    pub fn new(lambda: Rational, mu: Rational, a: Polynomial) -> Result<Self> {
        if lambda.is_zero() || mu.is_zero() {
            return Err(Error::ParameterOutOfRange("λ and μ must be nonzero".into()));
        }
        if a.ctx() != &data_ctx() {
            return Err(Error::ContextMismatch {
                left: "X".into(),
                right: a.ctx().names().join(","),
            });
        }
        Ok(Self { lambda, mu, a })
    }

    pub fn identity() -> Self {
        Self::new(Rational::one(), Rational::one(), Polynomial::zero(&data_ctx())).expect("valid")
    }

    /// `(λ⁻¹, μ⁻¹, a')` with `a'(x) = -a(x/λ) / (μ λ^shift)`, where `shift`
    /// is `n` or `n + e`.
    fn inverse(&self, shift: u32) -> Self {
        let ctx = data_ctx();
        let li = self.lambda.recip();
        let x_over = Polynomial::var(&ctx, 0).scale(&li);
        let scale = -(&self.mu * rpow(&self.lambda, shift)).recip();
        let a = self.a.substitute(&[x_over]).expect("one variable").scale(&scale);
        Self {
            lambda: li,
            mu: self.mu.recip(),
            a,
        }
    }
}

fn rpow(r: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * r)
}

/// `coeffs[k][j]`: coefficient of `main^k X^j` in `p`, where `X` is variable 0.
fn coefficient_table(p: &Polynomial, main: usize) -> Vec<Vec<Rational>> {
    p.coefficients_in(main)
        .iter()
        .map(|c| {
            let deg = c.degree_in(0).unwrap_or(0) as usize;
            let mut row = vec![Rational::zero(); deg + 1];
            for (m, v) in c.terms() {
                row[m.exp(0) as usize] = v.clone();
            }
            row
        })
        .collect()
}

fn table_entry(t: &[Vec<Rational>], k: usize, j: usize) -> Rational {
    t.get(k).and_then(|r| r.get(j)).cloned().unwrap_or_else(Rational::zero)
}

/// `f_(top-i)(λx) ≡ μ^i f_(top-i)(x) mod x^modulus` for `i` in `range`.
fn check_congruences(
    p: &Polynomial,
    main: usize,
    range: std::ops::RangeInclusive<u32>,
    modulus: u32,
    lambda: &Rational,
    mu: &Rational,
) -> Result<()> {
    let t = coefficient_table(p, main);
    let top = t.len() - 1;
    for i in range {
        let k = top - i as usize;
        for j in 0..modulus {
            let f = table_entry(&t, k, j as usize);
            let lhs = rpow(lambda, j) * &f;
            let rhs = rpow(mu, i) * &f;
            if lhs != rhs {
                return Err(Error::CongruenceFailure {
                    i,
                    j,
                    detail: format!("λ^{j}·{f} = {lhs} but μ^{i}·{f} = {rhs}"),
                });
            }
        }
    }
    Ok(())
}

/// `x -> λx`, `y -> μy + x^n a(x)`, `z -> (μ^m/λ^n) z + (P_src(λx, μy + x^n a) - μ^m P_tgt(x, y)) / (λ^n x^n)`
/// between the Danielewski surfaces of `p_src` and `p_tgt`, both in
/// [`danielewski_ctx`] and with the same `n` and `m`.
pub(crate) fn danielewski_map(
    src: &RingPresentation,
    p_src: &Polynomial,
    tgt: &RingPresentation,
    p_tgt: &Polynomial,
    n: u32,
    data: &AutomorphismData,
) -> Result<RingMorphism> {
    let ctx = tgt.ctx();
    let m = p_tgt.degree_in(1).unwrap_or(0);
    let (x, y, z) = (Polynomial::var(ctx, 0), Polynomial::var(ctx, 1), Polynomial::var(ctx, 2));
    let a = data.a.remap(ctx, &[0]);
    let xn = x.pow(n);
    let ay = &y.scale(&data.mu) + &(&xn * &a);
    let lx = x.scale(&data.lambda);
    let num = &p_src.substitute(&[lx.clone(), ay.clone()])?
        - &p_tgt.substitute(&[x.clone(), y.clone()])?.scale(&rpow(&data.mu, m));
    let den = xn.scale(&rpow(&data.lambda, n));
    let q = num
        .div_exact(&den)?
        .ok_or_else(|| Error::NonDivisible(format!("{num} by {den}")))?;
    let c = rpow(&data.mu, m) / rpow(&data.lambda, n);
    RingMorphism::new(src, tgt, vec![lx, ay, &z.scale(&c) + &q])
}

/// Danielewski data `(n, m, P)` of an instance.
fn danielewski_parts(inst: &FamilyInstance) -> Result<(u32, u32, &Polynomial)> {
    match &inst.family {
        Family::Danielewski { n, p } => Ok((*n, p.degree_in(1).unwrap_or(0), p)),
        _ => Err(Error::Precondition("expected a Danielewski instance".into())),
    }
}

/// A Danielewski surface rewritten so that `f_(m-1) = 0`, with the
/// comparison maps to and from the original.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub n: u32,
    pub m: u32,
    /// `P(X, Y - f_(m-1)(X)/m)`.
    pub p: Polynomial,
    pub ring: RingPresentation,
    pub to_norm: RingMorphism,
    pub from_norm: RingMorphism,
}

/// Applies `Y -> Y - f_(m-1)(X)/m`; the identity when `f_(m-1)` already
/// vanishes.
pub fn normalize_danielewski(inst: &FamilyInstance) -> Result<Normalized> {
    let (n, m, p) = danielewski_parts(inst)?;
    let pc = danielewski_ctx();
    let shift = p.coefficients_in(1)[m as usize - 1].scale(&int(i64::from(m)).recip());
    if shift.is_zero() {
        let id = RingMorphism::identity(&inst.ring);
        return Ok(Normalized {
            n,
            m,
            p: p.clone(),
            ring: inst.ring.clone(),
            to_norm: id.clone(),
            from_norm: id,
        });
    }
    let x = Polynomial::var(&pc, 0);
    let p_norm = p.substitute(&[x, &Polynomial::var(&pc, 1) - &shift])?;
    let ctx = inst.ring.ctx();
    let (xv, yv, zv) = (Polynomial::var(ctx, 0), Polynomial::var(ctx, 1), Polynomial::var(ctx, 2));
    let ring = RingPresentation::new(ctx, vec![&(&xv.pow(n) * &zv) - &p_norm.remap(ctx, &[0, 1])], inst.ring.config())?;
    let shift_b = shift.remap(ctx, &[0, 1]);
    let to_norm = RingMorphism::new(&inst.ring, &ring, vec![xv.clone(), &yv - &shift_b, zv.clone()])?;
    let from_norm = RingMorphism::new(&ring, &inst.ring, vec![xv, &yv + &shift_b, zv])?;
    let to_norm = to_norm.with_inverse(&from_norm)?;
    let from_norm = to_norm.inverse().expect("just attached");
    Ok(Normalized {
        n,
        m,
        p: p_norm,
        ring,
        to_norm,
        from_norm,
    })
}

/// The automorphism of a Danielewski surface given by `data` in normalized
/// coordinates, transported back to the instance's own coordinates, with
/// its verified inverse.
pub fn build_auto_danielewski(inst: &FamilyInstance, data: &AutomorphismData) -> Result<RingMorphism> {
    let norm = normalize_danielewski(inst)?;
    check_congruences(&norm.p, 1, 1..=norm.m, norm.n, &data.lambda, &data.mu)?;
    let fwd = danielewski_map(&norm.ring, &norm.p, &norm.ring, &norm.p, norm.n, data)?;
    let back = danielewski_map(&norm.ring, &norm.p, &norm.ring, &norm.p, norm.n, &data.inverse(norm.n))?;
    let alpha = fwd.with_inverse(&back)?;
    norm.to_norm.then(&alpha)?.then(&norm.from_norm)
}

/// `(λ, μ, a)` read off an automorphism of the shape built by
/// [`build_auto_danielewski`], in normalized coordinates.
pub fn recover_danielewski_data(inst: &FamilyInstance, alpha: &RingMorphism) -> Result<AutomorphismData> {
    let norm = normalize_danielewski(inst)?;
    let conj = norm.from_norm.then(alpha)?.then(&norm.to_norm)?;
    recover(&conj, norm.n)
}

fn recover(alpha: &RingMorphism, shift: u32) -> Result<AutomorphismData> {
    let ctx = alpha.target().ctx();
    let nv = ctx.len();
    let x = crate::poly::Monomial::var(nv, 0, 1);
    let y = crate::poly::Monomial::var(nv, 1, 1);
    let lambda = alpha.images()[0].coefficient(&x);
    let mu = alpha.images()[1].coefficient(&y);
    let rest = &alpha.images()[1] - &Polynomial::var(ctx, 1).scale(&mu);
    let a = rest
        .div_exact(&Polynomial::var(ctx, 0).pow(shift))?
        .ok_or_else(|| Error::Precondition(format!("y-image {} has the wrong shape", alpha.images()[1])))?;
    if !a.uses_only(&[0]) {
        return Err(Error::Precondition(format!("a = {a} depends on more than x")));
    }
    AutomorphismData::new(lambda, mu, a.remap(&data_ctx(), &vec![0; nv]))
}

/// New-family data `(n, e, d, m, P)`, requiring `Q = Y^m` and `f_(d-1) = 0`.
fn new_family_parts(inst: &FamilyInstance) -> Result<(u32, u32, u32, u32, &Polynomial)> {
    let (n, e, p, q) = match &inst.family {
        Family::NewFamily { n, e, p, q } => (*n, *e, p, q),
        _ => return Err(Error::Precondition("expected a new-family instance".into())),
    };
    let m = q.degree_in(1).unwrap_or(0);
    if *q != Polynomial::var(&new_family_q_ctx(), 1).pow(m) {
        return Err(Error::Precondition(format!("closed form needs Q = Y^{m}, got Q = {q}")));
    }
    let d = p.degree_in(1).unwrap_or(0);
    if !p.coefficients_in(1)[d as usize - 1].is_zero() {
        return Err(Error::Precondition(format!("closed form needs the S^{} coefficient of P = {p} to vanish", d - 1)));
    }
    Ok((n, e, d, m, p))
}

fn new_family_map(inst: &FamilyInstance, data: &AutomorphismData) -> Result<RingMorphism> {
    let (n, e, d, m, p) = new_family_parts(inst)?;
    let (l, mu) = (&data.lambda, &data.mu);
    let pc = new_family_p_ctx();
    let (xp, sp) = (Polynomial::var(&pc, 0), Polynomial::var(&pc, 1));
    let a_p = data.a.remap(&pc, &[0]);
    let moved = &sp.scale(mu) + &(&xp.pow(n + e) * &a_p);
    let num = &p.substitute(&[xp.scale(l), moved])? - &p.scale(&rpow(mu, d));
    let den = xp.pow(n).scale(&rpow(l, n));
    let f = num
        .div_exact(&den)?
        .ok_or_else(|| Error::NonDivisible(format!("{num} by {den}")))?;

    let ctx = inst.ring.ctx();
    let (x, y, z) = (Polynomial::var(ctx, 0), Polynomial::var(ctx, 1), Polynomial::var(ctx, 2));
    let f_b = f.substitute(&[x.clone(), inst.slice.clone()])?;
    let c = rpow(mu, d) / rpow(l, n);
    let ay = &y.scale(&c) + &f_b;
    let a_b = data.a.remap(ctx, &[0]);
    let num_z = &(&ay.pow(m) - &y.pow(m).scale(mu)) - &(&x.pow(n + e) * &a_b);
    let den_z = x.pow(e).scale(&rpow(l, e));
    let q = num_z
        .div_exact(&den_z)?
        .ok_or_else(|| Error::NonDivisible(format!("{num_z} by {den_z}")))?;
    let cz = rpow(mu, d * m) / rpow(l, n * m + e);
    RingMorphism::new(&inst.ring, &inst.ring, vec![x.scale(l), ay, &z.scale(&cz) + &q])
}

/// The automorphism of a new-family surface with `Q = Y^m` given by `data`,
/// with its verified inverse.
pub fn build_auto_newfamily(inst: &FamilyInstance, data: &AutomorphismData) -> Result<RingMorphism> {
    let (n, e, d, m, p) = new_family_parts(inst)?;
    let lhs = rpow(&data.mu, d * m) / rpow(&data.lambda, n * m);
    if lhs != data.mu {
        return Err(Error::Precondition(format!(
            "μ^{}/λ^{} = {lhs} must equal μ = {} (λ = {})",
            d * m,
            n * m,
            data.mu,
            data.lambda
        )));
    }
    check_congruences(p, 1, 2..=d, n + e, &data.lambda, &data.mu)?;
    let fwd = new_family_map(inst, data)?;
    let back = new_family_map(inst, &data.inverse(n + e))?;
    fwd.with_inverse(&back)
}

/// `(λ, μ, a)` of an automorphism built by [`build_auto_newfamily`], read
/// off `α(x)` and `α(s) = μs + x^(n+e) a(x)`.
pub fn recover_newfamily_data(inst: &FamilyInstance, alpha: &RingMorphism) -> Result<AutomorphismData> {
    let (n, e, ..) = new_family_parts(inst)?;
    let ctx = inst.ring.ctx();
    let lambda = alpha.images()[0].coefficient(&crate::poly::Monomial::var(ctx.len(), 0, 1));
    let s_img = alpha.apply(&inst.slice)?;
    let s_red = inst.ring.reduce(&inst.slice);
    let (lead_m, lead_c) = s_red
        .terms()
        .find(|(m, _)| m.exp(1) + m.exp(2) > 0)
        .map(|(m, c)| (m.clone(), c.clone()))
        .expect("slice involves y or z");
    let mu = s_img.coefficient(&lead_m) / lead_c;
    let rest = inst.ring.reduce(&(&s_img - &s_red.scale(&mu)));
    let a = rest
        .div_exact(&Polynomial::var(ctx, 0).pow(n + e))?
        .filter(|a| a.uses_only(&[0]))
        .ok_or_else(|| Error::Precondition(format!("α(s) = {s_img} has the wrong shape")))?;
    AutomorphismData::new(lambda, mu, a.remap(&data_ctx(), &vec![0; ctx.len()]))
}

/// Outcome of comparing `deg_D(b)` with `deg_D(α(b))` on sampled `b`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PreservationReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PreservationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Samples `samples` elements of total degree at most `max_degree`, plus the
/// ring generators, and compares degrees before and after `α`.
pub fn verify_degree_preservation(
    alpha: &RingMorphism,
    d: &Derivation,
    samples: usize,
    max_degree: u32,
    seed: u64,
) -> Result<PreservationReport> {
    let ring = d.ring();
    if alpha.source() != ring || alpha.target() != ring {
        return Err(Error::Precondition("α must be an endomorphism of the derivation's ring".into()));
    }
    let mut rng = sample::rng(seed);
    let shape = Shape::all(ring.ctx(), max_degree, 4);
    let mut elems = ring.vars();
    elems.extend((0..samples).map(|_| ring.reduce(&sample::polynomial(&mut rng, ring.ctx(), &shape))));
    let mut report = PreservationReport::default();
    for b in elems {
        let before = d.degree(&b)?;
        let after = d.degree(&alpha.apply(&b)?)?;
        report.checked += 1;
        if before != after {
            report.failures.push(format!("deg({b}) = {before} but deg(α(b)) = {after}"));
        }
    }
    Ok(report)
}

/// `deg_(D_α)(b)` against `deg_D(α(b))` for the conjugate `D_α = α⁻¹ D α`.
pub fn verify_conjugation_identity(
    alpha: &RingMorphism,
    d: &Derivation,
    samples: usize,
    max_degree: u32,
    seed: u64,
) -> Result<PreservationReport> {
    let conj = d.conjugate(alpha)?;
    let ring = d.ring();
    let mut rng = sample::rng(seed);
    let shape = Shape::all(ring.ctx(), max_degree, 4);
    let mut report = PreservationReport::default();
    for _ in 0..samples {
        let b = ring.reduce(&sample::polynomial(&mut rng, ring.ctx(), &shape));
        let lhs: Degree = conj.degree(&b)?;
        let rhs = d.degree(&alpha.apply(&b)?)?;
        report.checked += 1;
        if lhs != rhs {
            report.failures.push(format!("deg_α({b}) = {lhs} but deg(α(b)) = {rhs}"));
        }
    }
    Ok(report)
}
