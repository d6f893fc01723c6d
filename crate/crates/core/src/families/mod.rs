//! The three hypersurface families with their canonical derivations, and
//! bounded searches for further locally nilpotent derivations.

mod roots;
mod search;

pub use roots::rational_root;
pub use search::{
    kernel_intersection, Candidate, Classification, KernelEvidence, LndSearchResult, NilpotencyStatus, Origin, SearchConfig,
};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::filtration::{CandidateFiltration, FiltrationSpec};
use crate::ideal::GbConfig;
use crate::lnd::{Derivation, RingPresentation};
use crate::poly::parse::parse_polynomial;
use crate::poly::{Degree, Polynomial, Rational, VariableContext};

/// Family tag with the (normalized) defining data. `P` and `Q` are given in
/// the two or three variables named in each variant.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// `X^n Z - P(X, Y)`.
    Danielewski {
        n: u32,
        #[serde(serialize_with = "crate::serde_text::one")]
        p: Polynomial,
    },
    /// `Y (X^n + Z^e)^l - Q(X, Z, T)`.
    KorasRussell2 {
        n: u32,
        e: u32,
        l: u32,
        #[serde(serialize_with = "crate::serde_text::one")]
        q: Polynomial,
    },
    /// `X^n Y - P(X, Q(X, Y) - X^e Z)`.
    NewFamily {
        n: u32,
        e: u32,
        #[serde(serialize_with = "crate::serde_text::one")]
        p: Polynomial,
        #[serde(serialize_with = "crate::serde_text::one")]
        q: Polynomial,
    },
}

/// A member of one of the families with its canonical derivation `∂` and
/// the declared filtration data, all checked against the degree oracle.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub family: Family,
    /// `c` in the substitution `Y -> Y + c` applied to put the origin on the
    /// hypersurface.
    pub translation: Rational,
    pub ring: RingPresentation,
    pub derivation: Derivation,
    pub kernel: Vec<Polynomial>,
    pub slice: Polynomial,
    pub plinth: Polynomial,
    /// Declared `deg(x_i)` for the ring variables.
    pub degrees: Vec<u32>,
    spec: FiltrationSpec,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FormulaReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl FormulaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Variable names `X, Y` for the Danielewski `P`.
pub fn danielewski_ctx() -> VariableContext {
    VariableContext::new(&["X", "Y"]).expect("static names")
}

/// Variable names `X, Z, T` for the Koras-Russell `Q`.
pub fn koras_russell_ctx() -> VariableContext {
    VariableContext::new(&["X", "Z", "T"]).expect("static names")
}

/// Variable names `X, S` for the new-family `P`.
pub fn new_family_p_ctx() -> VariableContext {
    VariableContext::new(&["X", "S"]).expect("static names")
}

/// Variable names `X, Y` for the new-family `Q`.
pub fn new_family_q_ctx() -> VariableContext {
    danielewski_ctx()
}

fn out_of_range(msg: String) -> Error {
    Error::ParameterOutOfRange(msg)
}

fn expect_ctx(p: &Polynomial, ctx: &VariableContext) -> Result<()> {
    if p.ctx() != ctx {
        return Err(Error::ContextMismatch {
            left: ctx.names().join(","),
            right: p.ctx().names().join(","),
        });
    }
    Ok(())
}

/// Degree in `var`, requiring a leading coefficient of exactly 1.
fn monic_degree(p: &Polynomial, var: usize, what: &str) -> Result<u32> {
    let coeffs = p.coefficients_in(var);
    let lead = coeffs.last().expect("nonempty");
    if p.is_zero() || !lead.is_constant() || !lead.constant_term().is_one() {
        return Err(out_of_range(format!("{what} must be monic in {}", p.ctx().name(var))));
    }
    Ok((coeffs.len() - 1) as u32)
}

/// Coefficients of a polynomial in a single variable `var` (all others set to 0).
fn univariate_at_zero(p: &Polynomial, var: usize) -> Vec<Rational> {
    let origin = vec![Rational::zero(); p.ctx().len()];
    p.coefficients_in(var).iter().map(|c| c.evaluate(&origin)).collect()
}

fn pow_sum(a: &Polynomial, n: u32, b: &Polynomial, e: u32, l: u32) -> Polynomial {
    (&a.pow(n) + &b.pow(e)).pow(l)
}

impl FamilyInstance {
    /// `k[x,y,z]/(x^n z - P(x,y))` with `∂ = x^n ∂_y + P_y ∂_z`. `P` lives in
    /// [`danielewski_ctx`]; when `P(0,0) != 0` a rational root `c` of
    /// `P(0,Y)` is used to replace `P(X,Y)` by `P(X,Y+c)`.
    pub fn danielewski(n: u32, p: &Polynomial, cfg: &GbConfig) -> Result<Self> {
        expect_ctx(p, &danielewski_ctx())?;
        if n < 2 {
            return Err(out_of_range(format!("n = {n} must be at least 2")));
        }
        let m = monic_degree(p, 1, "P")?;
        if m < 2 {
            return Err(out_of_range(format!("deg_Y P = {m} must be at least 2")));
        }
        let pc = p.ctx().clone();
        let (x, y) = (Polynomial::var(&pc, 0), Polynomial::var(&pc, 1));
        let translation = if p.constant_term().is_zero() {
            Rational::zero()
        } else {
            rational_root(&univariate_at_zero(p, 1))
                .ok_or_else(|| out_of_range(format!("P(0,Y) = 0 has no rational root for P = {p}")))?
        };
        let p = p.substitute(&[x, &y + &Polynomial::constant(&pc, translation.clone())])?;

        let ctx = VariableContext::new(&["x", "y", "z"])?;
        let [xv, yv, zv] = [0, 1, 2].map(|i| Polynomial::var(&ctx, i));
        let p_b = p.remap(&ctx, &[0, 1]);
        let ring = RingPresentation::new(&ctx, vec![&(&xv.pow(n) * &zv) - &p_b], cfg)?;
        let d = Derivation::new(
            &ring,
            vec![Polynomial::zero(&ctx), xv.pow(n), p_b.partial_derivative(1)],
        )?;
        Self::finish(
            Family::Danielewski { n, p },
            translation,
            d,
            vec![xv.clone()],
            yv,
            xv.pow(n),
            vec![0, 1, m],
        )
    }

    /// `k[x,y,z,t]/(y (x^n + z^e)^l - Q(x,z,t))` with
    /// `∂ = Q_t ∂_y + (x^n + z^e)^l ∂_t`. `Q` lives in [`koras_russell_ctx`].
    pub fn koras_russell2(n: u32, e: u32, l: u32, q: &Polynomial, cfg: &GbConfig) -> Result<Self> {
        expect_ctx(q, &koras_russell_ctx())?;
        for (name, v) in [("n", n), ("e", e), ("l", l)] {
            if v < 2 {
                return Err(out_of_range(format!("{name} = {v} must be greater than 1")));
            }
        }
        let m = monic_degree(q, 2, "Q")?;
        if m < 2 {
            return Err(out_of_range(format!("deg_T Q = {m} must be greater than 1")));
        }
        if !q.constant_term().is_zero() {
            return Err(out_of_range(format!("Q(0,0,0) must vanish for Q = {q}")));
        }
        let ctx = VariableContext::new(&["x", "y", "z", "t"])?;
        let [xv, yv, zv, tv] = [0, 1, 2, 3].map(|i| Polynomial::var(&ctx, i));
        let q_b = q.remap(&ctx, &[0, 2, 3]);
        let plinth = pow_sum(&xv, n, &zv, e, l);
        let ring = RingPresentation::new(&ctx, vec![&(&yv * &plinth) - &q_b], cfg)?;
        let zero = Polynomial::zero(&ctx);
        let d = Derivation::new(&ring, vec![zero.clone(), q_b.partial_derivative(3), zero, plinth.clone()])?;
        Self::finish(
            Family::KorasRussell2 { n, e, l, q: q.clone() },
            Rational::zero(),
            d,
            vec![xv, zv],
            tv,
            plinth,
            vec![0, m, 0, 1],
        )
    }

    /// `k[x,y,z]/(x^n y - P(x, s))` with `s = Q(x,y) - x^e z`, `∂(s) = x^(n+e)`,
    /// `∂ = x^e P_s ∂_y + (Q_y P_s - x^n) ∂_z`. `P` lives in
    /// [`new_family_p_ctx`] and `Q` in [`new_family_q_ctx`]. When the origin
    /// is not on the surface, `Y -> Y + c` turns `Q` into `Q(X, Y+c)` and `P`
    /// into `P - c X^n`, with `c` a rational root of `P(0, Q(0, c))`.
    pub fn new_family(n: u32, e: u32, p: &Polynomial, q: &Polynomial, cfg: &GbConfig) -> Result<Self> {
        expect_ctx(p, &new_family_p_ctx())?;
        expect_ctx(q, &new_family_q_ctx())?;
        if n < 2 {
            return Err(out_of_range(format!("n = {n} must be at least 2")));
        }
        if e < 1 {
            return Err(out_of_range("e must be at least 1".into()));
        }
        let d = monic_degree(p, 1, "P")?;
        if d < 2 {
            return Err(out_of_range(format!("deg_S P = {d} must be at least 2")));
        }
        let m = monic_degree(q, 1, "Q")?;
        if m < 1 {
            return Err(out_of_range("deg_Y Q must be at least 1".into()));
        }
        let (pc, qc) = (p.ctx().clone(), q.ctx().clone());
        let zero_q = Polynomial::zero(&qc);
        let q_at_0 = q.substitute(&[zero_q.clone(), Polynomial::var(&qc, 1)])?;
        let composed = p.substitute(&[zero_q, q_at_0])?;
        let translation = if composed.constant_term().is_zero() {
            Rational::zero()
        } else {
            rational_root(&univariate_at_zero(&composed, 1))
                .ok_or_else(|| out_of_range(format!("P(0, Q(0, c)) = 0 has no rational root c for P = {p}, Q = {q}")))?
        };
        let c_q = Polynomial::constant(&qc, translation.clone());
        let q = q.substitute(&[Polynomial::var(&qc, 0), &Polynomial::var(&qc, 1) + &c_q])?;
        let p = p - &Polynomial::var(&pc, 0).pow(n).scale(&translation);

        let ctx = VariableContext::new(&["x", "y", "z"])?;
        let [xv, yv, zv] = [0, 1, 2].map(|i| Polynomial::var(&ctx, i));
        let q_b = q.remap(&ctx, &[0, 1]);
        let s = &q_b - &(&xv.pow(e) * &zv);
        let dp = p.partial_derivative(1).substitute(&[xv.clone(), s.clone()])?;
        let rel = &(&xv.pow(n) * &yv) - &p.substitute(&[xv.clone(), s.clone()])?;
        let ring = RingPresentation::new(&ctx, vec![rel], cfg)?;
        let der = Derivation::new(
            &ring,
            vec![
                Polynomial::zero(&ctx),
                &xv.pow(e) * &dp,
                &(&q_b.partial_derivative(1) * &dp) - &xv.pow(n),
            ],
        )?;
        Self::finish(
            Family::NewFamily { n, e, p, q },
            translation,
            der,
            vec![xv.clone()],
            s,
            xv.pow(n + e),
            vec![0, d, m * d],
        )
    }

    fn finish(
        family: Family,
        translation: Rational,
        derivation: Derivation,
        kernel: Vec<Polynomial>,
        slice: Polynomial,
        plinth: Polynomial,
        degrees: Vec<u32>,
    ) -> Result<Self> {
        let ring = derivation.ring().clone();
        let cert = derivation.certificate()?;
        if cert.orders != degrees {
            return Err(Error::Precondition(format!(
                "declared degrees {degrees:?} disagree with the derivation: {:?}",
                cert.orders
            )));
        }
        if !ring.equal(&derivation.apply(&slice), &plinth) || !derivation.kernel_member(&plinth) {
            return Err(Error::Precondition(format!("∂({slice}) is not the plinth element {plinth}")));
        }
        let spec = FiltrationSpec::new(&derivation, kernel.clone(), vec![slice.clone()])?;
        Ok(Self {
            family,
            translation,
            ring,
            derivation,
            kernel,
            slice,
            plinth,
            degrees,
            spec,
        })
    }

    pub fn spec(&self) -> &FiltrationSpec {
        &self.spec
    }

    pub fn filtration(&self) -> Result<CandidateFiltration> {
        CandidateFiltration::new(&self.spec)
    }

    /// The relation of the hypersurface.
    pub fn relation(&self) -> &Polynomial {
        &self.ring.relations().generators()[0]
    }

    /// The monomial `g_r` with `F_r = F_0 g_r + F_(r-1)` as stated for the
    /// family.
    pub fn stated_layer_generator(&self, r: u64) -> Polynomial {
        let ctx = self.ring.ctx();
        let v = |i: usize| Polynomial::var(ctx, i);
        match &self.family {
            Family::Danielewski { .. } => {
                let m = u64::from(self.degrees[2]);
                &v(1).pow((r % m) as u32) * &v(2).pow((r / m) as u32)
            }
            Family::KorasRussell2 { .. } => {
                let m = u64::from(self.degrees[1]);
                &v(3).pow((r % m) as u32) * &v(1).pow((r / m) as u32)
            }
            Family::NewFamily { .. } => {
                let d = u64::from(self.degrees[1]);
                let md = u64::from(self.degrees[2]);
                let (i, rest) = (r / md, r % md);
                let g = &self.slice.pow((rest % d) as u32) * &v(1).pow((rest / d) as u32);
                &g * &v(2).pow(i as u32)
            }
        }
    }

    /// The graded relations, in the variables of the candidate filtration.
    pub fn stated_graded_relations(&self, f: &CandidateFiltration) -> Result<Vec<Polynomial>> {
        let texts = match &self.family {
            Family::Danielewski { n, .. } => vec![format!("X^{n}*Z - Y^{}", self.degrees[2])],
            Family::KorasRussell2 { n, e, l, .. } => {
                vec![format!("Y*(X^{n} + Z^{e})^{l} - T^{}", self.degrees[1])]
            }
            Family::NewFamily { n, e, .. } => {
                let (d, m) = (self.degrees[1], self.degrees[2] / self.degrees[1]);
                vec![format!("X^{n}*Y - S^{d}"), format!("Y^{m} - X^{e}*Z")]
            }
        };
        texts.iter().map(|t| parse_polynomial(t, f.ctx())).collect()
    }

    /// Stated graded relations that do not vanish in the computed graded
    /// algebra.
    pub fn graded_relation_failures(&self, f: &CandidateFiltration) -> Result<Vec<String>> {
        let graded = f.graded_ring()?;
        Ok(self
            .stated_graded_relations(f)?
            .into_iter()
            .filter(|r| !graded.is_zero(r))
            .map(|r| r.to_string())
            .collect())
    }

    /// Checks the stated layer formula on every coordinate monomial of weight
    /// `<= max_degree`: with `r = deg b`, the quotient `∂^r(b) / ∂^r(g_r)` is a
    /// kernel element `h` and `deg(b - h g_r) < r`. Also checks `deg g_r = r`.
    pub fn verify_layer_formula(&self, max_degree: u64, kernel_degree: u32) -> Result<FormulaReport> {
        let d = &self.derivation;
        let mut report = FormulaReport::default();
        for r in 0..=max_degree {
            let g = self.stated_layer_generator(r);
            report.checked += 1;
            let dg = d.degree(&g)?;
            if dg != Degree::Finite(r) {
                report.failures.push(format!("deg({g}) = {dg}, expected {r}"));
            }
        }
        let f = self.filtration()?;
        for mono in f.coordinate_monomials(max_degree, kernel_degree) {
            let b = f.project(&mono)?;
            let Degree::Finite(r) = d.degree(&b)? else { continue };
            report.checked += 1;
            let g = self.stated_layer_generator(r);
            let top_b = d.iterate(&b, r as usize);
            let top_g = d.iterate(&g, r as usize);
            let h = match top_b.div_exact(&top_g)? {
                Some(h) if d.kernel_member(&h) => h,
                _ => {
                    report.failures.push(format!("{mono}: ∂^{r} quotient is not a kernel element"));
                    continue;
                }
            };
            let rest = &b - &(&h * &g);
            let dr = d.degree(&rest)?;
            if dr >= Degree::Finite(r) {
                report.failures.push(format!("{mono}: remainder {rest} has degree {dr}"));
            }
        }
        Ok(report)
    }

    /// Indices of the ring variables that generate the kernel.
    pub fn kernel_variables(&self) -> Vec<usize> {
        match self.family {
            Family::KorasRussell2 { .. } => vec![0, 2],
            _ => vec![0],
        }
    }
}

/// Jacobian test at the origin: every first partial derivative vanishes there.
pub fn singular_at_origin(relation: &Polynomial) -> Result<bool> {
    let origin = vec![Rational::zero(); relation.ctx().len()];
    if !relation.evaluate(&origin).is_zero() {
        return Err(Error::Precondition(format!("origin is not on {relation} = 0")));
    }
    Ok((0..relation.ctx().len()).all(|i| relation.partial_derivative(i).evaluate(&origin).is_zero()))
}

#[cfg(test)]
mod tests;
