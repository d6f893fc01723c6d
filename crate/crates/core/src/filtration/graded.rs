use serde::Serialize;

use super::{CandidateFiltration, Properness};
use crate::error::{Error, Result};
use crate::lnd::{Derivation, RingPresentation};
use crate::poly::{Degree, Polynomial, VariableContext, WeightVector};
use crate::sample::{self, Shape};

/// `k[Z̄.., X̄.., S̄..] / Ĵ` with its grading.
#[derive(Clone, Debug, Serialize)]
pub struct GradedPresentation {
    #[serde(serialize_with = "crate::serde_text::seq")]
    pub variables: Vec<String>,
    pub degrees: Vec<u32>,
    #[serde(serialize_with = "crate::serde_text::seq")]
    pub relations: Vec<Polynomial>,
    #[serde(skip)]
    pub ring: RingPresentation,
}

impl GradedPresentation {
    pub fn ctx(&self) -> &VariableContext {
        self.ring.ctx()
    }

    pub fn weights(&self) -> WeightVector {
        WeightVector::new(self.degrees.clone())
    }
}

/// `gr(b)` together with its degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedElement {
    #[serde(serialize_with = "crate::serde_text::one")]
    pub value: Polynomial,
    pub degree: Degree,
}

impl GradedElement {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// `D̄`, homogeneous of degree `degree` (or the zero map).
#[derive(Clone, Debug)]
pub struct InducedDerivation {
    pub degree: Option<i64>,
    pub derivation: Derivation,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PropertyTally {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PropertyTally {
    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// P1 multiplicativity, P2 domination, P3 additivity without drop,
/// P4 cancellation with drop.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GrReport {
    pub p1: PropertyTally,
    pub p2: PropertyTally,
    pub p3: PropertyTally,
    pub p4: PropertyTally,
    /// `deg gr(b) = deg_D(b)`.
    pub oracle: PropertyTally,
}

impl GrReport {
    pub fn passed(&self) -> bool {
        [&self.p1, &self.p2, &self.p3, &self.p4, &self.oracle].iter().all(|t| t.passed())
    }
}

impl CandidateFiltration {
    /// Fails unless the filtration is certified or empirically proper.
    pub fn graded_presentation(&self) -> Result<GradedPresentation> {
        match self.properness_check(32, 0) {
            Properness::Proper(_) => self.graded_presentation_unchecked(),
            other => Err(Error::Improper(format!("{other:?}"))),
        }
    }

    pub fn graded_presentation_unchecked(&self) -> Result<GradedPresentation> {
        let ring = self.graded_ring()?.clone();
        Ok(GradedPresentation {
            variables: self.ctx().names().to_vec(),
            degrees: self.weights().weights().to_vec(),
            relations: ring.relations().generators().to_vec(),
            ring,
        })
    }

    /// `gr(b)`: the `ω`-top form of the minimal preimage of `b`, which is
    /// already reduced modulo `Ĵ`.
    pub fn gr(&self, b: &Polynomial) -> Result<GradedElement> {
        let p = self.minimal_lift(b)?;
        let degree = p.weighted_degree(self.weights());
        let value = if p.is_zero() { p } else { p.top_form(self.weights())? };
        Ok(GradedElement { value, degree })
    }

    /// Samples `samples` random elements of degree-bounded shape and checks
    /// P1-P4 on pairs drawn from them, plus oracle agreement of every degree.
    pub fn gr_properties_test(&self, samples: usize, seed: u64) -> Result<GrReport> {
        let ring = self.ring();
        let graded = self.graded_ring()?;
        let mut rng = sample::rng(seed);
        let shape = Shape::all(ring.ctx(), 3, 3);
        let mut pool = Vec::with_capacity(samples);
        let mut report = GrReport::default();
        for _ in 0..samples {
            let b = ring.reduce(&sample::polynomial(&mut rng, ring.ctx(), &shape));
            if b.is_zero() {
                continue;
            }
            let g = self.gr(&b)?;
            let oracle = self.derivation().degree(&b)?;
            report
                .oracle
                .record(g.degree == oracle, || format!("deg gr({b}) = {} but deg_D = {oracle}", g.degree));
            pool.push((b, g));
        }
        for i in 0..pool.len() {
            let j = (i + 1) % pool.len();
            let (a, ga) = &pool[i];
            let (b, gb) = &pool[j];
            let gab = self.gr(&(a * b))?;
            let prod = graded.reduce(&(&ga.value * &gb.value));
            report.p1.record(graded.equal(&gab.value, &prod) && gab.degree == ga.degree + gb.degree, || {
                format!("gr(({a})*({b})) = {} != {prod}", gab.value)
            });
        }
        for (i, (a, ga)) in pool.iter().enumerate() {
            for (b, gb) in pool.iter().skip(i + 1) {
                let sum = self.gr(&(a + b))?;
                if ga.degree != gb.degree {
                    let (top, _) = if ga.degree > gb.degree { (ga, gb) } else { (gb, ga) };
                    report
                        .p2
                        .record(sum == *top, || format!("gr(({a}) + ({b})) = {} != {}", sum.value, top.value));
                } else {
                    self.check_equal_degree(&mut report, ga, gb, &sum, graded);
                }
            }
            // A guaranteed drop: b = e - a with deg e < deg a.
            if let Degree::Finite(da) = ga.degree {
                if da > 0 {
                    let e = pool.iter().find(|(_, ge)| ge.degree < ga.degree).map(|(e, _)| e.clone());
                    let e = e.unwrap_or_else(|| Polynomial::one(ring.ctx()));
                    let b = &e - a;
                    let gb = self.gr(&b)?;
                    let sum = self.gr(&(a + &b))?;
                    self.check_equal_degree(&mut report, ga, &gb, &sum, graded);
                }
            }
        }
        Ok(report)
    }

    fn check_equal_degree(
        &self,
        report: &mut GrReport,
        ga: &GradedElement,
        gb: &GradedElement,
        sum: &GradedElement,
        graded: &RingPresentation,
    ) {
        let naive = graded.reduce(&(&ga.value + &gb.value));
        if sum.degree == ga.degree {
            report
                .p3
                .record(graded.equal(&sum.value, &naive), || format!("{} + {} != {}", ga.value, gb.value, sum.value));
        } else {
            report.p4.record(sum.degree < ga.degree && naive.is_zero(), || {
                format!("drop to {} but {} + {} = {naive}", sum.degree, ga.value, gb.value)
            });
        }
    }

    /// `D̄` on the graded algebra for a derivation `D` of the ring.
    pub fn induced_derivation(&self, d: &Derivation) -> Result<InducedDerivation> {
        if d.ring() != self.ring() {
            return Err(Error::Precondition("derivation lives on a different ring".into()));
        }
        let graded = self.graded_ring()?.clone();
        let mut images = Vec::with_capacity(self.vars().len());
        let mut gaps = Vec::with_capacity(self.vars().len());
        for v in self.vars() {
            let g = self.gr(&d.apply(&v.image))?;
            let gap = g.degree.finite().map(|k| k as i64 - i64::from(v.weight));
            gaps.push(gap);
            images.push(g.value);
        }
        let degree = gaps.iter().flatten().copied().max();
        let images: Vec<Polynomial> = images
            .into_iter()
            .zip(&gaps)
            .map(|(img, gap)| if *gap == degree { img } else { Polynomial::zero(graded.ctx()) })
            .collect();
        let derivation = Derivation::new(&graded, images)?;
        Ok(InducedDerivation { degree, derivation })
    }
}
