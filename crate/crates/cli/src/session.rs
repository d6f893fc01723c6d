use lndfilt::families::{danielewski_ctx, koras_russell_ctx, new_family_p_ctx, new_family_q_ctx, FamilyInstance};
use lndfilt::filtration::{CandidateFiltration, FiltrationSpec};
use lndfilt::poly::parse::parse_polynomial;
use lndfilt::{Derivation, GbConfig, Polynomial, RingPresentation, VariableContext};

use crate::args::{FamilyKind, FamilyParams, RingArgs, SourceArgs};
use crate::report::CliError;

/// Bounds shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub nilp: usize,
    pub degree: u64,
    pub gb: GbConfig,
}

#[derive(Clone, Debug)]
pub enum Source {
    Family(Box<FamilyInstance>),
    Ring {
        ring: RingPresentation,
        derivation: Derivation,
        spec: Option<FiltrationSpec>,
    },
}

impl Source {
    pub fn ring(&self) -> &RingPresentation {
        match self {
            Source::Family(f) => &f.ring,
            Source::Ring { ring, .. } => ring,
        }
    }

    pub fn derivation(&self) -> &Derivation {
        match self {
            Source::Family(f) => &f.derivation,
            Source::Ring { derivation, .. } => derivation,
        }
    }

    pub fn family(&self) -> Result<&FamilyInstance, CliError> {
        match self {
            Source::Family(f) => Ok(f),
            Source::Ring { .. } => Err(CliError::usage("this command needs a family instance")),
        }
    }

    pub fn filtration(&self) -> Result<CandidateFiltration, CliError> {
        match self {
            Source::Family(f) => Ok(f.filtration()?),
            Source::Ring { spec: Some(spec), .. } => Ok(CandidateFiltration::new(spec)?),
            Source::Ring { spec: None, .. } => Err(CliError::usage("filtration data missing: pass --kernel and --slices")),
        }
    }
}

/// Ring state carried between the lines of a script.
#[derive(Debug, Default)]
pub struct Session {
    pub source: Option<Source>,
}

impl Session {
    /// The source named by `args`, falling back to the session's.
    pub fn resolve(&self, args: &SourceArgs, bounds: &Bounds) -> Result<Source, CliError> {
        if let Some(kind) = args.family {
            return build_family(kind, &args.params, bounds);
        }
        if args.ring.vars.is_some() {
            return build_ring(&args.ring, bounds);
        }
        self.source
            .clone()
            .ok_or_else(|| CliError::usage("no ring: pass --family ... or --vars/--rel/--der, or declare one first"))
    }
}

fn split(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn parse_all(list: &str, ctx: &VariableContext) -> Result<Vec<Polynomial>, CliError> {
    split(list).into_iter().map(|s| Ok(parse_polynomial(s, ctx)?)).collect()
}

pub fn build_ring(args: &RingArgs, bounds: &Bounds) -> Result<Source, CliError> {
    let vars = args.vars.as_deref().ok_or_else(|| CliError::usage("--vars is required"))?;
    let ctx = VariableContext::new(&split(vars))?;
    let relations = args
        .relations
        .iter()
        .map(|r| Ok(parse_polynomial(r, &ctx)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    let ring = RingPresentation::new(&ctx, relations, &bounds.gb)?;
    let der = args.derivation.as_deref().ok_or_else(|| CliError::usage("--der is required"))?;
    let derivation = Derivation::new(&ring, parse_all(der, &ctx)?)?.with_nilp_bound(bounds.nilp);
    let spec = match (&args.kernel, &args.slices) {
        (None, None) => None,
        (k, s) => Some(FiltrationSpec::new(
            &derivation,
            parse_all(k.as_deref().unwrap_or(""), &ctx)?,
            parse_all(s.as_deref().unwrap_or(""), &ctx)?,
        )?),
    };
    Ok(Source::Ring { ring, derivation, spec })
}

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::usage(format!("--{name} is required for this family")))
}

fn need_poly(v: &Option<String>, name: &str, ctx: &VariableContext) -> Result<Polynomial, CliError> {
    let text = v
        .as_deref()
        .ok_or_else(|| CliError::usage(format!("--{name} is required for this family")))?;
    Ok(parse_polynomial(text, ctx)?)
}

pub fn build_family(kind: FamilyKind, p: &FamilyParams, bounds: &Bounds) -> Result<Source, CliError> {
    let n = need(p.n, "n")?;
    let inst = match kind {
        FamilyKind::Danielewski => FamilyInstance::danielewski(n, &need_poly(&p.p, "P", &danielewski_ctx())?, &bounds.gb)?,
        FamilyKind::Kr2 => FamilyInstance::koras_russell2(
            n,
            need(p.e, "e")?,
            need(p.l, "l")?,
            &need_poly(&p.q, "Q", &koras_russell_ctx())?,
            &bounds.gb,
        )?,
        FamilyKind::New => FamilyInstance::new_family(
            n,
            need(p.e, "e")?,
            &need_poly(&p.p, "P", &new_family_p_ctx())?,
            &need_poly(&p.q, "Q", &new_family_q_ctx())?,
            &bounds.gb,
        )?,
    };
    Ok(Source::Family(Box::new(inst)))
}
