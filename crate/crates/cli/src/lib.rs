//! Driver behind the `lndfilt` binary: one-shot commands and line-oriented
//! scripts over a shared session.

pub mod args;
pub mod report;
pub mod session;

use std::io::Read;

use clap::Parser;
use serde_json::json;

use lndfilt::families::{Family, SearchConfig};
use lndfilt::lnd::Nilpotency;
use lndfilt::morphisms::{
    build_auto_danielewski, build_auto_newfamily, data_ctx, iso_decide, verify_degree_preservation, AutomorphismData,
    IsoDecision,
};
use lndfilt::poly::parse::parse_polynomial;
use lndfilt::{selftest, Degree, GbConfig, Polynomial, Rational};

use args::{Cli, Command, FamilyKind};
use report::{CliError, Output, Report, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};
use session::{build_family, build_ring, Bounds, Session, Source};

fn degree_json(d: Degree) -> serde_json::Value {
    match d {
        Degree::Finite(k) => json!(k),
        Degree::NegInfinity => json!("-inf"),
    }
}

fn list(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn describe_source(src: &Source) -> (serde_json::Value, String) {
    let ring = src.ring();
    let d = src.derivation();
    let names = ring.ctx().names();
    let images: Vec<String> = names.iter().zip(d.images()).map(|(v, img)| format!("D({v}) = {img}")).collect();
    let relations = list(ring.relations().generators());
    let mut text = format!("ring k[{}] / ({})\n{}", names.join(", "), relations.join(", "), images.join("\n"));
    let mut value = json!({
        "variables": names,
        "relations": relations,
        "derivation": list(d.images()),
    });
    if let Source::Family(f) = src {
        value["family"] = serde_json::to_value(&f.family).expect("serializable");
        value["translation"] = json!(f.translation.to_string());
        value["degrees"] = json!(f.degrees);
        value["kernel"] = json!(list(&f.kernel));
        value["slice"] = json!(f.slice.to_string());
        value["plinth"] = json!(f.plinth.to_string());
        let degs: Vec<String> = names.iter().zip(&f.degrees).map(|(v, k)| format!("{v}:{k}")).collect();
        text.push_str(&format!(
            "\ndegrees {}\nkernel {}; slice {} with D(slice) = {}",
            degs.join(" "),
            list(&f.kernel).join(", "),
            f.slice,
            f.plinth
        ));
        if f.translation != Rational::from_integer(0.into()) {
            text.push_str(&format!("\ntranslated by Y -> Y + {}", f.translation));
        }
    }
    (value, text)
}

fn parse_rational(text: &str, what: &str) -> Result<Rational, CliError> {
    let p = parse_polynomial(text, &data_ctx())?;
    if !p.is_constant() {
        return Err(CliError::usage(format!("--{what} must be a rational number")));
    }
    Ok(p.constant_term())
}

struct Runner {
    bounds: Bounds,
    session: Session,
    notes: Vec<String>,
}

impl Runner {
    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn execute(&mut self, cmd: &Command) -> Result<Output, CliError> {
        let bounds = self.bounds;
        match cmd {
            Command::Ring(args) => {
                let src = build_ring(args, &bounds)?;
                let (value, text) = describe_source(&src);
                self.note("derivation checked on every relation");
                self.session.source = Some(src);
                Ok(Output::new(value, text))
            }
            Command::Family { kind, params } => {
                let src = build_family(*kind, params, &bounds)?;
                let (value, text) = describe_source(&src);
                self.note("declared degrees checked against the nilpotency certificate");
                self.session.source = Some(src);
                Ok(Output::new(value, text))
            }
            Command::Deg { of, source } => {
                let src = self.session.resolve(source, &bounds)?;
                let b = src.ring().parse_element(of)?;
                let d = src.derivation().deg_lnd(&b, bounds.nilp)?;
                self.note(format!("iteration bound {}", bounds.nilp));
                Ok(Output::new(json!({ "element": of, "degree": degree_json(d) }), d.to_string()))
            }
            Command::LndCheck { source } => {
                let src = self.session.resolve(source, &bounds)?;
                self.note("well-definedness checked on every relation");
                self.note(format!("iteration bound {}", bounds.nilp));
                let verdict = src.derivation().is_locally_nilpotent(bounds.nilp);
                let text = match &verdict {
                    Nilpotency::Yes(c) => format!("locally nilpotent; per-variable orders {:?}", c.orders),
                    Nilpotency::NoWithinBound { variable, bound } => {
                        format!("not certified: D^{bound}({variable}) != 0")
                    }
                };
                let negative = !matches!(verdict, Nilpotency::Yes(_));
                Ok(Output::new(verdict, text).negative(negative))
            }
            Command::Filtration { r, source } => {
                let src = self.session.resolve(source, &bounds)?;
                let f = src.filtration()?;
                let mut layers = Vec::new();
                let mut text = String::new();
                for k in 0..=*r {
                    let layer = f.layer(k)?;
                    text.push_str(&format!("G_{k}: {}\n", list(&layer.reduced).join(", ")));
                    layers.push(layer);
                }
                let check = f.layer_equality(bounds.degree, 2)?;
                self.note(format!(
                    "layer equality against the degree oracle up to {} ({} monomials)",
                    bounds.degree, check.checked
                ));
                text.push_str(&format!(
                    "oracle cross-check to degree {}: {} monomials, {} mismatches",
                    bounds.degree,
                    check.checked,
                    check.mismatches.len()
                ));
                let negative = !check.mismatches.is_empty();
                let value = json!({
                    "variables": f.ctx().names(),
                    "weights": f.weights().weights(),
                    "layers": layers,
                    "oracle": check,
                });
                Ok(Output::new(value, text).negative(negative))
            }
            Command::Gr { samples, seed, source } => {
                let src = self.session.resolve(source, &bounds)?;
                let f = src.filtration()?;
                let properness = f.properness_check(*samples, *seed);
                self.note(format!("properness: binomial primality, else {samples} random pairs (seed {seed})"));
                let mut text = format!("properness: {properness:?}");
                let mut value = json!({ "properness": properness });
                if properness.is_proper() {
                    let pres = f.graded_presentation_unchecked()?;
                    let induced = f.induced_derivation(src.derivation())?;
                    let degs: Vec<String> =
                        pres.variables.iter().zip(&pres.degrees).map(|(v, k)| format!("{v}:{k}")).collect();
                    text.push_str(&format!(
                        "\nvariables {}\nrelations {}\ninduced derivation of degree {}: {}",
                        degs.join(" "),
                        list(&pres.relations).join(", "),
                        induced.degree.map_or("-inf".into(), |k| k.to_string()),
                        list(induced.derivation.images()).join(", ")
                    ));
                    value["presentation"] = serde_json::to_value(&pres).expect("serializable");
                    value["induced"] = json!({
                        "degree": induced.degree,
                        "images": list(induced.derivation.images()),
                    });
                }
                Ok(Output::new(value, text).negative(!properness.is_proper()))
            }
            Command::Search {
                image_degree,
                candidate_bound,
                samples,
                seed,
                evidence_degree,
                source,
            } => {
                let src = self.session.resolve(source, &bounds)?;
                let inst = src.family()?;
                let cfg = SearchConfig {
                    image_degree: *image_degree,
                    nilp_bound: *candidate_bound,
                    samples: *samples,
                    seed: *seed,
                    ..SearchConfig::default()
                };
                self.note(format!(
                    "image degree <= {image_degree}, nilpotency bound {}, {samples} random combinations (seed {seed})",
                    cfg.nilp_bound
                ));
                let result = inst.bounded_lnd_search(&cfg)?;
                let evidence = inst.ml_evidence(&result, *evidence_degree)?;
                let survivors = result.survivors().count();
                let text = format!(
                    "{} unknowns, solution space of dimension {}; {} candidates, {survivors} locally nilpotent, all multiples of the canonical derivation: {}\nkernel intersection to degree {}: dimension {} (kernel variables predict {})",
                    result.unknowns,
                    result.dimension,
                    result.candidates.len(),
                    result.all_multiples(),
                    evidence.degree,
                    evidence.dimension,
                    evidence.predicted_dimension
                );
                let negative = !result.all_multiples();
                Ok(Output::new(json!({ "search": result, "evidence": evidence }), text).negative(negative))
            }
            Command::Auto {
                lambda,
                mu,
                a,
                check_samples,
                source,
            } => {
                let src = self.session.resolve(source, &bounds)?;
                let inst = src.family()?;
                let data = AutomorphismData::new(
                    parse_rational(lambda, "lambda")?,
                    parse_rational(mu, "mu")?,
                    parse_polynomial(a, &data_ctx())?,
                )?;
                let alpha = match &inst.family {
                    Family::Danielewski { .. } => build_auto_danielewski(inst, &data)?,
                    Family::NewFamily { .. } => build_auto_newfamily(inst, &data)?,
                    Family::KorasRussell2 { .. } => {
                        return Err(CliError::usage("no automorphism formula for the kr2 family"))
                    }
                };
                let inverse = alpha.inverse().expect("constructed with inverse");
                let report = verify_degree_preservation(&alpha, &inst.derivation, *check_samples, 6, 0)?;
                self.note("homomorphism and both inverse compositions verified");
                self.note(format!("degree preservation on {} elements", report.checked));
                let names = inst.ring.ctx().names();
                let show = |imgs: &[Polynomial]| -> Vec<String> {
                    names.iter().zip(imgs).map(|(v, i)| format!("{v} -> {i}")).collect()
                };
                let text = format!(
                    "automorphism\n  {}\ninverse\n  {}\ndegree preserved on {}/{} elements",
                    show(alpha.images()).join("\n  "),
                    show(inverse.images()).join("\n  "),
                    report.checked - report.failures.len(),
                    report.checked
                );
                let value = json!({
                    "data": data,
                    "images": list(alpha.images()),
                    "inverse": list(inverse.images()),
                    "preservation": report,
                });
                Ok(Output::new(value, text).negative(!report.passed()))
            }
            Command::Iso { n, n2, p1, p2 } => {
                let params = |p: &str, n: u32| args::FamilyParams {
                    n: Some(n),
                    p: Some(p.to_string()),
                    ..Default::default()
                };
                let b1 = build_family(FamilyKind::Danielewski, &params(p1, *n), &bounds)?;
                let b2 = build_family(FamilyKind::Danielewski, &params(p2, n2.unwrap_or(*n)), &bounds)?;
                let decision = iso_decide(b1.family()?, b2.family()?)?;
                self.note("witness, when present, verified as a homomorphism with a two-sided inverse");
                let text = match &decision {
                    IsoDecision::Isomorphic { lambda, mu, witness } => {
                        format!("isomorphic (λ = {lambda}, μ = {mu}); witness {:?}", witness)
                    }
                    IsoDecision::NotIsomorphic { reason } => format!("not isomorphic: {reason}"),
                    IsoDecision::NotOverRationals { conditions } => {
                        format!("not isomorphic over the rationals; needs {}", conditions.join(", "))
                    }
                };
                let negative = !decision.is_isomorphic();
                Ok(Output::new(decision, text).negative(negative))
            }
            Command::Selftest { criterion } => {
                let ids: Vec<u8> = if criterion.is_empty() {
                    selftest::CRITERIA.iter().map(|(i, _)| *i).collect()
                } else {
                    criterion.clone()
                };
                let report = selftest::SelftestReport {
                    criteria: ids.into_iter().map(selftest::run).collect(),
                };
                let text = report.criteria.iter().map(|c| c.line()).collect::<Vec<_>>().join("\n");
                let negative = !report.passed();
                Ok(Output::new(report, text).negative(negative))
            }
            Command::Run { .. } => Err(CliError::usage("scripts cannot be nested")),
        }
    }
}

fn instance_bounds(cli: &Cli) -> Bounds {
    Bounds {
        nilp: cli.nilp_bound,
        degree: cli.degree_bound,
        gb: GbConfig { budget: cli.gb_budget },
    }
}

/// Executes one parsed command line against the session.
fn run_line(session: &mut Session, cli: &Cli, echo: String) -> Report {
    let mut runner = Runner {
        bounds: instance_bounds(cli),
        session: std::mem::take(session),
        notes: Vec::new(),
    };
    let outcome = runner.execute(&cli.command);
    *session = runner.session;
    match outcome {
        Ok(out) => Report {
            command: echo,
            status: out.status,
            result: Some(out.result),
            error: None,
            notes: runner.notes,
            text: out.text,
        },
        Err(e) => Report {
            command: echo,
            status: e.code,
            result: None,
            error: Some(e.message),
            notes: runner.notes,
            text: String::new(),
        },
    }
}

/// Runs a script; stops at the first error, remembers negative verdicts.
fn run_script(text: &str, json: bool, out: &mut Vec<Report>) -> i32 {
    let mut session = Session::default();
    let mut status = EXIT_OK;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(words) = shlex::split(line) else {
            out.push(usage_report(line, format!("line {}: unbalanced quotes", lineno + 1)));
            return EXIT_USAGE;
        };
        let mut argv = vec!["lndfilt".to_string()];
        if json {
            argv.push("--json".into());
        }
        argv.extend(words);
        let report = match Cli::try_parse_from(&argv) {
            Ok(cli) => run_line(&mut session, &cli, line.to_string()),
            Err(e) => usage_report(line, format!("line {}: {}", lineno + 1, e.render())),
        };
        let code = report.status;
        out.push(report);
        match code {
            EXIT_OK => {}
            EXIT_NEGATIVE => status = EXIT_NEGATIVE,
            other => return other,
        }
    }
    status
}

fn usage_report(echo: &str, message: String) -> Report {
    Report {
        command: echo.to_string(),
        status: EXIT_USAGE,
        result: None,
        error: Some(message),
        notes: Vec::new(),
        text: String::new(),
    }
}

/// Parses `argv`, runs it and returns the rendered output with the exit code.
pub fn run_args<I, T>(argv: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (e.render().to_string(), code);
        }
    };
    let mut reports = Vec::new();
    let code = match &cli.command {
        Command::Run { script } => {
            let text = if script.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map(|_| s)
            } else {
                std::fs::read_to_string(script)
            };
            match text {
                Ok(t) => run_script(&t, cli.json, &mut reports),
                Err(e) => {
                    reports.push(usage_report(&script.display().to_string(), format!("cannot read script: {e}")));
                    EXIT_USAGE
                }
            }
        }
        _ => {
            let report = run_line(&mut Session::default(), &cli, echo.join(" "));
            let code = report.status;
            reports.push(report);
            code
        }
    };
    let rendered = reports.iter().map(|r| r.render(cli.json)).collect::<Vec<_>>().join("\n");
    (rendered, code)
}
