mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use reslie::catalog::{self, Built};
use reslie::cohomology::cohomology_dim;
use reslie::envelopes::{certify, minimal_p_envelope};
use reslie::ff::Subspace;
use reslie::json::{elem_repr, lambda_file, parse_algebra, parse_lambda, restricted_file, algebra_file, Loaded};
use reslie::laws::{run_suite, DEFAULT_SCOPES, SUITES};
use reslie::lie::{LieAlgebra, Representation, SeriesKind, DEFAULT_BUDGET};
use reslie::restricted::{factor_module, is_restrictable, FactorKind, RestrictedAlgebra};
use reslie::schunck::{projector, residual, ClassDescriptor, Kind};
use reslie::Error;

use report::{Inputs, Report};

#[derive(Parser)]
#[command(name = "reslie", version, about = "Schunck classes, projectors and p-envelopes of restricted Lie algebras over finite fields")]
struct Cli {
    /// Cap on enumeration sizes (closure evaluations, p-operations).
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Print the structured report as JSON.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basic invariants: series, centre, p-images, primitivity.
    Inspect { file: String },
    /// A [p]-chief series with each factor classified.
    ChiefSeries { file: String },
    /// Frattini subalgebra, and the [p]-Frattini subalgebra when restricted.
    Frattini { file: String },
    /// A projector for a Schunck class.
    Projector {
        #[arg(long)]
        class: String,
        file: String,
    },
    /// The residual for a formation.
    Residual {
        #[arg(long)]
        class: String,
        file: String,
    },
    /// dim H^i for i <= n with trivial, adjoint and (primitive case) socle coefficients.
    Cohomology {
        #[arg(long)]
        n: usize,
        file: String,
    },
    /// Minimal p-envelope of an ordinary algebra.
    Envelope {
        file: String,
        /// Write the envelope algebra JSON here.
        #[arg(short = 'o', long)]
        output: Option<String>,
    },
    /// Class membership verdict (exit 0 member, 1 not).
    Membership {
        #[arg(long)]
        class: String,
        file: String,
    },
    /// Named example algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run law suites over the small-algebra sample.
    CheckLaws {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Check every catalog fact, then every law suite.
    ReproducePaper {
        /// Skip the law suites.
        #[arg(long)]
        facts_only: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Build {
        key: String,
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(short = 'o', long)]
        output: Option<String>,
    },
}

enum Fail {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Lib(e)
    }
}

impl Fail {
    fn code(&self) -> i32 {
        match self {
            Fail::Lib(Error::Capacity(_)) => 3,
            Fail::Lib(Error::Inconsistency(_) | Error::Certificate(_)) => 4,
            _ => 2,
        }
    }
    fn message(&self) -> String {
        match self {
            Fail::Lib(e) => e.to_string(),
            Fail::Usage(m) => m.clone(),
        }
    }
}

#[derive(Default)]
struct Outcome {
    results: Value,
    certificates: Value,
    notes: Vec<String>,
    code: i32,
    /// Raw text printed instead of the human report.
    raw: Option<String>,
}

impl Outcome {
    fn new(results: Value, certificates: Value) -> Outcome {
        Outcome { results, certificates, ..Default::default() }
    }
}

struct Ctx {
    budget: u128,
    inputs: Inputs,
}

impl Ctx {
    fn read(&self, path: &str) -> Result<String, Fail> {
        self.inputs.read(path).map_err(|e| Fail::Usage(format!("cannot read {path}: {e}")))
    }

    fn load(&self, path: &str) -> Result<Loaded, Fail> {
        Ok(parse_algebra(&self.read(path)?)?)
    }

    fn load_restricted(&self, path: &str) -> Result<RestrictedAlgebra, Fail> {
        match self.load(path)? {
            Loaded::Restricted(r) => Ok(r),
            Loaded::Unrestricted(l) => Err(Fail::Usage(no_pop_message(&l))),
        }
    }

    fn class(&self, name: &str) -> Result<ClassDescriptor, Fail> {
        let load = |path: &str| -> reslie::Result<reslie::schunck::LambdaSpace> {
            let text = self.inputs.read(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
            parse_lambda(&text)
        };
        Ok(ClassDescriptor::parse(name, &load)?)
    }

    fn write(&self, path: &str, text: &str) -> Result<(), Fail> {
        std::fs::write(path, text).map_err(|e| Fail::Usage(format!("cannot write {path}: {e}")))
    }
}

fn no_pop_message(l: &LieAlgebra) -> String {
    if is_restrictable(l) {
        "input carries no p-operation; add p_images".into()
    } else {
        "input is not restrictable, no p-operation provided".into()
    }
}

fn fmt(l: &LieAlgebra, s: &Subspace) -> String {
    l.format_subspace(s)
}

fn dims(terms: &[Subspace]) -> Vec<usize> {
    terms.iter().map(Subspace::dim).collect()
}

fn inspect(ctx: &Ctx, file: &str) -> Result<Outcome, Fail> {
    let loaded = ctx.load(file)?;
    let l = loaded.algebra();
    let f = l.field();
    let mut res = json!({
        "field": { "p": f.p(), "m": f.m() },
        "dim": l.dim(),
        "labels": l.labels(),
        "abelian": l.is_abelian(),
        "nilpotent": l.is_nilpotent(),
        "soluble": l.is_soluble(),
        "derived_algebra": fmt(l, &l.derived_algebra()),
        "centre": fmt(l, &l.center()),
        "derived_series_dims": dims(&l.series(SeriesKind::Derived).terms),
        "lower_central_dims": dims(&l.series(SeriesKind::LowerCentral).terms),
        "restricted": loaded.restricted().is_some(),
        "restrictable": is_restrictable(l),
    });
    let mut cert = Value::Null;
    if let Some(r) = loaded.restricted() {
        let images: Vec<String> = r.images().iter().map(|v| l.format_vector(v)).collect();
        let socle = r.is_primitive();
        res["p_images"] = json!(images);
        res["primitive"] = json!(socle.is_some());
        res["atom"] = json!(r.is_atom());
        res["derived_is_p_ideal"] = json!(r.is_p_ideal(&l.derived_algebra()));
        if let Some(s) = socle {
            cert = json!({ "socle": fmt(l, &s) });
        }
    }
    Ok(Outcome::new(res, cert))
}

fn chief_series(ctx: &Ctx, file: &str) -> Result<Outcome, Fail> {
    let r = ctx.load_restricted(file)?;
    let l = r.algebra();
    let cs = r.p_chief_series();
    let factors: Vec<Value> = cs
        .factors
        .iter()
        .map(|c| {
            json!({
                "upper": fmt(l, &c.upper),
                "lower": fmt(l, &c.lower),
                "dim": c.dim,
                "kind": match c.kind {
                    FactorKind::Null => "null",
                    FactorKind::CentralAtom => "central atom",
                    FactorKind::Other => "other",
                },
                "central": c.central,
                "abelian": c.abelian,
            })
        })
        .collect();
    let terms: Vec<String> = cs.terms.iter().map(|t| fmt(l, t)).collect();
    Ok(Outcome::new(json!({ "length": factors.len(), "factors": factors }), json!({ "terms": terms })))
}

fn frattini(ctx: &Ctx, file: &str) -> Result<Outcome, Fail> {
    let loaded = ctx.load(file)?;
    let l = loaded.algebra();
    let phi = l.frattini(ctx.budget)?;
    let mut res = json!({ "frattini": fmt(l, &phi) });
    let mut cert = Value::Null;
    if let Some(r) = loaded.restricted() {
        let max = r.maximal_p_subalgebras(ctx.budget)?;
        let psi = r.p_frattini(ctx.budget)?;
        res["p_frattini"] = json!(fmt(l, &psi));
        res["p_frattini_contains_frattini"] = json!(psi.contains_space(l.field(), &phi));
        cert = json!({ "maximal_p_subalgebras": max.iter().map(|m| fmt(l, m)).collect::<Vec<_>>() });
    }
    Ok(Outcome::new(res, cert))
}

fn projector_cmd(ctx: &Ctx, class: &str, file: &str) -> Result<Outcome, Fail> {
    let c = ctx.class(class)?;
    let r = ctx.load_restricted(file)?;
    let l = r.algebra();
    let p = projector(&r, &c, ctx.budget)?;
    let in_class = c.contains(&r.restrict(&p.subspace)?)?;
    let mut out = Outcome::new(
        json!({ "class": c.name(), "projector": fmt(l, &p.subspace), "dim": p.subspace.dim() }),
        json!({ "in_class": in_class, "covering_checked_on_lattice": p.validated }),
    );
    if !p.validated {
        out.notes.push("[p]-subalgebra lattice exceeds the budget; recursive result not cross-checked".into());
    }
    Ok(out)
}

fn residual_cmd(ctx: &Ctx, class: &str, file: &str) -> Result<Outcome, Fail> {
    let c = ctx.class(class)?;
    let r = ctx.load_restricted(file)?;
    let l = r.algebra();
    let k = residual(&r, &c)?;
    let quot_in = c.contains(&r.p_quotient(&k)?.algebra)?;
    Ok(Outcome::new(
        json!({ "class": c.name(), "residual": fmt(l, &k), "dim": k.dim() }),
        json!({ "quotient_in_class": quot_in }),
    ))
}

fn cohomology_cmd(ctx: &Ctx, n: usize, file: &str) -> Result<Outcome, Fail> {
    let loaded = ctx.load(file)?;
    let l = loaded.algebra();
    let up_to = |rep: &Representation| -> Result<Vec<usize>, Fail> {
        (0..=n).map(|i| cohomology_dim(rep, i).map_err(Fail::from)).collect()
    };
    let mut res = json!({
        "n": n,
        "trivial": up_to(&Representation::trivial(l, 1))?,
        "adjoint": up_to(&Representation::adjoint(l))?,
    });
    let mut cert = Value::Null;
    if let Some(a) = loaded.restricted().and_then(|r| r.is_primitive()) {
        let q = l.quotient(&a)?;
        let rep = factor_module(l, &q, &a, &Subspace::zero(l.dim()))?;
        res["socle_over_quotient"] = up_to(&rep)?.into();
        cert = json!({ "socle": fmt(l, &a) });
    }
    let mut out = Outcome::new(res, cert);
    out.notes.push(format!("dimensions listed for degrees 0..={n} only"));
    Ok(out)
}

fn envelope_cmd(ctx: &Ctx, file: &str, output: Option<&str>) -> Result<Outcome, Fail> {
    let loaded = ctx.load(file)?;
    let u = loaded.algebra();
    let env = minimal_p_envelope(u)?;
    certify(&env)?;
    let t = env.target.algebra();
    let f = t.field();
    let rows: Vec<Vec<Value>> = (0..env.embedding.rows())
        .map(|i| env.embedding.row(i).iter().map(|&x| json!(elem_repr(f, x))).collect())
        .collect();
    let target = serde_json::to_value(restricted_file(&env.target)).expect("serializable");
    if let Some(path) = output {
        ctx.write(path, &reslie::json::to_pretty(&restricted_file(&env.target)))?;
    }
    Ok(Outcome::new(
        json!({ "source_dim": u.dim(), "target_dim": t.dim(), "minimal": env.minimal, "target": target }),
        json!({
            "embedding": rows,
            "image": fmt(t, &Subspace::span(f, t.dim(), &(0..u.dim()).map(|i| env.embedding.col(i)).collect::<Vec<_>>())),
            "injective_homomorphism_generating_centre_in_image": true,
        }),
    ))
}

fn membership(ctx: &Ctx, class: &str, file: &str) -> Result<Outcome, Fail> {
    let c = ctx.class(class)?;
    let (member, res, cert) = match ctx.load(file)? {
        Loaded::Restricted(r) => {
            let l = r.algebra();
            let v = c.membership(&r)?;
            let cert = json!({
                "route": format!("{:?}", v.route).to_lowercase(),
                "checked": v.checked.iter().map(|k| fmt(l, k)).collect::<Vec<_>>(),
                "failing": v.failing.as_ref().map(|k| fmt(l, k)),
                "exhaustive": v.exhaustive,
            });
            (v.member, json!({ "class": c.name(), "member": v.member }), cert)
        }
        Loaded::Unrestricted(l) => match c.kind() {
            Kind::Res(h) => {
                let m = h.contains(&l)?;
                (m, json!({ "class": c.name(), "member": m }), Value::Null)
            }
            _ => return Err(Fail::Usage(no_pop_message(&l))),
        },
    };
    let mut out = Outcome::new(res, cert);
    out.code = if member { 0 } else { 1 };
    Ok(out)
}

fn catalog_cmd(ctx: &Ctx, action: &CatalogAction) -> Result<Outcome, Fail> {
    match action {
        CatalogAction::List => {
            let keys: Vec<Value> = catalog::KEYS
                .iter()
                .map(|k| {
                    let p = catalog::fixed_prime(k).unwrap_or(3);
                    let facts: Vec<Value> = catalog::expected_facts(k, p)
                        .iter()
                        .map(|f| serde_json::to_value(f).expect("serializable"))
                        .collect();
                    json!({ "key": k, "fixed_prime": catalog::fixed_prime(k), "expected_facts": facts })
                })
                .collect();
            Ok(Outcome::new(json!({ "entries": keys }), Value::Null))
        }
        CatalogAction::Build { key, p, output } => {
            let p = catalog::fixed_prime(key).unwrap_or(*p);
            let text = match catalog::build(key, p)? {
                Built::Restricted(r) => reslie::json::to_pretty(&restricted_file(&r)),
                Built::Ordinary(l) => reslie::json::to_pretty(&algebra_file(&l, None)),
                Built::Lambda(s) => reslie::json::to_pretty(&lambda_file(&s)),
            };
            let mut out = Outcome::new(json!({ "key": key, "p": p }), Value::Null);
            match output {
                Some(path) => {
                    ctx.write(path, &text)?;
                    out.results["written"] = json!(path);
                }
                None => {
                    out.results["algebra"] = serde_json::from_str(&text).expect("valid JSON");
                    out.raw = Some(text);
                }
            }
            Ok(out)
        }
    }
}

fn default_dim(p: u32) -> usize {
    DEFAULT_SCOPES.iter().find(|s| s.0 == p).map_or(2, |s| s.1)
}

/// Runs the named suites; the outcome exits 1 on any counterexample.
fn suites(ctx: &Ctx, names: &[&str], scopes: &[(u32, usize)]) -> Result<(Value, Vec<String>, bool), Fail> {
    let mut reports = Vec::new();
    let mut notes = Vec::new();
    let mut ok = true;
    for name in names {
        let rep = run_suite(name, scopes, ctx.budget)?;
        ok &= rep.passes();
        for s in &rep.scopes {
            if s.sampled {
                notes.push(format!("{name}: p = {} up to dim {} uses the seeded sample above exhaustive sizes", s.p, s.max_dim));
            }
        }
        for l in &rep.laws {
            if !l.skipped.is_empty() {
                notes.push(format!("{name}/{}: {} instances skipped for capacity", l.law, l.skipped.len()));
            }
        }
        reports.push(serde_json::to_value(&rep).expect("serializable"));
    }
    Ok((Value::Array(reports), notes, ok))
}

fn check_laws(ctx: &Ctx, suite: Option<&str>, p: Option<u32>, max_dim: Option<usize>) -> Result<Outcome, Fail> {
    let names: Vec<&str> = match suite {
        Some(s) if SUITES.contains(&s) => vec![s],
        Some(s) => return Err(Fail::Usage(format!("unknown suite {s}; known: {}", SUITES.join(", ")))),
        None => SUITES.to_vec(),
    };
    let scopes: Vec<(u32, usize)> = match p {
        Some(p) => vec![(p, max_dim.unwrap_or_else(|| default_dim(p)))],
        None => DEFAULT_SCOPES.iter().map(|&(p, d)| (p, max_dim.unwrap_or(d))).collect(),
    };
    let (value, notes, ok) = suites(ctx, &names, &scopes)?;
    let mut out = Outcome::new(json!({ "passed": ok, "suites": value }), Value::Null);
    out.notes = notes;
    out.code = if ok { 0 } else { 1 };
    Ok(out)
}

fn reproduce(ctx: &Ctx, facts_only: bool) -> Result<Outcome, Fail> {
    let mut facts = Vec::new();
    let mut facts_ok = true;
    for (key, p) in catalog::fact_instances() {
        let e = catalog::entry(&key, p)?;
        for f in &e.expected_facts {
            let v = match catalog::check_fact(&e, f, ctx.budget) {
                Ok(o) => {
                    facts_ok &= o.passed;
                    json!({ "key": key, "p": p, "fact": f, "passed": o.passed, "detail": o.detail })
                }
                Err(err) => {
                    facts_ok = false;
                    json!({ "key": key, "p": p, "fact": f, "passed": false, "detail": err.to_string() })
                }
            };
            facts.push(v);
        }
    }
    let mut res = json!({ "facts_passed": facts_ok, "facts": facts });
    let mut notes = Vec::new();
    let mut ok = facts_ok;
    if !facts_only {
        let (value, n, suites_ok) = suites(ctx, SUITES, DEFAULT_SCOPES)?;
        res["suites_passed"] = json!(suites_ok);
        res["suites"] = value;
        notes = n;
        ok &= suites_ok;
    }
    let mut out = Outcome::new(res, Value::Null);
    out.notes = notes;
    out.code = if ok { 0 } else { 1 };
    Ok(out)
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> Result<Outcome, Fail> {
    match cmd {
        Command::Inspect { file } => inspect(ctx, file),
        Command::ChiefSeries { file } => chief_series(ctx, file),
        Command::Frattini { file } => frattini(ctx, file),
        Command::Projector { class, file } => projector_cmd(ctx, class, file),
        Command::Residual { class, file } => residual_cmd(ctx, class, file),
        Command::Cohomology { n, file } => cohomology_cmd(ctx, *n, file),
        Command::Envelope { file, output } => envelope_cmd(ctx, file, output.as_deref()),
        Command::Membership { class, file } => membership(ctx, class, file),
        Command::Catalog { action } => catalog_cmd(ctx, action),
        Command::CheckLaws { suite, p, max_dim } => check_laws(ctx, suite.as_deref(), *p, *max_dim),
        Command::ReproducePaper { facts_only } => reproduce(ctx, *facts_only),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let ctx = Ctx { budget: cli.budget, inputs: Inputs::default() };
    let (outcome, error) = match dispatch(&ctx, &cli.command) {
        Ok(o) => (o, None),
        Err(e) => {
            let o = Outcome { results: json!({ "error": e.message() }), code: e.code(), ..Default::default() };
            (o, Some(e.message()))
        }
    };
    let report = Report {
        command: args,
        inputs_digest: ctx.inputs.digest(),
        results: outcome.results,
        certificates: outcome.certificates,
        notes: outcome.notes,
        exit_code: outcome.code,
        timing_ms: start.elapsed().as_millis(),
    };
    let text = if cli.machine {
        serde_json::to_string_pretty(&report).expect("serializable")
    } else {
        outcome.raw.unwrap_or_else(|| report.human())
    };
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(std::io::stdout(), "{text}");
    if let (true, Some(m)) = (cli.machine, error) {
        eprintln!("error: {m}");
    }
    ExitCode::from(report.exit_code as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_kinds_map_to_exit_codes() {
        assert_eq!(Fail::Lib(Error::Capacity("x".into())).code(), 3);
        assert_eq!(Fail::Lib(Error::Inconsistency("x".into())).code(), 4);
        assert_eq!(Fail::Lib(Error::Certificate("x".into())).code(), 4);
        assert_eq!(Fail::Lib(Error::NotRestrictable).code(), 2);
        assert_eq!(Fail::Usage("x".into()).code(), 2);
    }
}
