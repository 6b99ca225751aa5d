use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context as _};
use bfh_core::catalog::Config;
use bfh_core::json::Object;
use bfh_core::registry::{self, Context, Params};
use bfh_core::verify::{self, Check, CheckResult};
use bfh_core::Error;
use clap::{Args, Parser, Subcommand};

/// Exact bordered and involutive Floer computations.
///
/// Exit status: 0 on success, 1 when a check or computation fails, 2 on
/// usage and I/O errors. BFH_JMAX overrides the truncation bound of the
/// minus-flavor pattern modules (default 64).
#[derive(Parser)]
#[command(name = "bfh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named computation, e.g. `compute mor-homology cfd-U cfd-J`.
    Compute(ComputeArgs),
    /// Run acceptance checks.
    Verify(VerifyArgs),
    /// Write a registered object as JSON (to stdout without a path).
    Export {
        /// Object name, e.g. `cfd-J` or `cfa-cable:3`.
        name: String,
        path: Option<PathBuf>,
        #[command(flatten)]
        objects: ObjectArgs,
    },
    /// Read a JSON object, validate it and print a summary.
    Import { path: PathBuf },
    /// List registered objects, computations and checks.
    List,
}

#[derive(Args)]
struct ObjectArgs {
    /// Replace a registered object by one read from JSON, as NAME=PATH.
    #[arg(long = "object", value_name = "NAME=PATH")]
    objects: Vec<String>,
}

#[derive(Args)]
struct ComputeArgs {
    /// Computation name; see `bfh list`.
    computation: String,
    /// Object names or other operands.
    operands: Vec<String>,
    /// Cable parameter.
    #[arg(long)]
    p: Option<usize>,
    /// Surgery coefficient.
    #[arg(long)]
    n: Option<usize>,
    /// 1 to add psi to the candidate map sum g1 + g2.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    eps1: u8,
    /// 1 to add h1 + h2 + h3 + h4 to the candidate map sum.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    eps2: u8,
    /// Also write the result as JSON to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(flatten)]
    objects: ObjectArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every check.
    #[arg(long, conflicts_with = "check")]
    all: bool,
    /// Check id to run; may be repeated.
    #[arg(long)]
    check: Vec<String>,
    /// Write the report as JSON to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Report wall time per check (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    objects: ObjectArgs,
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

fn usage(err: anyhow::Error) -> Failure {
    Failure { code: 2, err }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownName(_) | Error::InvalidParameter(_) | Error::Schema { .. } => 2,
            _ => 1,
        };
        Failure { code, err: e.into() }
    }
}

fn read_object(path: &Path) -> Result<Object, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(usage)?;
    Object::from_json(&text)
        .map_err(|e| usage(anyhow!(e).context(format!("importing {}", path.display()))))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(usage)
}

fn context(objects: &ObjectArgs) -> Result<Context, Failure> {
    let mut ctx = Context::new(Config::from_env()?);
    for pair in &objects.objects {
        let (name, path) = pair
            .split_once('=')
            .ok_or_else(|| usage(anyhow!("--object expects NAME=PATH, got `{pair}`")))?;
        ctx = ctx.with_override(name, read_object(Path::new(path))?);
    }
    Ok(ctx)
}

fn compute(a: ComputeArgs) -> Result<ExitCode, Failure> {
    let ctx = context(&a.objects)?;
    let comp = registry::computation(&a.computation)?;
    let params = Params {
        p: a.p,
        n: a.n,
        eps1: a.eps1 == 1,
        eps2: a.eps2 == 1,
    };
    let r = comp.run(&ctx, &a.operands, &params)?;
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    println!("{} [{}] = {}", r.invariant, params.join(" "), r.value);
    for l in &r.lines {
        println!("  {l}");
    }
    if let Some(w) = &r.witness {
        println!("  witness: {}", verify::format_terms(w.clone()));
    }
    if let Some(path) = &a.json {
        write_file(path, &serde_json::to_string_pretty(&r).expect("serializable"))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn print_result(r: &CheckResult, timings: bool) {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let basis = serde_json::to_value(r.basis).expect("serializable");
    let time = match r.millis.filter(|_| timings) {
        Some(ms) => format!(" ({ms} ms)"),
        None => String::new(),
    };
    println!("{status} {} [criterion {}, {}]{time}", r.id, r.criterion, basis.as_str().unwrap_or(""));
    if !r.passed() {
        println!("  expected: {}", r.expected);
        println!("  computed: {}", r.computed);
    }
}

fn run_verify(a: VerifyArgs) -> Result<ExitCode, Failure> {
    let ctx = context(&a.objects)?;
    let selected: Vec<Box<dyn Check>> = if a.all || a.check.is_empty() {
        verify::checks()
    } else {
        a.check.iter().map(|id| verify::check(id)).collect::<Result<_, _>>()?
    };
    let results = verify::run_checks(&selected, &ctx, a.timings);
    for r in &results {
        print_result(r, a.timings);
    }
    let passed = results.iter().all(CheckResult::passed);
    let failed = results.iter().filter(|r| !r.passed()).count();
    println!("{} checks, {failed} failed", results.len());
    if let Some(path) = &a.json {
        let report = serde_json::json!({ "passed": passed, "results": results });
        write_file(path, &serde_json::to_string_pretty(&report).expect("serializable"))?;
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn summary(o: &Object) -> String {
    match o {
        Object::Complex(c) => format!("complex over {} with {} generators", c.ring(), c.len()),
        Object::TypeD(d) => {
            let (i0, i1) = d.idempotent_census();
            format!("type-D structure with {} generators ({i0} in i0, {i1} in i1)", d.len())
        }
        Object::TypeA(m) => format!("type-A module with {} generators and {} operations", m.len(), m.ops().len()),
        Object::Morphism(f) => format!("morphism with {} entries", f.entries().count()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => run_verify(a),
        Command::Export { name, path, objects } => {
            let ctx = context(&objects)?;
            let text = ctx.object(&name)?.to_json();
            match path {
                Some(p) => write_file(&p, &text)?,
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Import { path } => {
            let o = read_object(&path)?;
            println!("{}", summary(&o));
            let problems = registry::validation_problems(&o);
            for p in &problems {
                println!("  {p}");
            }
            if problems.is_empty() {
                println!("valid");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("{} violations", problems.len());
                Ok(ExitCode::from(1))
            }
        }
        Command::List => {
            println!("objects:");
            for f in registry::object_factories() {
                let name = match f.arg() {
                    Some(a) => format!("{}:{a}", f.name()),
                    None => f.name().to_string(),
                };
                println!("  {name:<18} {}", f.summary());
            }
            println!("computations:");
            for c in registry::computations() {
                let usage = [c.name()].into_iter().chain(c.operands().iter().copied()).collect::<Vec<_>>();
                println!("  {:<30} {}", usage.join(" "), c.summary());
            }
            println!("checks:");
            for c in verify::checks() {
                println!("  {:<20} criterion {}: {}", c.id(), c.criterion(), c.summary());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
