//! Command-line surface.
//!
//! Exit codes: 0 success, 1 usage error, 2 degenerate or invalid arc,
//! 3 verification failure, 4 a theorem violation was encountered.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::arc::PolyArc;
use crate::error::Error;
use crate::finder::{
    direction_clusters, find_all, find_by_proof_trace, is_unique, verify_certificate,
    LambdaConfig, DEFAULT_ANGLE_TOL,
};
use crate::gen::{gen_named, ArcKind, GenSpec};
use crate::geom::DEFAULT_EPS_REL;
use crate::report::{
    to_json, ArcFile, ArcSummary, FailureKind, FuzzFailure, FuzzSummary, RunReport, VerifyEntry,
    VerifyReport,
};
use crate::svg::render_svg;

pub const EPS_ENV: &str = "LAMBDA_EPS_REL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_ARC: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;
pub const EXIT_THEOREM_VIOLATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "lambda-arc", version, about = "Λ-configurations of polygonal arcs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a named fixture or a seeded random arc as arc JSON.
    Gen(GenArgs),
    /// Find every Λ-configuration of an arc.
    Find(FindArgs),
    /// Replay the rotating-support-line sweep and report its trace.
    Trace(FindArgs),
    /// Check configurations against an arc.
    Verify(VerifyArgs),
    /// Run the existence and uniqueness suites over a seeded corpus.
    Fuzz(FuzzArgs),
    /// Draw an arc, its hull and optionally a configuration as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Simple,
    Free,
}

impl From<KindArg> for ArcKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Simple => ArcKind::Simple,
            KindArg::Free => ArcKind::Free,
        }
    }
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, conflicts_with_all = ["seed", "n", "kind"])]
    name: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ArcInput {
    #[arg(long)]
    arc: PathBuf,
    /// Relative tolerance; defaults to $LAMBDA_EPS_REL or 1e-9.
    #[arg(long)]
    eps_rel: Option<f64>,
}

#[derive(Debug, Args)]
struct FindArgs {
    #[command(flatten)]
    input: ArcInput,
    /// Include wall-clock timing (makes output run-dependent).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: ArcInput,
    /// A configuration, or a report whose configurations are all checked.
    #[arg(long)]
    config: PathBuf,
}

#[derive(Debug, Args)]
struct FuzzArgs {
    #[arg(long)]
    count: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    simple_only: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[command(flatten)]
    input: ArcInput,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
    /// Output was produced, but it reports failures.
    Reported(i32),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::MalformedArc(_)
        | Error::DegenerateThickness { .. }
        | Error::ParamOutOfRange { .. }
        | Error::EmptyInput
        | Error::GenerationFailed { .. } => EXIT_INVALID_ARC,
        Error::TheoremViolation(_) => EXIT_THEOREM_VIOLATION,
        Error::UnknownFixture { .. } | Error::InvalidGenSpec(_) => EXIT_USAGE,
    }
}

/// Runs the command line with explicit output streams and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Find(a) => cmd_find(a, out, false),
        Command::Trace(a) => cmd_find(a, out, true),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Fuzz(a) => cmd_fuzz(a, out),
        Command::Render(a) => cmd_render(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Reported(code)) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(format!("cannot write output: {e}"))),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("malformed JSON in {}: {e}", path.display())))
}

fn resolve_eps(flag: Option<f64>) -> Result<f64, Failure> {
    if let Some(eps) = flag {
        return Ok(eps);
    }
    match std::env::var(EPS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{EPS_ENV}={v} is not a number"))),
        Err(_) => Ok(DEFAULT_EPS_REL),
    }
}

fn load_arc(input: &ArcInput) -> Result<(PolyArc, Option<String>), Failure> {
    let eps_rel = resolve_eps(input.eps_rel)?;
    let file: ArcFile = read_json(&input.arc)?;
    let arc = PolyArc::new(file.vertices, eps_rel)?;
    Ok((arc, file.name))
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let (arc, name) = match (&a.name, a.seed, a.n, a.kind) {
        (Some(name), ..) => (gen_named(name)?, Some(name.clone())),
        (None, Some(seed), Some(n), Some(kind)) => {
            let spec = GenSpec {
                seed,
                n,
                kind: kind.into(),
                scale: a.scale,
            };
            (spec.generate()?, None)
        }
        _ => {
            return Err(Failure::Usage(
                "gen needs --name NAME or all of --seed, --n, --kind".into(),
            ))
        }
    };
    emit(&to_json(&ArcFile::from_arc(&arc, name)), a.out.as_deref(), out)
}

fn cmd_find(a: FindArgs, out: &mut dyn Write, with_trace: bool) -> Result<(), Failure> {
    let (arc, name) = load_arc(&a.input)?;
    let started = Instant::now();
    let configs = find_all(&arc)?;
    let clusters = direction_clusters(&configs, DEFAULT_ANGLE_TOL);
    let trace = if with_trace {
        Some(find_by_proof_trace(&arc)?.1)
    } else {
        None
    };
    let elapsed = started.elapsed().as_secs_f64() * 1e3;
    let report = RunReport {
        arc: ArcSummary::of(&arc, name),
        unique: Some(is_unique(&clusters)),
        clusters: Some(clusters),
        configs,
        trace,
        timing_ms: a.timing.then_some(elapsed),
    };
    emit(&to_json(&report), a.out.as_deref(), out)
}

fn load_configs(path: &Path) -> Result<Vec<LambdaConfig>, Failure> {
    let value: serde_json::Value = read_json(path)?;
    let parsed = if value.get("configs").is_some() {
        serde_json::from_value::<RunReport>(value).map(|r| r.configs)
    } else {
        serde_json::from_value::<LambdaConfig>(value).map(|c| vec![c])
    };
    parsed.map_err(|e| Failure::Usage(format!("{} is not a configuration: {e}", path.display())))
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let (arc, _) = load_arc(&a.input)?;
    arc.ensure_thick()?;
    let configs = load_configs(&a.config)?;
    let results: Vec<VerifyEntry> = configs
        .iter()
        .enumerate()
        .map(|(index, cfg)| VerifyEntry {
            index,
            certificate: verify_certificate(&arc, cfg),
        })
        .collect();
    let report = VerifyReport {
        passed: !results.is_empty() && results.iter().all(|r| r.certificate.passed),
        results,
    };
    emit(&to_json(&report), None, out)?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Reported(EXIT_VERIFY_FAILED))
    }
}

struct ArcOutcome {
    simple: bool,
    configs: usize,
    failures: Vec<FuzzFailure>,
}

fn fuzz_one(spec: GenSpec) -> ArcOutcome {
    let mut failures = Vec::new();
    let mut fail = |kind, detail: String| failures.push(FuzzFailure { spec, kind, detail });
    let arc = match spec.generate() {
        Ok(arc) => arc,
        Err(e) => {
            fail(FailureKind::Generation, e.to_string());
            return ArcOutcome { simple: false, configs: 0, failures };
        }
    };
    let simple = arc.is_simple();
    let configs = match find_all(&arc) {
        Ok(c) => c,
        Err(e @ Error::TheoremViolation(_)) => {
            fail(FailureKind::TheoremViolation, e.to_string());
            Vec::new()
        }
        Err(e) => {
            fail(FailureKind::Existence, e.to_string());
            Vec::new()
        }
    };
    for (i, cfg) in configs.iter().enumerate() {
        let cert = verify_certificate(&arc, cfg);
        if !cert.passed {
            fail(FailureKind::Certificate, format!("config {i}: {}", cert.diagnostics.join("; ")));
        }
    }
    let clusters = direction_clusters(&configs, DEFAULT_ANGLE_TOL);
    if simple && !configs.is_empty() && !is_unique(&clusters) {
        fail(
            FailureKind::Uniqueness,
            format!("{} direction clusters on a simple arc", clusters.len()),
        );
    }
    match find_by_proof_trace(&arc) {
        Ok((cfg, trace)) => {
            let matched = configs
                .iter()
                .any(|c| c.theta.dist_mod_pi(cfg.theta) <= DEFAULT_ANGLE_TOL);
            if !matched {
                fail(FailureKind::Trace, format!("trace direction {} matches no config", cfg.theta));
            }
            if trace.rotation > std::f64::consts::PI + 1e-9 {
                fail(FailureKind::Trace, format!("trace rotated by {}", trace.rotation));
            }
        }
        Err(e @ Error::TheoremViolation(_)) => fail(FailureKind::TheoremViolation, e.to_string()),
        Err(e) => fail(FailureKind::Trace, e.to_string()),
    }
    ArcOutcome {
        simple,
        configs: configs.len(),
        failures,
    }
}

/// Runs the fuzz suites over `GenSpec::corpus(seed, count, simple_only)`.
pub fn fuzz(seed: u64, count: usize, simple_only: bool) -> FuzzSummary {
    let outcomes: Vec<ArcOutcome> = GenSpec::corpus(seed, count, simple_only)
        .into_par_iter()
        .map(fuzz_one)
        .collect();
    let failures: Vec<FuzzFailure> = outcomes.iter().flat_map(|o| o.failures.clone()).collect();
    let count_kind = |k: FailureKind| failures.iter().filter(|f| f.kind == k).count();
    let simple_arcs = outcomes.iter().filter(|o| o.simple).count();
    FuzzSummary {
        seed,
        simple_only,
        arcs: outcomes.len(),
        simple_arcs,
        non_simple_arcs: outcomes.len() - simple_arcs,
        configs: outcomes.iter().map(|o| o.configs).sum(),
        existence_failures: count_kind(FailureKind::Existence),
        certificate_failures: count_kind(FailureKind::Certificate),
        uniqueness_failures: count_kind(FailureKind::Uniqueness),
        trace_failures: count_kind(FailureKind::Trace),
        theorem_violations: count_kind(FailureKind::TheoremViolation),
        generation_failures: count_kind(FailureKind::Generation),
        failures,
    }
}

fn cmd_fuzz(a: FuzzArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let summary = fuzz(a.seed, a.count, a.simple_only);
    emit(&to_json(&summary), a.out.as_deref(), out)?;
    if summary.theorem_violations > 0 {
        Err(Failure::Reported(EXIT_THEOREM_VIOLATION))
    } else if summary.failure_count() > 0 {
        Err(Failure::Reported(EXIT_VERIFY_FAILED))
    } else {
        Ok(())
    }
}

fn cmd_render(a: RenderArgs) -> Result<(), Failure> {
    let (arc, _) = load_arc(&a.input)?;
    let config = match &a.config {
        Some(path) => Some(
            load_configs(path)?
                .into_iter()
                .next()
                .ok_or_else(|| Failure::Usage(format!("{} has no configurations", path.display())))?,
        ),
        None => None,
    };
    let svg = render_svg(&arc, config.as_ref());
    fs::write(&a.out, svg)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", a.out.display())))
}
