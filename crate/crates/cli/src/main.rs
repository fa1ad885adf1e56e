mod report;
mod svg;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relpoly_core::bns::{exists_non_sigma, fg_kernel_certificate, membership, sigma_arcs};
use relpoly_core::check::{run_all, CheckConfig, Mutation};
use relpoly_core::pipeline::{compute, walk_hull, Ambient, PipelineError, PolytopeResult};
use relpoly_core::splitting::{hnn_splitting, splitting_complexity};
use relpoly_core::{Direction, GeneratorNames, GeometryError, Presentation};

use report::{JsonReport, SCHEMA_VERSION};

const EXIT_PARSE: u8 = 2;
const EXIT_CLASSIFICATION: u8 = 3;
const EXIT_INTERNAL: u8 = 4;
const EXIT_CHECK: u8 = 5;

/// Marked polytopes, BNS invariants and splitting complexity of
/// two-generator one-relator groups.
#[derive(Debug, Parser)]
#[command(name = "relpoly", version)]
struct Cli {
    /// Names of the two generators; lowercase is the generator, uppercase its inverse.
    #[arg(long, global = true, default_value = "xy")]
    gens: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the marked polytope of the relator.
    Polytope {
        relator: String,
        /// Emit the JSON report on standard output.
        #[arg(long)]
        json: bool,
        /// Render the walk, its hull and the marked polytope as SVG.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Decide membership in the BNS invariant, or list it as arcs.
    Bns {
        relator: String,
        #[command(flatten)]
        target: BnsTarget,
    },
    /// Splitting complexity for a character, optionally with an explicit HNN splitting.
    Split {
        relator: String,
        /// Primitive character as `a,b` (the values on the two generators).
        #[arg(long, value_name = "A,B")]
        phi: Phi,
        /// Include the HNN splitting realizing the complexity.
        #[arg(long)]
        witness: bool,
    },
    /// Run the randomized property suites.
    Check {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 24)]
        maxlen: usize,
        /// Inject a known bug to confirm the suites detect it.
        #[arg(long, value_enum)]
        mutant: Option<Mutant>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct BnsTarget {
    /// Primitive character as `a,b`.
    #[arg(long, value_name = "A,B")]
    phi: Option<Phi>,
    /// Report the whole invariant as open arcs of the circle.
    #[arg(long)]
    arcs: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mutant {
    MarkingOffByOne,
}

/// A raw `a,b` pair; primitivity is checked later so that it maps to the parse exit code.
#[derive(Debug, Clone, Copy)]
struct Phi(i64, i64);

impl FromStr for Phi {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}"));
        Ok(Phi(parse(a)?, parse(b)?))
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl ToString) -> Self {
        Failure { code: EXIT_PARSE, message: message.to_string() }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let code = match &e {
            PipelineError::Word(_) | PipelineError::Geometry(GeometryError::NotPrimitive(..)) => EXIT_PARSE,
            PipelineError::EmptyRelator
            | PipelineError::NotNice(_)
            | PipelineError::NotSimple(_)
            | PipelineError::NotEpimorphism(..)
            | PipelineError::CharacterMismatch(..)
            | PipelineError::BaumslagSolitarExcluded(_)
            | PipelineError::PowerOfGenerator => EXIT_CLASSIFICATION,
            PipelineError::RouteMismatch { .. } | PipelineError::RankMismatch { .. } | PipelineError::Geometry(_) => {
                EXIT_INTERNAL
            }
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Polytope { relator, json, svg } => {
            let pi = presentation(&relator, &cli.gens)?;
            let result = compute(&pi)?;
            if let Some(path) = svg {
                let hull = walk_hull(&pi)?;
                let doc = svg::render(&pi, &hull, &result);
                std::fs::write(&path, doc)
                    .map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) })?;
            }
            if json {
                emit(&base_report(&pi, &result))
            } else {
                print_text(&pi, &result);
                Ok(())
            }
        }
        Command::Bns { relator, target } => {
            let pi = presentation(&relator, &cli.gens)?;
            let query = target.phi.map(direction).transpose()?;
            let result = compute(&pi)?;
            let sigma = sigma_arcs(&pi)?;
            let query = query.map(|phi| membership(&pi, phi).map(|m| (phi, m))).transpose()?;
            let cert = fg_kernel_certificate(&pi)?;
            let outside = exists_non_sigma(&pi)?;
            let mut out = base_report(&pi, &result);
            out.sigma = Some(report::sigma(&sigma, cert, outside, query));
            emit(&out)
        }
        Command::Split { relator, phi, witness } => {
            let pi = presentation(&relator, &cli.gens)?;
            let phi = direction(phi)?;
            let result = compute(&pi)?;
            let complexity = splitting_complexity(&pi, phi)?;
            let data = witness.then(|| hnn_splitting(&pi, phi)).transpose()?;
            let mut out = base_report(&pi, &result);
            out.splitting = Some(report::splitting(&pi, phi, &complexity, data.as_ref()));
            emit(&out)
        }
        Command::Check { count, seed, maxlen, mutant } => {
            let config = CheckConfig {
                count,
                seed,
                maxlen,
                mutation: mutant.map(|Mutant::MarkingOffByOne| Mutation::MarkingOffByOne),
            };
            let outcome = run_all(&config);
            for o in &outcome.outcomes {
                let status = if o.passed() { "ok" } else { "FAILED" };
                println!("{:<22} {:>6} cases  {status}", o.suite.name(), o.cases);
            }
            if outcome.passed() {
                println!("all suites passed");
                return Ok(());
            }
            for o in outcome.outcomes.iter().filter(|o| !o.passed()) {
                println!("{}: {} of {} cases failed", o.suite.name(), o.failures, o.cases);
                if let Some(c) = &o.counterexample {
                    println!("  counterexample: {}", c.word);
                    println!("  reason: {}", c.message);
                }
            }
            Err(Failure { code: EXIT_CHECK, message: "property suites failed".into() })
        }
    }
}

fn presentation(relator: &str, gens: &str) -> Result<Presentation, Failure> {
    let names = GeneratorNames::parse(gens).map_err(Failure::parse)?;
    Presentation::parse(relator, names).map_err(Failure::from)
}

fn direction(phi: Phi) -> Result<Direction, Failure> {
    Direction::new(phi.0, phi.1).map_err(Failure::parse)
}

fn base_report(pi: &Presentation, result: &PolytopeResult) -> JsonReport {
    JsonReport {
        schema_version: SCHEMA_VERSION,
        presentation: report::presentation(pi, result),
        polytope: report::polytope(result),
        sigma: None,
        splitting: None,
    }
}

fn emit(report: &JsonReport) -> Result<(), Failure> {
    let text =
        serde_json::to_string_pretty(report).map_err(|e| Failure { code: EXIT_INTERNAL, message: e.to_string() })?;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(Failure { code: EXIT_INTERNAL, message: e.to_string() })
        }
        _ => Ok(()),
    }
}

fn print_text(pi: &Presentation, result: &PolytopeResult) {
    let info = &result.info;
    println!("relator:        {}", pi.relator().format(pi.names()));
    println!("classification: {}", info.classification);
    println!("b1:             {}", info.b1);
    if info.power > 1 {
        println!("proper power:   ({})^{}", info.root.format(pi.names()), info.power);
    }
    match result.ambient {
        Ambient::Plane => println!("ambient:        plane"),
        Ambient::Line { character } => println!("ambient:        line, character {character}"),
    }
    println!("vertices:");
    for v in result.polytope.vertices() {
        let mark = if v.marked { "marked" } else { "unmarked" };
        match result.ambient {
            Ambient::Plane => println!("  ({}, {})  {mark}", v.point.x, v.point.y),
            Ambient::Line { .. } => println!("  {}  {mark}", v.point.x),
        }
    }
}
