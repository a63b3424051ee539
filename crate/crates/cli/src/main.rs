//! `exckit`: exact invariants of exceptional sets from the command line.
//!
//! Exit status: 0 on success or when every checked inequality/identity holds,
//! 1 on a mathematical failure, 2 on usage errors or violated hypotheses.

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use exckit_core::admissibility::{
    check_filtration, check_split, enumerate_admissible, theorem_sum, EnumerationRequest, Filter,
    System,
};
use exckit_core::char_poly::{top_term_polynomial_i, top_term_polynomial_j};
use exckit_core::combinatorics::factorial;
use exckit_core::lattice_enum::DoublingPattern;
use exckit_core::singularity::hilbert_profile;
use exckit_core::verify::{run_suite, Ranges, Suite};
use exckit_core::{Error, ExactRat, Geometry};
use num_traits::Zero;

const DEGREE_HELP: &str = "Comma-separated conormal degrees a1,...,a_{n-p}; \
the normal bundle is then the sum of O(-a_i)";

#[derive(Parser, Debug)]
#[command(
    name = "exckit",
    version,
    about = "Exact invariants of exceptional sets with filtered conormal bundles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the inequality system for one degree vector
    Check(CheckArgs),
    /// List admissible degree vectors in a box
    Enumerate(EnumerateArgs),
    /// Hilbert function and embedding dimension of the contracted point
    Hilbert(HilbertArgs),
    /// Leading coefficient of the top Chern-character polynomial in r
    LeadingCoeff(LeadingArgs),
    /// Run the identity verification suites
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    /// enumerate only
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SystemArg {
    Filtration,
    Split,
}

impl From<SystemArg> for System {
    fn from(s: SystemArg) -> Self {
        match s {
            SystemArg::Filtration => System::Filtration,
            SystemArg::Split => System::Split,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    Crepant,
    Nonnegative,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::Crepant => Filter::Crepant,
            FilterArg::Nonnegative => Filter::Nonnegative,
        }
    }
}

/// A comma-separated degree vector, parsed as one argument value.
#[derive(Clone, Debug)]
struct Degrees(Vec<i64>);

fn parse_degrees(s: &str) -> Result<Degrees, String> {
    let parts: Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    match parts {
        Ok(v) if !v.is_empty() => Ok(Degrees(v)),
        _ => Err(format!("expected comma-separated integers, got {s:?}")),
    }
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Dimension of the exceptional set
    #[arg(long)]
    p: usize,
    #[arg(long, help = DEGREE_HELP, value_parser = parse_degrees, allow_hyphen_values = true)]
    a: Degrees,
    /// Codimension n - p; must equal the length of --a when given
    #[arg(long)]
    codim: Option<usize>,
    #[arg(long, value_enum, default_value_t = SystemArg::Filtration)]
    system: SystemArg,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long, default_value_t = 1)]
    p: u32,
    #[arg(long, default_value_t = 2)]
    codim: usize,
    /// Search box is [-bound, bound]^codim
    #[arg(long)]
    bound: i64,
    #[arg(long, value_enum, default_value_t = SystemArg::Split)]
    system: SystemArg,
    #[arg(long, value_enum, value_delimiter = ',')]
    filter: Vec<FilterArg>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct HilbertArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, help = DEGREE_HELP, value_parser = parse_degrees, allow_hyphen_values = true)]
    a: Degrees,
    /// Largest r for which h(r) is printed
    #[arg(long, default_value_t = 4)]
    rmax: u32,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct LeadingArgs {
    #[arg(long)]
    p: usize,
    #[arg(long, help = DEGREE_HELP, value_parser = parse_degrees, allow_hyphen_values = true)]
    a: Degrees,
    /// Filtration cut 1..n-p-1; omit for the I-adic polynomial
    #[arg(long)]
    h: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name, `all`, or `none`
    #[arg(long, default_value = "all")]
    suite: String,
    /// Degree bound for the finite-difference and comb-lemma suites
    #[arg(long)]
    kmax: Option<u32>,
    #[command(flatten)]
    output: Output,
}

/// Failure that maps onto an exit code.
enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Math(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn emit(output: &Output, text: String) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn reject_csv(output: &Output) -> Result<(), Failure> {
    if output.format == Format::Csv {
        return Err(Failure::Usage(
            "csv output is only available for enumerate".into(),
        ));
    }
    Ok(())
}

fn json_text(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
}

fn cmd_check(args: CheckArgs) -> Outcome {
    reject_csv(&args.output)?;
    if let Some(codim) = args.codim {
        if codim != args.a.0.len() {
            return Err(Failure::Usage(format!(
                "--codim {codim} does not match {} degrees",
                args.a.0.len()
            )));
        }
    }
    let g = Geometry::from_degrees(args.p, args.a.0.clone())?;
    let (name, report) = match args.system {
        SystemArg::Filtration => ("filtration", check_filtration(&g)),
        SystemArg::Split => ("split", check_split(&g)?),
    };
    let text = match args.output.format {
        Format::Json => json_text(render::check_json(name, args.p, &args.a.0, &report)),
        _ => render::check_human(name, args.p, &args.a.0, &report),
    };
    emit(&args.output, text)?;
    Ok(report.overall())
}

fn cmd_enumerate(args: EnumerateArgs) -> Outcome {
    let req = EnumerationRequest {
        p: args.p,
        codim: args.codim,
        bound: args.bound,
        system: args.system.into(),
        filters: args.filter.iter().map(|&f| f.into()).collect(),
    };
    let cat = enumerate_admissible(&req)?;
    let text = match args.output.format {
        Format::Json => json_text(render::catalog_json(&cat)),
        Format::Csv => render::catalog_csv(&cat),
        Format::Human => render::catalog_human(&cat),
    };
    emit(&args.output, text)?;
    Ok(true)
}

fn cmd_hilbert(args: HilbertArgs) -> Outcome {
    reject_csv(&args.output)?;
    let prof = hilbert_profile(&args.a.0, args.p, args.rmax)?;
    let text = match args.output.format {
        Format::Json => json_text(render::hilbert_json(&prof)),
        _ => render::hilbert_human(&prof),
    };
    emit(&args.output, text)?;
    Ok(true)
}

fn cmd_leading(args: LeadingArgs) -> Outcome {
    reject_csv(&args.output)?;
    let g = Geometry::from_degrees(args.p, args.a.0.clone())?;
    let (poly, pattern) = match args.h {
        Some(h) => (top_term_polynomial_j(&g, h)?, DoublingPattern::Prefix(h)),
        None => (top_term_polynomial_i(&g)?, DoublingPattern::Prefix(0)),
    };
    let coefficient = poly.coeff(g.n());
    let scaled = &coefficient * ExactRat::from_integer(factorial(g.n() as u64));
    let sum = theorem_sum(g.degrees(), pattern, g.p() as u32)?;
    let ratio = (!sum.is_zero()).then(|| &coefficient / ExactRat::from_integer(sum.clone()));
    let view = render::LeadingCoeffView {
        p: args.p,
        a: &args.a.0,
        h: args.h,
        coefficient: &coefficient,
        scaled: &scaled,
        theorem_sum: &sum,
        ratio: ratio.as_ref(),
        polynomial: poly.coeffs(),
    };
    let text = match args.output.format {
        Format::Json => json_text(render::leading_json(&view)),
        _ => render::leading_human(&view),
    };
    emit(&args.output, text)?;
    Ok(true)
}

fn cmd_verify(args: VerifyArgs) -> Outcome {
    reject_csv(&args.output)?;
    let suites: Vec<Suite> = match args.suite.as_str() {
        "all" => Suite::ALL.to_vec(),
        "none" => Vec::new(),
        name => vec![name.parse()?],
    };
    let ranges = Ranges { kmax: args.kmax };
    let reports = suites
        .into_iter()
        .map(|s| run_suite(s, ranges))
        .collect::<Result<Vec<_>, _>>()?;
    let text = match args.output.format {
        Format::Json => json_text(render::verify_json(&reports)),
        _ => render::verify_human(&reports),
    };
    emit(&args.output, text)?;
    Ok(reports.iter().all(|r| r.passed()))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("EXCKIT_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Failure::Usage(format!(
            "EXCKIT_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot configure thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| match cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Hilbert(a) => cmd_hilbert(a),
        Command::LeadingCoeff(a) => cmd_leading(a),
        Command::Verify(a) => cmd_verify(a),
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Math(msg)) => {
            eprintln!("exckit: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("exckit: {msg}");
            ExitCode::from(2)
        }
    }
}
