use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use lerchfrac::harness::report::{write_report, ReportHeader, Status, Summary};
use lerchfrac::harness::sweep::{run_sweep, write_table, RowStatus, SweepSpec, TableFormat};
use lerchfrac::harness::verify::{run_suite, Suite};
use lerchfrac::literal::{format_complex, parse_complex};
use lerchfrac::{Error, EvalSettings, EvaluationPoint, Method};

/// Exit status for inputs outside an operation's domain.
const EXIT_DOMAIN: u8 = 2;
/// Exit status for numerical failures such as an unmet tolerance.
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(name = "lerchfrac", version, about = "Lerch zeta values through fractional differintegrals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate L(t, x, s) at one point.
    Eval(EvalArgs),
    /// Run an identity-verification suite and write a json-lines report.
    Verify(VerifyArgs),
    /// Evaluate a grid described by a TOML sweep spec.
    Table(TableArgs),
}

#[derive(Args)]
struct Tolerances {
    /// Relative quadrature tolerance.
    #[arg(long, env = "LERCHFRAC_REL_TOL")]
    rel_tol: Option<f64>,
    /// Absolute quadrature tolerance.
    #[arg(long)]
    abs_tol: Option<f64>,
    /// Relative tolerance for series tails.
    #[arg(long)]
    series_tol: Option<f64>,
}

impl Tolerances {
    fn settings(&self) -> Result<EvalSettings, Error> {
        let mut out = EvalSettings::default();
        if let Some(v) = self.rel_tol {
            out.quadrature.rel_tol = v;
        }
        if let Some(v) = self.abs_tol {
            out.quadrature.abs_tol = v;
        }
        if let Some(v) = self.series_tol {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("series tolerance must be positive, got {v}")));
            }
            out.series_tol = v;
        }
        out.quadrature.validate()?;
        Ok(out)
    }
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_parser = parse_method)]
    method: Method,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    t: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    #[command(flatten)]
    tolerances: Tolerances,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, default_value_t = 7)]
    grid_seed: u64,
    /// Report path; the report goes to stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    tolerances: Tolerances,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    #[value(alias = "jsonl")]
    JsonLines,
}

#[derive(Args)]
struct TableArgs {
    spec: PathBuf,
    /// Table path; the table goes to stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    #[command(flatten)]
    tolerances: Tolerances,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure carrying the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_domain() { EXIT_DOMAIN } else { EXIT_NUMERIC };
        Failure { code, message: e.to_string() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure { code: 1, message: format!("{e:#}") }
    }
}

fn open_output(path: Option<&PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn eval(args: EvalArgs) -> Result<u8, Failure> {
    let settings = args.tolerances.settings()?;
    let p = EvaluationPoint::new(parse_complex(&args.t)?, parse_complex(&args.x)?, parse_complex(&args.s)?);
    let est = args.method.evaluate(&p, &settings)?;
    println!("{}", format_complex(est.value));
    println!("error {:.3e}", est.error);
    Ok(0)
}

fn verify(args: VerifyArgs) -> Result<u8, Failure> {
    let settings = args.tolerances.settings()?;
    let records = run_suite(args.suite, args.grid_seed, &settings);
    let header = ReportHeader {
        suite: args.suite.name().to_string(),
        grid_seed: args.grid_seed,
        records: records.len(),
    };
    let out = open_output(args.output.as_ref())?;
    write_report(out, &header, &records).context("cannot write report")?;
    for r in records.iter().filter(|r| r.status == Status::Fail) {
        eprintln!(
            "fail {} {} vs {} at t={} x={} s={}: {}",
            r.suite,
            r.method_a,
            r.method_b,
            format_complex(r.point.t),
            format_complex(r.point.x),
            format_complex(r.point.s),
            r.note.as_deref().unwrap_or("residual above tolerance"),
        );
    }
    let summary = Summary::of(&records);
    // Keep stdout clean for the report when it is written there.
    if args.output.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(if summary.fail > 0 { 1 } else { 0 })
}

fn table(args: TableArgs) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(&args.spec)
        .with_context(|| format!("cannot read {}", args.spec.display()))?;
    let spec = SweepSpec::from_toml(&text)?;
    let rows = run_sweep(&spec, &args.tolerances.settings()?)?;
    let format = match args.format {
        FormatArg::Csv => TableFormat::Csv,
        FormatArg::JsonLines => TableFormat::JsonLines,
    };
    let out = open_output(args.output.as_ref())?;
    write_table(out, &rows, format).context("cannot write table")?;
    let count = |s: RowStatus| rows.iter().filter(|r| r.status == s).count();
    let failed = count(RowStatus::Failed);
    eprintln!("rows {} ok {} skipped {} failed {failed}", rows.len(), count(RowStatus::Ok), count(RowStatus::Skipped));
    Ok(if failed > 0 { EXIT_NUMERIC } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => eval(a),
        Command::Verify(a) => verify(a),
        Command::Table(a) => table(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("lerchfrac: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
