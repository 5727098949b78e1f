//! The `golden` command line.
//!
//! Exit codes: 0 success or pass, 1 verification failure, 2 usage error,
//! 3 domain or resource error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use golden_core::identities::{all_pass, IDENTITY_NAMES};
use golden_core::{
    compare_series, eval_product_form, eval_weighted_log_series, expand_double_sum,
    expected_coefficients, series, ArithFnTable, Constant, IdentityId, Point, PrecisionContext,
    RationalPoint, SeriesSpec, VerificationReport, Weight,
};

use crate::dump;
use crate::report::{EvalJson, ReportJson, SidecarJson, SuiteJson, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "golden", version, about = "Golden-ratio totient and Möbius series identities")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a weighted logarithmic series or its product form
    Eval(EvalArgs),
    /// Check one identity
    Verify(VerifyArgs),
    /// Check every identity
    VerifyAll(VerifyAllArgs),
    /// Dump n, phi(n), mu(n)
    Sieve(SieveArgs),
    /// Dump exact coefficients of the double-sum expansion
    Coeffs(CoeffsArgs),
    /// Print named constants
    Constants(ConstantsArgs),
}

#[derive(Args, Debug)]
struct FormatArgs {
    /// Emit JSON
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit plain text (default)
    #[arg(long)]
    text: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WeightArg {
    Totient,
    Moebius,
}

impl From<WeightArg> for Weight {
    fn from(w: WeightArg) -> Self {
        match w {
            WeightArg::Totient => Weight::Totient,
            WeightArg::Moebius => Weight::Moebius,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Form {
    Sum,
    Product,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstantArg {
    Sqrt5,
    Golden,
    #[value(alias = "golden_inverse")]
    GoldenInverse,
    E,
}

impl From<ConstantArg> for Constant {
    fn from(c: ConstantArg) -> Self {
        match c {
            ConstantArg::Sqrt5 => Constant::Sqrt5,
            ConstantArg::Golden => Constant::Golden,
            ConstantArg::GoldenInverse => Constant::GoldenInverse,
            ConstantArg::E => Constant::E,
        }
    }
}

fn parse_digits(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(0) => Err("digits must be at least 1".into()),
        Ok(d) if d > 100_000 => Err("digits above 100000 are not supported".into()),
        Ok(d) => Ok(d),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_point(s: &str) -> Result<Point, String> {
    s.parse::<Point>().map_err(|e| e.to_string())
}

fn parse_rational_point(s: &str) -> Result<RationalPoint, String> {
    s.parse::<RationalPoint>().map_err(|e| e.to_string())
}

fn parse_identity(s: &str) -> Result<String, String> {
    if IDENTITY_NAMES.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!("expected one of: {}", IDENTITY_NAMES.join(", ")))
    }
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, value_enum, default_value = "totient")]
    weight: WeightArg,
    /// Evaluation point: decimal, p/q, or golden-inverse
    #[arg(long, default_value = "golden-inverse", value_parser = parse_point)]
    x: Point,
    #[arg(long, default_value_t = 50, value_parser = parse_digits)]
    digits: u32,
    #[arg(long, value_enum, default_value = "sum")]
    form: Form,
    #[arg(long, default_value_t = golden_core::fixed::DEFAULT_GUARD_DIGITS)]
    guard: u32,
    /// Write the JSON sidecar (terms_used, tail_bound) to this path
    #[arg(long)]
    sidecar: Option<PathBuf>,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_identity)]
    identity: String,
    #[arg(long, default_value_t = 50, value_parser = parse_digits)]
    digits: u32,
    /// Point p/q for lemma2_* and general_product_* identities
    #[arg(long, value_parser = parse_rational_point)]
    x: Option<RationalPoint>,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Args, Debug)]
struct VerifyAllArgs {
    #[arg(long, default_value_t = 50, value_parser = parse_digits)]
    digits: u32,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Args, Debug)]
struct SieveArgs {
    #[arg(long, default_value_t = 100)]
    limit: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CoeffsArgs {
    #[arg(long, value_enum, default_value = "totient")]
    weight: WeightArg,
    #[arg(long, default_value_t = golden_core::coeffs::DEFAULT_DEGREE)]
    degree: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConstantsArgs {
    /// Constant to print; all of them when omitted
    #[arg(long, value_enum)]
    name: Option<ConstantArg>,
    #[arg(long, default_value_t = 50, value_parser = parse_digits)]
    digits: u32,
}

enum Failure {
    Usage(String),
    Domain(String),
    Io(io::Error),
}

impl From<golden_core::Error> for Failure {
    fn from(e: golden_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Eval(a) => eval(a, out),
        Command::Verify(a) => verify(a, out),
        Command::VerifyAll(a) => verify_all(a, out),
        Command::Sieve(a) => sieve(a, out),
        Command::Coeffs(a) => coeffs(a, out, err),
        Command::Constants(a) => constants(a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn eval(a: EvalArgs, out: &mut dyn Write) -> Outcome {
    let ctx = PrecisionContext::with_guard(a.digits, a.guard)?;
    let weight = Weight::from(a.weight);
    let spec = SeriesSpec::at_point(weight, &a.x, ctx)?;
    let table = ArithFnTable::build(series::required_table_limit(&spec)?)?;
    let result = match a.form {
        Form::Sum => eval_weighted_log_series(&spec, &table)?,
        Form::Product => eval_product_form(&spec, &table)?,
    };
    let value = result.value.round_to(a.digits).to_string();
    if let Some(path) = &a.sidecar {
        let mut file = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(&mut file, &SidecarJson::from(&result))?;
        writeln!(file)?;
        file.flush()?;
    }
    if a.format.json {
        let doc = EvalJson {
            schema: SCHEMA_VERSION,
            weight: weight.name().to_string(),
            x: a.x.to_string(),
            form: match a.form {
                Form::Sum => "sum",
                Form::Product => "product",
            }
            .to_string(),
            digits: a.digits,
            value,
            terms_used: result.terms_used,
            tail_bound: result.tail_bound.to_string(),
            rounding_budget: result.rounding_budget.to_string(),
        };
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)?;
    } else {
        writeln!(out, "{value}")?;
    }
    Ok(EXIT_OK)
}

fn write_report_text(out: &mut dyn Write, r: &VerificationReport) -> io::Result<()> {
    let status = if r.pass { "PASS" } else { "FAIL" };
    write!(
        out,
        "{status} {} matched={} digits={} terms={} elapsed={:.3}s",
        r.identity,
        r.matched,
        r.digits_requested,
        r.terms_used,
        r.elapsed.as_secs_f64()
    )?;
    if let Some(reason) = &r.reason {
        write!(out, " reason=\"{reason}\"")?;
    }
    writeln!(out)
}

fn report_code(reports: &[VerificationReport]) -> i32 {
    if all_pass(reports) {
        EXIT_OK
    } else if reports.iter().any(|r| r.reason.is_some()) {
        EXIT_DOMAIN
    } else {
        EXIT_FAIL
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let id = IdentityId::parse(&a.identity, a.x)
        .map_err(|e| Failure::Usage(format!("{e} (pass --x p/q)")))?;
    let report = crate::verify::verify(id, a.digits);
    if a.format.json {
        serde_json::to_writer_pretty(&mut *out, &ReportJson::from(&report))?;
        writeln!(out)?;
    } else {
        write_report_text(out, &report)?;
        if report.reason.is_none() {
            writeln!(out, "lhs = {}", report.lhs)?;
            writeln!(out, "rhs = {}", report.rhs)?;
        }
    }
    Ok(report_code(std::slice::from_ref(&report)))
}

fn verify_all(a: VerifyAllArgs, out: &mut dyn Write) -> Outcome {
    let reports = crate::verify::verify_all(a.digits);
    if a.format.json {
        serde_json::to_writer_pretty(&mut *out, &SuiteJson::new(a.digits, &reports))?;
        writeln!(out)?;
    } else {
        for r in &reports {
            write_report_text(out, r)?;
        }
        let failed = reports.iter().filter(|r| !r.pass).count();
        if failed == 0 {
            writeln!(out, "all {} identities pass at {} digits", reports.len(), a.digits)?;
        } else {
            writeln!(out, "{failed} of {} identities failed", reports.len())?;
        }
    }
    Ok(report_code(&reports))
}

fn with_output(path: &Option<PathBuf>, out: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> io::Result<()> {
    match path {
        Some(p) => {
            let mut file = BufWriter::new(File::create(p)?);
            f(&mut file)?;
            file.flush()
        }
        None => f(out),
    }
}

fn sieve(a: SieveArgs, out: &mut dyn Write) -> Outcome {
    let table = ArithFnTable::build(a.limit)?;
    with_output(&a.out, out, |w| dump::write_sieve(w, &table))?;
    Ok(EXIT_OK)
}

fn coeffs(a: CoeffsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let weight = Weight::from(a.weight);
    let table = ArithFnTable::build(a.degree.max(1))?;
    let expanded = expand_double_sum(weight, a.degree, &table)?;
    let expected = expected_coefficients(weight, a.degree, &table)?;
    with_output(&a.out, out, |w| dump::write_coefficients(w, &expanded))?;
    let mismatches = compare_series(&expanded, &expected)?;
    if mismatches.is_empty() {
        Ok(EXIT_OK)
    } else {
        writeln!(err, "coefficient mismatch at degrees {mismatches:?}")?;
        Ok(EXIT_FAIL)
    }
}

fn constants(a: ConstantsArgs, out: &mut dyn Write) -> Outcome {
    let ctx = PrecisionContext::new(a.digits)?;
    match a.name {
        Some(name) => {
            let v = ctx.constant(name.into());
            writeln!(out, "{}", v.round_to(a.digits))?;
        }
        None => {
            for name in Constant::ALL {
                writeln!(out, "{}\t{}", name.name(), ctx.constant(name).round_to(a.digits))?;
            }
        }
    }
    Ok(EXIT_OK)
}
