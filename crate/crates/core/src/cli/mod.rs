//! Command-line front end.
//!
//! ```text
//! mvtcheck verify --f EXPR --a EXPR --b EXPR [--mode mvt|rolle] [--eps REAL]
//!                 [--samples N] [--json] [--plot PATH]
//! mvtcheck diff --f EXPR
//! mvtcheck eval --f EXPR --x EXPR
//! ```
//!
//! Exit codes: 0 success or theorem applies, 2 theorem does not apply or
//! could not be decided, 1 usage, lexing, parsing or other operational error.

mod json;
mod plot;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::calculus::{differentiate, simplify};
use crate::expr::{parse, Expr, ParseError};
use crate::numeric::Interval;
use crate::theorem::{finite_difference_slope, verify_mvt, verify_rolle, Config, MvtResult};

pub use json::{format_significant, render_json};
pub use plot::{
    emit_plot, plot_series, render_csv, render_svg, PlotError, PlotFormat, PlotSeries, SeriesName,
    DEFAULT_PLOT_POINTS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_APPLICABLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mvtcheck",
    version,
    about = "Verify Rolle's Theorem and the Mean Value Theorem numerically"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the preconditions and locate c with f'(c) equal to the secant slope
    Verify(VerifyArgs),
    /// Print the simplified symbolic derivative of f
    Diff {
        /// Function of x
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Evaluate f at a point
    Eval {
        /// Function of x
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Constant expression for the point
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    /// Function of x, e.g. "x^2 - 4*x + 3"
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    /// Left endpoint (constant expression, e.g. "-pi")
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Right endpoint (constant expression, e.g. "pi/2")
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    /// Theorem to check; rolle also requires f(a) = f(b)
    #[arg(long, value_enum, default_value_t = Mode::Mvt)]
    mode: Mode,
    /// Bisection precision on the bracket width
    #[arg(long)]
    eps: Option<f64>,
    /// Sample count for smoothness analysis and bracketing
    #[arg(long)]
    samples: Option<usize>,
    /// Print a single-line JSON object instead of the text report
    #[arg(long)]
    json: bool,
    /// Write plot data to a .csv or .svg file
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Mvt,
    Rolle,
}

impl Mode {
    fn theorem(self) -> &'static str {
        match self {
            Mode::Mvt => "The Mean Value Theorem",
            Mode::Rolle => "Rolle's Theorem",
        }
    }
}

/// Runs the CLI against the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI with explicit output streams. `args` includes the program
/// name.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_ERROR
                }
            };
        }
    };

    let result = match cli.command {
        Command::Verify(args) => verify(args, out),
        Command::Diff { f } => parse_flag("--f", &f).map(|f| {
            let _ = writeln!(out, "{}", simplify(&differentiate(&f)));
            EXIT_OK
        }),
        Command::Eval { f, x } => eval(&f, &x, out),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_ERROR
        }
    }
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Result<i32, String> {
    let f = parse_flag("--f", &args.f)?;
    let a = constant_flag("--a", &args.a)?;
    let b = constant_flag("--b", &args.b)?;
    let iv = Interval::new(a, b).map_err(|e| e.to_string())?;

    let mut cfg = Config::default();
    if let Some(eps) = args.eps {
        cfg.eps_c = eps;
    }
    if let Some(samples) = args.samples {
        cfg.samples = samples;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    if let Some(path) = &args.plot {
        PlotFormat::from_path(path).map_err(|e| e.to_string())?;
    }

    let result = match args.mode {
        Mode::Mvt => verify_mvt(&f, iv, &cfg),
        Mode::Rolle => verify_rolle(&f, iv, &cfg),
    };

    if args.json {
        let _ = writeln!(out, "{}", render_json(&result));
    } else {
        write_report(out, args.mode, &f, iv, &cfg, &result);
    }

    if let Some(path) = &args.plot {
        emit_plot(&f, iv, &result, path, DEFAULT_PLOT_POINTS).map_err(|e| e.to_string())?;
        if !args.json {
            let _ = writeln!(out, "plot written to {}", path.display());
        }
    }

    Ok(if result.is_applicable() {
        EXIT_OK
    } else {
        EXIT_NOT_APPLICABLE
    })
}

fn write_report(
    out: &mut dyn Write,
    mode: Mode,
    f: &Expr,
    iv: Interval,
    cfg: &Config,
    result: &MvtResult,
) {
    let theorem = mode.theorem();
    let _ = writeln!(out, "f(x) = {f}");
    let _ = writeln!(out, "interval: [{}, {}]", iv.a(), iv.b());
    match result {
        MvtResult::Applicable(p) => {
            let _ = writeln!(out, "{theorem} applies.");
            let _ = writeln!(out, "f'(x) = {}", differentiate(f));
            let _ = writeln!(out, "m = {}", p.m);
            let _ = writeln!(out, "c = {}", p.c);
            let _ = writeln!(out, "f'(c) = {}", p.f_prime_at_c);
            let _ = writeln!(out, "residual = {}", format_significant(p.residual, 3));
            let _ = writeln!(
                out,
                "method = {} ({} iteration{})",
                p.method.as_str(),
                p.iterations,
                if p.iterations == 1 { "" } else { "s" }
            );
            if let Ok(fd) = finite_difference_slope(f, p.c, cfg) {
                let _ = writeln!(out, "central difference f'(c) = {fd}");
            }
        }
        MvtResult::NotApplicable { reason, witness } => {
            let _ = match witness {
                Some(w) => writeln!(out, "{theorem} does not apply: {reason} (at x = {w})"),
                None => writeln!(out, "{theorem} does not apply: {reason}"),
            };
        }
        MvtResult::Unknown { detail } => {
            let _ = writeln!(out, "{theorem} could not be verified: {detail}");
        }
    }
}

fn eval(f: &str, x: &str, out: &mut dyn Write) -> Result<i32, String> {
    let f = parse_flag("--f", f)?;
    let x = constant_flag("--x", x)?;
    let value = f.evaluate(x).map_err(|e| e.to_string())?;
    let _ = writeln!(out, "{value}");
    Ok(EXIT_OK)
}

fn parse_flag(flag: &str, source: &str) -> Result<Expr, String> {
    parse(source).map_err(|e| describe_parse_error(flag, source, &e))
}

/// Parses and evaluates a flag that must not mention `x`.
fn constant_flag(flag: &str, source: &str) -> Result<f64, String> {
    let e = parse_flag(flag, source)?;
    if !e.is_constant() {
        return Err(format!(
            "{flag} must be a constant expression, got {source:?}"
        ));
    }
    e.evaluate(0.0)
        .map_err(|err| format!("{flag} is undefined: {}", err.reason()))
}

fn describe_parse_error(flag: &str, source: &str, e: &ParseError) -> String {
    let column = source[..e.position().min(source.len())].chars().count();
    format!("{flag}: {e}\n  {source}\n  {}^", " ".repeat(column))
}
