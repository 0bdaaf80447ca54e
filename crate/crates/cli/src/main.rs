//! `gradedlc`: graded components of local cohomology of monomial ideals
//! from the command line.
//!
//! Exit codes follow the usual contract: 0 on success, 1 when verification
//! finds a FAIL or an internal computation breaks, 2 on usage and parse
//! errors. All default output is byte-identical across runs; only `--timings`
//! introduces wall-clock data.

mod config;
mod json;
mod render;
mod suite_exec;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gradedlc_core::cech::{
    component_dim, zdegree_status, BoxBounds, CechError, LCQuery, MonomialIdeal,
};
use gradedlc_core::weyl::parse_element;

#[derive(Parser)]
#[command(
    name = "gradedlc",
    version,
    about = "Graded components of local cohomology of monomial ideals: \
             dimensions, degree tables, structural verification, Weyl algebra \
             normal forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print evidence for passing checks too, not only for FAIL/INCONCLUSIVE.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of one multigraded component of H_I^i(R).
    Component {
        /// Ideal generators, e.g. "x1*x2^2, x3" (case-insensitive, 1-based).
        #[arg(long)]
        ideal: String,
        /// Cohomological index.
        #[arg(long)]
        i: usize,
        /// Multidegree, comma-separated; quote negatives: --a " -1,-1".
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Number of variables; defaults to the largest index in the ideal.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Per-degree vanishing table of H_I^i(R) over a total-degree window.
    Table {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        i: usize,
        /// Degree window "lo:hi"; quote negatives: --window " -6:3".
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        m: Option<usize>,
        /// Uniform multidegree box bound (>= 1); defaults to a bound wide
        /// enough to certify the window.
        #[arg(long = "box")]
        box_bound: Option<i64>,
        /// Emit the assembled window module itself (components, labels,
        /// action and euler matrices) instead of the degree rows. JSON only.
        #[arg(long)]
        module: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run a verification suite and report one verdict per check.
    Verify {
        /// Suite config path; the built-in default suite when omitted.
        #[arg(long)]
        suite: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Stamp entry wall times on the checks (output is then no longer
        /// byte-identical across runs).
        #[arg(long)]
        timings: bool,
    },
    /// Normal form of a Weyl algebra expression, e.g. "d1*x1" or "(x1+d2)^2".
    Weyl {
        #[arg(allow_hyphen_values = true)]
        expression: String,
        /// Apply the Fourier transform x_i -> d_i, d_i -> -x_i first.
        #[arg(long)]
        fourier: bool,
        #[arg(long)]
        m: Option<usize>,
    },
}

/// Errors split by exit code; 1 for broken internals, 2 for bad input.
enum CliError {
    Usage(String),
    Internal(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

/// Input-shaped Čech errors are the user's; assembly errors are ours.
fn from_cech(e: CechError) -> CliError {
    match e {
        CechError::Assembly(_) | CechError::Module(_) => CliError::Internal(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

fn parse_ideal(text: &str, m: Option<usize>) -> Result<MonomialIdeal, CliError> {
    MonomialIdeal::parse(text, m).map_err(from_cech)
}

fn parse_multidegree(text: &str, m: usize) -> Result<Vec<i64>, CliError> {
    let parts: Vec<i64> = text
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(format!("multidegree `{text}` is not a comma-separated integer list")))?;
    if parts.len() != m {
        return Err(CliError::usage(format!(
            "multidegree has {} entries for m={m}; pass --m to widen the ring",
            parts.len()
        )));
    }
    Ok(parts)
}

fn parse_window(text: &str) -> Result<(i64, i64), CliError> {
    let err = || CliError::usage(format!("window `{text}` is not of the form lo:hi with lo <= hi"));
    let (lo, hi) = text.trim().split_once(':').ok_or_else(err)?;
    let lo: i64 = lo.trim().parse().map_err(|_| err())?;
    let hi: i64 = hi.trim().parse().map_err(|_| err())?;
    if lo > hi {
        return Err(err());
    }
    Ok((lo, hi))
}

fn bounds_for(
    ideal: &MonomialIdeal,
    box_bound: Option<i64>,
    lo: i64,
    hi: i64,
) -> Result<BoxBounds, CliError> {
    match box_bound {
        Some(b) => BoxBounds::uniform(ideal.m(), b).map_err(from_cech),
        None => Ok(BoxBounds::default_for(ideal, lo, hi)),
    }
}

/// Write to stdout, treating a closed pipe as a request to stop.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

fn emit_line(text: &str) {
    emit(text);
    emit("\n");
}

fn cmd_component(
    ideal: &str,
    i: usize,
    a: &str,
    m: Option<usize>,
    format: Format,
) -> Result<ExitCode, CliError> {
    let ideal = parse_ideal(ideal, m)?;
    let a = parse_multidegree(a, ideal.m())?;
    let dim = component_dim(&ideal, i, &a).map_err(from_cech)?;
    match format {
        Format::Table => emit_line(&dim.to_string()),
        Format::Json => emit_line(&json::component(&ideal, i, &a, dim)),
        Format::Csv => {
            emit_line("ideal,i,a,dimension");
            emit_line(&render::component_csv_row(&ideal, i, &a, dim));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(
    ideal: &str,
    i: usize,
    window: &str,
    m: Option<usize>,
    box_bound: Option<i64>,
    dump_module: bool,
    format: Format,
) -> Result<ExitCode, CliError> {
    let ideal = parse_ideal(ideal, m)?;
    let (lo, hi) = parse_window(window)?;
    let bounds = bounds_for(&ideal, box_bound, lo, hi)?;
    if dump_module && format != Format::Json {
        return Err(CliError::usage("--module output is JSON only"));
    }
    let query = LCQuery::new(ideal.clone(), i, lo, hi).with_box(bounds.clone());
    let module = gradedlc_core::cech::assemble_window_module(&query).map_err(from_cech)?;
    if dump_module {
        emit_line(&json::window_module(&module));
        return Ok(ExitCode::SUCCESS);
    }
    let mut rows = Vec::new();
    for n in lo..=hi {
        rows.push((n, zdegree_status(&ideal, i, n, &bounds).map_err(from_cech)?));
    }
    match format {
        Format::Table => emit(&render::table_text(&rows, &module)),
        Format::Json => emit_line(&json::table(&ideal, i, &bounds, &rows, &module)),
        Format::Csv => emit(&render::table_csv(&rows, &module)),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    suite: Option<&std::path::Path>,
    format: Format,
    timings: bool,
    verbose: bool,
) -> Result<ExitCode, CliError> {
    let config = match suite {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::usage(format!("cannot read suite config {}: {e}", path.display()))
            })?;
            config::parse_suite(&text).map_err(CliError::Usage)?
        }
        None => gradedlc_core::checks::SuiteConfig::default_suite(),
    };
    let threads = suite_exec::thread_count(config.entries.len())?;
    let report = suite_exec::run_parallel(&config, threads, timings);
    match format {
        Format::Table => emit(&render::report_text(&report, verbose)),
        Format::Json => emit_line(&json::report(&report)),
        Format::Csv => emit(&render::report_csv(&report)),
    }
    let failed = report.count(gradedlc_core::checks::Verdict::Fail);
    if failed > 0 {
        Ok(ExitCode::FAILURE)
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn cmd_weyl(expression: &str, fourier: bool, m: Option<usize>) -> Result<ExitCode, CliError> {
    let element = parse_element(expression, m)
        .map_err(|e| CliError::usage(format!("cannot parse expression: {e}")))?;
    let element = if fourier { element.fourier() } else { element };
    emit_line(&element.render());
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Component {
            ideal,
            i,
            a,
            m,
            format,
        } => cmd_component(ideal, *i, a, *m, *format),
        Command::Table {
            ideal,
            i,
            window,
            m,
            box_bound,
            module,
            format,
        } => cmd_table(ideal, *i, window, *m, *box_bound, *module, *format),
        Command::Verify {
            suite,
            format,
            timings,
        } => cmd_verify(suite.as_deref(), *format, *timings, cli.verbose),
        Command::Weyl {
            expression,
            fourier,
            m,
        } => cmd_weyl(expression, *fourier, *m),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::FAILURE
        }
    }
}
