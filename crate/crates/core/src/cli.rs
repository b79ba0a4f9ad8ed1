//! The `volterra` command line.
//!
//! ```text
//! volterra solve FILE [--output csv|pretty] [--nmax N] [--rmax R] [--mmax M]
//! volterra eval FILE T...
//! volterra validate FILE [--tpoints T,T,..] [--grid-steps N] [--seed S] [--inject-corruption D]
//! volterra radius FILE [--delta D] [--r R]
//! ```
//!
//! Exit codes: 0 ok, 1 a validation check failed, 2 input error, 3 solver
//! error, 4 evaluation outside the domain.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::problem::ProblemFile;
use crate::report::{radius, validate, ValidateOptions};
use crate::series::Series;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

/// Environment variable holding the log filter (default `warn`).
pub const LOG_ENV: &str = "VOLTERRA_LOG_LEVEL";

#[derive(Debug, Parser)]
#[command(name = "volterra", version, about = "Power-series solutions of Volterra integral equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Pretty,
}

#[derive(Debug, Args)]
struct Common {
    /// Problem file (JSON).
    file: PathBuf,
    /// Override truncation.n_max.
    #[arg(long)]
    nmax: Option<usize>,
    /// Override truncation.r_max.
    #[arg(long)]
    rmax: Option<usize>,
    /// Override truncation.m_max (fold terms).
    #[arg(long)]
    mmax: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the coefficient table.
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "csv")]
        output: OutputFormat,
    },
    /// Evaluate the truncated series at the given points.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(required = true, allow_negative_numbers = true)]
        t: Vec<f64>,
    },
    /// Run the applicable oracles and report PASS/FAIL per check.
    Validate {
        #[command(flatten)]
        common: Common,
        /// Residual and time-stepping points, comma separated.
        #[arg(long, value_delimiter = ',')]
        tpoints: Option<Vec<f64>>,
        #[arg(long)]
        grid_steps: Option<usize>,
        /// Adds three random points in (0, max t] drawn from this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Add DELTA to component 0 of X_(0,1) before the oracles run.
        #[arg(long, value_name = "DELTA", allow_negative_numbers = true)]
        inject_corruption: Option<f64>,
    },
    /// Certified radius bound and empirical radius estimate.
    Radius {
        #[command(flatten)]
        common: Common,
        /// Grouping parameter for Abel problems.
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        /// Fix the envelope radius instead of optimizing it.
        #[arg(long)]
        r: Option<f64>,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidArgument(_) => EXIT_INPUT,
        Error::Domain(_) => EXIT_DOMAIN,
        _ => EXIT_SOLVER,
    }
}

fn load(c: &Common) -> Result<ProblemFile, Error> {
    let mut p = ProblemFile::load(&c.file)?;
    if let Some(n) = c.nmax {
        p.truncation.n_max = n;
    }
    if let Some(r) = c.rmax {
        p.truncation.r_max = r;
    }
    if let Some(m) = c.mmax {
        p.truncation.m_max = m;
    }
    Ok(p)
}

/// Coefficient table as CSV: `r,i,exponent,component,value`, one line per
/// component, values with 17 significant digits.
pub fn series_csv(series: &Series) -> String {
    let mut s = String::from("r,i,exponent,component,value\n");
    for (r, i, label, c) in series.entries() {
        for (j, v) in c.iter().enumerate() {
            let v = v + 0.0;
            s.push_str(&format!("{r},{i},{label},{j},{v:.16e}\n"));
        }
    }
    s
}

fn series_pretty(series: &Series) -> String {
    let rows = series.entries();
    let w = rows.iter().map(|e| e.2.len()).max().unwrap_or(1).max(8);
    let mut s = format!("{:>3} {:>3}  {:<w$}  values\n", "r", "i", "exponent");
    for (r, i, label, c) in rows {
        if c.iter().all(|&v| v == 0.0) {
            continue;
        }
        let vals: Vec<String> = c.iter().map(|v| format!("{v:>24.16e}")).collect();
        s.push_str(&format!("{r:>3} {i:>3}  {label:<w$}  {}\n", vals.join(" ")));
    }
    s
}

fn run_command(cmd: Command, out: &mut dyn Write) -> Result<i32, Error> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("write failed: {e}"));
    match cmd {
        Command::Solve { common, output } => {
            let p = load(&common)?;
            let solved = p.problem.solve(&p.truncation)?;
            let text = match output {
                OutputFormat::Csv => series_csv(&solved.series),
                OutputFormat::Pretty => series_pretty(&solved.series),
            };
            out.write_all(text.as_bytes()).map_err(io)?;
        }
        Command::Eval { common, t } => {
            let p = load(&common)?;
            let solved = p.problem.solve(&p.truncation)?;
            for t in t {
                let x = solved.series.evaluate(t)?;
                let vals: Vec<String> = x.iter().map(|v| format!("{v:.16e}")).collect();
                writeln!(out, "{t} {}", vals.join(" ")).map_err(io)?;
            }
        }
        Command::Validate { common, tpoints, grid_steps, seed, inject_corruption } => {
            let p = load(&common)?;
            let mut t_points = tpoints.unwrap_or_else(|| p.validation.t_points.clone());
            if let Some(&bad) = t_points.iter().find(|&&t| !(t > 0.0) || !t.is_finite()) {
                return Err(Error::InvalidArgument(format!("--tpoints: {bad} is not positive")));
            }
            if let Some(seed) = seed {
                let t_end = t_points.iter().copied().fold(0.0, f64::max);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..3 {
                    t_points.push(t_end * rng.random_range(0.05..=1.0));
                }
            }
            let opts = ValidateOptions {
                t_points: Some(t_points),
                grid_steps,
                corruption: inject_corruption,
            };
            let report = validate(&p, &opts)?;
            for c in &report.checks {
                writeln!(out, "{c}").map_err(io)?;
            }
            let ok = report.passed();
            writeln!(out, "{}", if ok { "PASS" } else { "FAIL" }).map_err(io)?;
            if !ok {
                return Ok(EXIT_VALIDATION_FAILED);
            }
        }
        Command::Radius { common, delta, r } => {
            let p = load(&common)?;
            let rep = radius(&p, delta, r)?;
            match &rep.certified {
                Ok((bound, env)) => {
                    writeln!(out, "certified bound: {bound}").map_err(io)?;
                    writeln!(out, "envelope: {env}").map_err(io)?;
                }
                Err(why) => writeln!(out, "certified bound: unavailable ({why})").map_err(io)?,
            }
            if let Some(ok) = rep.grouped_inequality {
                let verdict = if ok { "holds" } else { "VIOLATED" };
                writeln!(out, "grouped inequality (delta = {delta}): {verdict}").map_err(io)?;
            }
            writeln!(
                out,
                "empirical estimate: {} ({:?})",
                rep.estimate.value, rep.estimate.confidence
            )
            .map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code. Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match run_command(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Sets up logging from [`LOG_ENV`].
pub fn init_logging() {
    let env = env_logger::Env::new().filter_or(LOG_ENV, "warn");
    let _ = env_logger::Builder::from_env(env).format_timestamp(None).try_init();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("volterra").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn missing_file_is_input_error() {
        let (code, _, err) = run_str(&["solve", "/nonexistent/problem.json"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("nonexistent"));
    }

    #[test]
    fn unknown_flag_is_input_error() {
        assert_eq!(run_str(&["solve", "x.json", "--bogus"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn csv_prints_full_precision() {
        let t = crate::series::TaylorTable::from_scalars(&[1.0, 1.0 / 3.0]).unwrap();
        let csv = series_csv(&Series::Taylor(t));
        assert_eq!(csv, "r,i,exponent,component,value\n0,0,0,0,1.0000000000000000e0\n0,1,1,0,3.3333333333333331e-1\n");
    }
}
