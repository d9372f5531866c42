//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 search stopped by
//! `--budget` before finishing.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use corrsets_core::data::NumericColumns;
use corrsets_core::synth::Scorer;
use corrsets_core::Estimator;

use crate::commands::{self, Algo, DiscoverOptions, InputOptions, RegretOptions};
use crate::error::CliError;
use crate::report::RegretReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "corrsets", version, about = "Top-k reliably correlated attribute subsets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search a dataset for the top-k subsets under the corrected score.
    Discover(DiscoverArgs),
    /// Estimator regret on synthetic populations.
    Regret(RegretArgs),
    /// Plug-in versus corrected total correlation on independent data.
    Chance(ChanceArgs),
    /// Score one attribute subset.
    Score(ScoreArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// CSV file to read.
    #[arg(long)]
    input: PathBuf,
    /// The first line is data; columns are named X1..Xd.
    #[arg(long)]
    no_header: bool,
    /// Equal-frequency bins for numeric columns.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    bins: u32,
    /// Columns to discretize: `none`, `auto`, or a comma-separated list of names.
    #[arg(long, default_value = "none")]
    numeric_cols: String,
    /// Remove attributes with a single observed value.
    #[arg(long)]
    drop_constant: bool,
}

impl InputArgs {
    fn options(&self) -> InputOptions {
        let numeric = match self.numeric_cols.as_str() {
            "none" | "" => NumericColumns::None,
            "auto" => NumericColumns::Auto,
            list => NumericColumns::Named(list.split(',').map(|s| s.trim().to_string()).collect()),
        };
        InputOptions {
            path: self.input.clone(),
            has_header: !self.no_header,
            bins: self.bins as usize,
            numeric,
            drop_constant: self.drop_constant,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgoArg {
    Bnb,
    Greedy,
}

#[derive(Debug, Args)]
struct DiscoverArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    /// Approximation factor in (0, 1].
    #[arg(long, default_value_t = 1.0, value_parser = parse_alpha)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "bnb")]
    algo: AlgoArg,
    /// Stop searching after this many seconds and report the best so far.
    #[arg(long, value_parser = parse_seconds)]
    budget: Option<f64>,
    /// Also write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Run the search this many times and average the wall time.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    repeats: u64,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Comma-separated attribute names.
    #[arg(long)]
    set: String,
    #[arg(long, default_value = "relaxed", value_parser = parse_estimator)]
    estimator: Estimator,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ChanceArgs {
    /// Number of independent variables.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(2..))]
    d: u64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    domain: u32,
    /// Sample size.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(2..))]
    n: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RegretArgs {
    /// Numbers of dependent variables.
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4])]
    dims: Vec<usize>,
    /// Target bands `lo:hi` of the population score.
    #[arg(long, value_delimiter = ',', value_parser = parse_band,
          default_values = ["0.1:0.2", "0.2:0.3", "0.3:0.4", "0.4:0.5"])]
    bands: Vec<(f64, f64)>,
    /// Sample sizes.
    #[arg(long, value_delimiter = ',', default_values_t = [10usize, 20, 30, 40, 50, 60, 70, 80, 90, 100])]
    n: Vec<usize>,
    #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Objectives to maximize: plugin, exact, upper, relaxed, population.
    #[arg(long, value_delimiter = ',', value_parser = parse_scorer,
          default_values = ["plugin", "exact", "upper", "relaxed"])]
    estimators: Vec<Scorer>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rejection-sampling attempts per population.
    #[arg(long, default_value_t = 200_000)]
    max_attempts: usize,
    /// Directory for one TSV file per estimator.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let a: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if a > 0.0 && a <= 1.0 {
        Ok(a)
    } else {
        Err(format!("alpha must lie in (0, 1], got {a}"))
    }
}

fn parse_seconds(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("expected a non-negative number of seconds, got {s}"))
    }
}

fn parse_estimator(s: &str) -> Result<Estimator, String> {
    Estimator::from_label(s).ok_or_else(|| format!("unknown estimator {s:?}; use plugin, exact, upper or relaxed"))
}

fn parse_scorer(s: &str) -> Result<Scorer, String> {
    Scorer::from_label(s)
        .ok_or_else(|| format!("unknown estimator {s:?}; use plugin, exact, upper, relaxed or population"))
}

fn parse_band(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if 0.0 <= lo && lo < hi && hi <= 1.0 {
        Ok((lo, hi))
    } else {
        Err(format!("band {s:?} is not a sub-interval of [0, 1]"))
    }
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

/// Parses `args` (including the program name), runs the command, and returns
/// the process exit code. Output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    // the program name is left out so reports do not depend on the install path
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match dispatch(cli.command, echo, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DATA
        }
    }
}

fn dispatch(command: Command, echo: Vec<String>, out: &mut impl Write, err: &mut impl Write) -> Result<i32, CliError> {
    let stdout_err = |source| CliError::Io { path: "<stdout>".into(), source };
    match command {
        Command::Discover(a) => {
            let opts = DiscoverOptions {
                input: a.input.options(),
                k: a.k as usize,
                alpha: a.alpha,
                algo: match a.algo {
                    AlgoArg::Bnb => Algo::Bnb,
                    AlgoArg::Greedy => Algo::Greedy,
                },
                budget: a.budget.map(Duration::from_secs_f64),
                repeats: a.repeats as usize,
            };
            let report = commands::discover(&opts, echo)?;
            write!(out, "{}", report.render()).map_err(stdout_err)?;
            if let Some(path) = &a.json {
                write_json(path, &report)?;
            }
            Ok(if report.stats.complete { EXIT_OK } else { EXIT_INCOMPLETE })
        }
        Command::Score(a) => {
            let set: Vec<String> =
                a.set.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            let report = commands::score(&a.input.options(), &set, a.estimator, echo)?;
            write!(out, "{}", report.render()).map_err(stdout_err)?;
            if let Some(path) = &a.json {
                write_json(path, &report)?;
            }
            Ok(EXIT_OK)
        }
        Command::Chance(a) => {
            let report = commands::chance(a.d as usize, a.domain, a.n as usize, a.seed, echo)?;
            write!(out, "{}", report.tsv()).map_err(stdout_err)?;
            if let Some(path) = &a.json {
                write_json(path, &report)?;
            }
            Ok(EXIT_OK)
        }
        Command::Regret(a) => {
            let opts = RegretOptions {
                dims: a.dims,
                bands: a.bands,
                n_grid: a.n,
                trials: a.trials as usize,
                scorers: a.estimators,
                seed: a.seed,
                max_attempts: a.max_attempts,
            };
            let report = commands::regret(&opts, echo)?;
            for s in &report.skipped {
                let _ = writeln!(err, "warning: skipped d={} band [{}, {}): {}", s.d, s.band[0], s.band[1], s.reason);
            }
            write!(out, "{}", RegretReport::tsv(&report.average)).map_err(stdout_err)?;
            if let Some(dir) = &a.out {
                std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
                for curve in &report.average {
                    let path = dir.join(format!("regret_{}.tsv", curve.estimator));
                    write_file(&path, &RegretReport::tsv(std::slice::from_ref(curve)))?;
                }
            }
            if let Some(path) = &a.json {
                write_json(path, &report)?;
            }
            Ok(EXIT_OK)
        }
    }
}
