//! Command line front end for the stcore library.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 refusal because a computation would exceed its budget.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use stcore::{
    closed_form_mean, closed_form_variance, exact_moments, exact_size_distribution,
    monte_carlo_normalized, rational_catalan, run_battery, u2_cdf, u2_tail,
    write_samples_binary, write_samples_csv, CheckStatus, Error, SampleConfig,
};

const EXIT_VERIFICATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "stcore",
    version,
    about = "Simultaneous (s,t)-core partitions: exact enumeration, uniform sampling, and the Watson U\u{b2} limit law",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget refusal."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate every (s,t)-core and emit the exact size distribution.
    Enumerate {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        /// Output format for the distribution.
        #[arg(long, value_enum, default_value_t = DistFormat::Csv)]
        format: DistFormat,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Refuse (exit 3) if the number of cores exceeds this.
        #[arg(long, default_value_t = 100_000_000)]
        max_count: u64,
    },
    /// Draw seeded uniform samples of core sizes.
    Sample {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        /// Number of samples.
        #[arg(long)]
        n: u64,
        /// RNG seed; required, so every run is reproducible.
        #[arg(long)]
        seed: u64,
        /// Which per-sample value to emit.
        #[arg(long, value_enum, default_value_t = Emit::Normalized)]
        emit: Emit,
        #[arg(long, value_enum, default_value_t = SampleFormat::Csv)]
        format: SampleFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare exact enumerated moments with the closed forms.
    Moments {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        /// Highest raw moment to print.
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Evaluate or tabulate the limiting U\u{b2} tail law.
    Limit {
        /// Evaluate tail and cdf at a single point.
        #[arg(long, conflicts_with = "table")]
        eval: Option<f64>,
        /// Tabulate over start:end:step.
        #[arg(long)]
        table: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the exhaustive cross-check battery over small coprime pairs.
    Verify {
        /// Check every coprime (s,t) with s + t up to this bound.
        #[arg(long, default_value_t = 8)]
        max_sum: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SampleFormat {
    Csv,
    Bin,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Sizes,
    Normalized,
    U2,
}

/// A failure with a chosen process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn budget(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_BUDGET,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VERIFICATION,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Open the sink: a buffered file if requested, standard output otherwise.
fn open_out(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Enumerate {
            s,
            t,
            format,
            out,
            max_count,
        } => cmd_enumerate(s, t, format, out, max_count),
        Command::Sample {
            s,
            t,
            n,
            seed,
            emit,
            format,
            out,
        } => cmd_sample(s, t, n, seed, emit, format, out),
        Command::Moments { s, t, order } => cmd_moments(s, t, order),
        Command::Limit { eval, table, out } => cmd_limit(eval, table, out),
        Command::Verify { max_sum } => cmd_verify(max_sum),
    }
}

fn cmd_enumerate(
    s: u32,
    t: u32,
    format: DistFormat,
    out: Option<PathBuf>,
    max_count: u64,
) -> Result<(), Failure> {
    let count = rational_catalan(s, t)?;
    let within_budget = count.to_u64().is_some_and(|c| c <= max_count);
    if !within_budget {
        return Err(Failure::budget(format!(
            "enumeration of ({s}, {t}) needs {count} cores, over the budget of {max_count}; raise --max-count to proceed"
        )));
    }
    let dist = exact_size_distribution(s, t)?;
    let mut sink = open_out(&out)?;
    match format {
        DistFormat::Csv => sink.write_all(dist.to_csv().as_bytes())?,
        DistFormat::Json => {
            sink.write_all(dist.to_json().as_bytes())?;
            sink.write_all(b"\n")?;
        }
    }
    Ok(())
}

fn cmd_sample(
    s: u32,
    t: u32,
    n: u64,
    seed: u64,
    emit: Emit,
    format: SampleFormat,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let cfg = SampleConfig::new(s, t, n, seed)?;
    let samples = monte_carlo_normalized(&cfg)?;
    let mut sink = open_out(&out)?;
    match (emit, format) {
        (Emit::Sizes, SampleFormat::Bin) => {
            let sizes: Vec<u128> = samples.iter().map(|x| x.raw_size).collect();
            write_samples_binary(&mut sink, s, t, &sizes)?;
        }
        (Emit::Sizes, SampleFormat::Csv) => {
            writeln!(sink, "index,raw_size")?;
            for (i, sample) in samples.iter().enumerate() {
                writeln!(sink, "{i},{}", sample.raw_size)?;
            }
        }
        (Emit::Normalized, SampleFormat::Csv) => {
            write_samples_csv(&mut sink, &samples)?;
        }
        (Emit::U2, SampleFormat::Csv) => {
            // Size and U2 determine each other exactly:
            // size = st(s+t)/2 * u2 - ((s+t)^2 - 1) / 24.
            let scale = stcore::normalizer(s, t);
            let nn = f64::from(s) + f64::from(t);
            let shift = (nn * nn - 1.0) / 24.0;
            writeln!(sink, "index,u2")?;
            for (i, sample) in samples.iter().enumerate() {
                let u2 = (sample.raw_size as f64 + shift) / scale;
                writeln!(sink, "{i},{u2}")?;
            }
        }
        (Emit::Normalized | Emit::U2, SampleFormat::Bin) => {
            return Err(Failure::usage(
                "binary output stores raw sizes only; use --emit sizes with --format bin",
            ));
        }
    }
    sink.flush()?;
    Ok(())
}

fn cmd_moments(s: u32, t: u32, order: usize) -> Result<(), Failure> {
    let dist = exact_size_distribution(s, t)?;
    let moments = exact_moments(&dist, order);
    let mean_formula = closed_form_mean(s, t)?;
    let var_formula = closed_form_variance(s, t)?;
    let mean_ok = moments.mean == mean_formula;
    let var_ok = moments.variance == var_formula;
    let verdict = |ok: bool| if ok { "yes" } else { "MISMATCH" };

    let mut sink = io::stdout().lock();
    writeln!(sink, "statistic,exact,closed_form,match")?;
    writeln!(
        sink,
        "mean,{},{},{}",
        moments.mean,
        mean_formula,
        verdict(mean_ok)
    )?;
    writeln!(
        sink,
        "variance,{},{},{}",
        moments.variance,
        var_formula,
        verdict(var_ok)
    )?;
    for (k, raw) in moments.raw.iter().enumerate().skip(2).take(order.saturating_sub(2)) {
        writeln!(sink, "raw{},{},-,-", k + 1, raw)?;
    }
    drop(sink);
    if mean_ok && var_ok {
        Ok(())
    } else {
        Err(Failure::verification(format!(
            "enumerated moments of ({s}, {t}) disagree with the closed forms"
        )))
    }
}

fn cmd_limit(
    eval: Option<f64>,
    table: Option<String>,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let points: Vec<f64> = match (eval, table) {
        (Some(x), None) => vec![x],
        (None, Some(range)) => {
            let (start, end, step) = parse_table_range(&range)?;
            let rows = ((end - start) / step + 1e-9).floor() as u64 + 1;
            (0..rows).map(|i| start + step * i as f64).collect()
        }
        (None, None) => {
            return Err(Failure::usage("pass either --eval X or --table start:end:step"));
        }
        (Some(_), Some(_)) => unreachable!("clap enforces the conflict"),
    };
    let mut sink = open_out(&out)?;
    writeln!(sink, "x,tail,cdf")?;
    for x in points {
        writeln!(sink, "{x},{:e},{:e}", u2_tail(x), u2_cdf(x))?;
    }
    sink.flush()?;
    Ok(())
}

fn parse_table_range(range: &str) -> Result<(f64, f64, f64), Failure> {
    let parts: Vec<&str> = range.split(':').collect();
    let bad = || Failure::usage(format!("invalid --table range {range:?}; expected start:end:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let (start, end, step) = (nums[0], nums[1], nums[2]);
    if !(start.is_finite() && end.is_finite() && step.is_finite()) || step <= 0.0 || end < start {
        return Err(bad());
    }
    Ok((start, end, step))
}

fn cmd_verify(max_sum: u32) -> Result<(), Failure> {
    let mut sink = io::stdout().lock();
    let mut lines = 0u64;
    let mut write_failed = None;
    let all_pass = run_battery(max_sum, |report| {
        let tag = match report.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        };
        let mut line = format!("{tag} {} s={} t={}", report.name, report.s, report.t);
        if !report.detail.is_empty() {
            line.push_str(&format!(" ({})", report.detail));
        }
        if let Err(e) = writeln!(sink, "{line}") {
            write_failed.get_or_insert(e);
        }
        lines += 1;
    })?;
    if let Some(e) = write_failed {
        return Err(e.into());
    }
    writeln!(sink, "{lines} checks run")?;
    drop(sink);
    if all_pass {
        Ok(())
    } else {
        Err(Failure::verification(
            "cross-check battery found mismatches; see FAIL lines above".to_string(),
        ))
    }
}
