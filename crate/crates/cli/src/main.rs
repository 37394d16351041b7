//! `beta-intertwine`: run the identity checks and draw samples.

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use beta_intertwine::kernels::{sample_composed, sample_dixon_anderson, sample_lambda, ChamberPoint, KernelParams};
use beta_intertwine::numerics::RngStream;
use beta_intertwine::rmt::{laguerre_ensemble_sample, EnsembleMethod, Field};
use beta_intertwine::semigroup::{simulate_sde, GeneratorKind, GeneratorSpec, SdeConfig};
use beta_intertwine::verify::{self, Overrides, RunOptions, VerifyConfig};
use beta_intertwine::Partition;
use clap::{Args, Parser, Subcommand, ValueEnum};

const SEED_ENV: &str = "BETA_INTERTWINE_SEED";
const DEFAULT_SAMPLE_SEED: u64 = 1;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] beta_intertwine::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Parser, Debug)]
#[command(name = "beta-intertwine", version, about = "Checks and samplers for β-Laguerre intertwinings")]
struct Cli {
    /// Master seed; overrides BETA_INTERTWINE_SEED and the config file.
    #[arg(long, global = true, env = SEED_ENV)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a check (or `all`) and print one JSON report per line.
    Verify(VerifyArgs),
    /// Draw samples and print them as CSV.
    Sample(SampleArgs),
    /// List the check ids.
    List,
}

/// Comma-separated coordinates. A newtype so clap treats the list as one
/// value rather than as repeated occurrences.
#[derive(Clone, Debug, PartialEq)]
struct Point(Vec<f64>);

fn parse_point(s: &str) -> Result<Point, String> {
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad coordinate `{t}`: {e}"))).collect::<Result<_, _>>().map(Point)
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: beta_intertwine::Error| e.to_string())
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Check id, or `all`.
    check: String,
    /// With `all`: deterministic checks only.
    #[arg(long)]
    quick: bool,
    /// Grid file replacing the bundled one.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Leave out wall-clock times so reruns compare byte for byte.
    #[arg(long)]
    no_runtime: bool,
    /// Run grid points one at a time.
    #[arg(long)]
    sequential: bool,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long, value_parser = parse_partition)]
    lambda: Option<Partition>,
    #[arg(long, value_parser = parse_partition)]
    lmax: Option<Partition>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    x: Option<Point>,
    #[arg(long)]
    draws: Option<usize>,
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    step: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SampleKind {
    DixonAnderson,
    Lambda,
    Composed,
    LaguerreEnsemble,
    SdePath,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(value_enum)]
    kernel: SampleKind,
    /// Starting point of a kernel, comma separated.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    x: Option<Point>,
    /// Initial state of an SDE path.
    #[arg(long, value_parser = parse_point)]
    x0: Option<Point>,
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    /// Number of particles; inferred from the point when omitted.
    #[arg(long = "N")]
    n: Option<usize>,
    /// Draws, or paths for `sde-path`.
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Time horizon of `sde-path`.
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    /// Recorded intervals per path.
    #[arg(long, default_value_t = 10)]
    snapshots: usize,
    /// `laguerre` or `laguerre_ou` for `sde-path`.
    #[arg(long, default_value = "laguerre")]
    generator: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => run_verify(args, cli.seed),
        Command::Sample(args) => run_sample(args, cli.seed.unwrap_or(DEFAULT_SAMPLE_SEED)).map(|()| true),
        Command::List => {
            for c in verify::checks() {
                println!("{}\t{}\t{}", c.id, if c.monte_carlo { "mc" } else { "exact" }, c.summary);
            }
            Ok(true)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run_verify(args: VerifyArgs, seed: Option<u64>) -> Result<bool, CliError> {
    let config = match &args.config {
        Some(path) => VerifyConfig::from_path(path)?,
        None => VerifyConfig::builtin(),
    };
    let checks = verify::select(&args.check, args.quick)?;
    let mut options = RunOptions::new(seed.unwrap_or(config.seed));
    options.overrides = Overrides {
        theta: args.theta,
        alpha: args.alpha,
        n: args.n,
        lambda: args.lambda,
        lmax: args.lmax,
        t: args.t,
        x: args.x.map(|p| p.0),
        draws: args.draws,
        field: args.field,
        kind: args.kind,
        step: args.step,
    };
    if args.sequential {
        options.execution = beta_intertwine::parallel::Execution::Sequential;
    }
    let mut out = BufWriter::new(io::stdout().lock());
    let (mut total, mut failed) = (0usize, 0usize);
    for check in checks {
        for report in verify::run_check(check, &config, &options) {
            let report = if args.no_runtime { report.without_runtime() } else { report };
            total += 1;
            failed += usize::from(!report.pass);
            writeln!(out, "{}", report.to_json_line())?;
        }
        out.flush()?;
    }
    eprintln!("{total} reports, {failed} failed");
    Ok(failed == 0)
}

fn require_point(x: Option<Point>, flag: &str) -> Result<Vec<f64>, CliError> {
    x.map(|p| p.0).ok_or_else(|| CliError::Usage(format!("--{flag} is required")))
}

fn run_sample(args: SampleArgs, seed: u64) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(io::stdout().lock());
    let write_draws = |out: &mut csv::Writer<_>,
                       n: usize,
                       draw: &dyn Fn(&mut RngStream) -> beta_intertwine::Result<ChamberPoint>|
     -> Result<(), CliError> {
        out.write_record((1..=n).map(|i| format!("y{i}")))?;
        for i in 0..args.count {
            let y = draw(&mut RngStream::new(seed, i as u64))?;
            out.write_record(y.coords().iter().map(f64::to_string))?;
        }
        Ok(())
    };
    match args.kernel {
        SampleKind::DixonAnderson => {
            let x = ChamberPoint::signed(require_point(args.x.clone(), "x")?)?;
            let n = x.len().saturating_sub(1);
            check_n(args.n, n)?;
            write_draws(&mut out, n, &|rng| sample_dixon_anderson(&x, args.theta, rng))?;
        }
        SampleKind::Lambda => {
            let x = ChamberPoint::nonnegative(require_point(args.x.clone(), "x")?)?;
            let n = x.len();
            check_n(args.n, n)?;
            let params = KernelParams::new(args.theta, args.alpha, n)?;
            write_draws(&mut out, n, &|rng| sample_lambda(&x, &params, rng))?;
        }
        SampleKind::Composed => {
            let x = ChamberPoint::nonnegative(require_point(args.x.clone(), "x")?)?;
            let n = x.len().saturating_sub(1);
            check_n(args.n, n)?;
            let params = KernelParams::new(args.theta, args.alpha, n)?;
            write_draws(&mut out, n, &|rng| sample_composed(&x, &params, rng))?;
        }
        SampleKind::LaguerreEnsemble => {
            let n = args.n.ok_or_else(|| CliError::Usage("--N is required".into()))?;
            let integer_alpha = args.alpha >= 0.0 && args.alpha.fract() == 0.0;
            let method =
                if Field::from_theta(args.theta).is_ok() && integer_alpha { EnsembleMethod::Gaussian } else { EnsembleMethod::Bidiagonal };
            write_draws(&mut out, n, &|rng| laguerre_ensemble_sample(n, args.theta, args.alpha, method, rng))?;
        }
        SampleKind::SdePath => {
            let x0 = ChamberPoint::nonnegative(require_point(args.x0.clone(), "x0")?)?;
            let n = x0.len();
            check_n(args.n, n)?;
            let kind: GeneratorKind = args.generator.parse()?;
            let spec = GeneratorSpec::new(kind, args.theta, args.alpha, n)?;
            let mut cfg = SdeConfig::new(args.step, args.t, args.count)?;
            cfg.snapshots = args.snapshots;
            cfg.validate()?;
            let paths = simulate_sde(&spec, &x0, &cfg, seed)?;
            let mut head = vec!["t".to_string()];
            head.extend((1..=n).map(|i| format!("x{i}")));
            out.write_record(&head)?;
            for states in &paths.states {
                for (t, x) in paths.times.iter().zip(states) {
                    out.write_record(std::iter::once(t.to_string()).chain(x.iter().map(f64::to_string)))?;
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn check_n(given: Option<usize>, inferred: usize) -> Result<(), CliError> {
    match given {
        Some(n) if n != inferred => Err(CliError::Usage(format!("--N {n} does not match the point (N = {inferred})"))),
        _ => Ok(()),
    }
}
