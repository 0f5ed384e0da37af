//! Command-line front end: tables, moments, simulation, estimation, and
//! the drift-vs-force curves, emitted as CSV or JSON.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use prwalk::error::Error;
use prwalk::io::{
    format_probability, write_empirical_csv, write_outcomes_csv, write_pmf_csv, write_pmf_json,
};
use prwalk::{
    estimate_confidence, estimate_params, from_thermo, genfunc, simulate, EmpiricalDist, JointPmf,
    ModelParams, RationalParams, SampleStats, Sigma0Mode, SimConfig,
};

/// Environment variable that prefixes relative `--output` paths.
const OUTPUT_DIR_ENV: &str = "PRWALK_OUTPUT_DIR";

#[derive(Parser)]
#[command(
    name = "prwalk",
    version,
    about = "Exact joint statistics of a two-parameter persistent random walk"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the full joint distribution table of (x, k).
    Pmf(PmfArgs),
    /// Closed-form means of x and k.
    Moments(MomentsArgs),
    /// Run seeded walks and write the outcome stream.
    Simulate(SimulateArgs),
    /// Estimate the parameters from an outcome CSV.
    Estimate(EstimateArgs),
    /// Drift per step as a function of the force parameter, per beta.
    Figure1(Figure1Args),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionMode {
    /// f64 log-domain evaluation.
    Log,
    /// Exact rational arithmetic; adds a prob_exact column.
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sigma0ModeArg {
    Stationary,
    ForcedPlus,
    ForcedMinus,
}

impl From<Sigma0ModeArg> for Sigma0Mode {
    fn from(m: Sigma0ModeArg) -> Self {
        match m {
            Sigma0ModeArg::Stationary => Sigma0Mode::Stationary,
            Sigma0ModeArg::ForcedPlus => Sigma0Mode::ForcedPlus,
            Sigma0ModeArg::ForcedMinus => Sigma0Mode::ForcedMinus,
        }
    }
}

#[derive(Args)]
struct ParamArgs {
    /// Persistence probability when moving right, in (0,1). Decimal or p/q.
    #[arg(long)]
    eps_r: String,
    /// Persistence probability when moving left, in (0,1). Decimal or p/q.
    #[arg(long)]
    eps_l: String,
}

impl ParamArgs {
    fn parse_f64(&self) -> Result<ModelParams, Error> {
        // accept the same forms as the exact mode
        let rational = RationalParams::from_strs(&self.eps_r, &self.eps_l)?;
        Ok(rational.to_f64_params())
    }

    fn parse_rational(&self) -> Result<RationalParams, Error> {
        RationalParams::from_strs(&self.eps_r, &self.eps_l)
    }
}

#[derive(Args)]
struct PmfArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Number of steps.
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, value_enum, default_value_t = PrecisionMode::Log)]
    precision_mode: PrecisionMode,
    /// Output path; stdout when omitted. Relative paths are resolved
    /// against PRWALK_OUTPUT_DIR when that variable is set.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MomentsArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    num_walks: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Sigma0ModeArg::Stationary)]
    sigma0_mode: Sigma0ModeArg,
    /// Aggregate outcomes into an empirical (x, k) table instead of one
    /// row per walk.
    #[arg(long)]
    aggregate: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EstimateArgs {
    /// Outcome CSV (schema sigma0,x,k) as written by `simulate`.
    #[arg(long)]
    input: PathBuf,
    /// Steps per walk; the outcome schema does not carry it.
    #[arg(long)]
    n: u32,
    /// Bootstrap resamples; 0 skips interval estimation.
    #[arg(long, default_value_t = 0)]
    resamples: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Figure1Args {
    /// Comma-separated beta values, one curve each.
    #[arg(long, default_value = "-1.0,1.0", allow_hyphen_values = true)]
    betas: String,
    #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
    f_min: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    f_max: f64,
    #[arg(long, default_value_t = 0.05)]
    f_step: f64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io(_) | Error::Parse { .. } => 3,
        Error::InadmissibleStats { .. } | Error::InsufficientData(_) => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Pmf(args) => cmd_pmf(args),
        Command::Moments(args) => cmd_moments(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::Figure1(args) => cmd_figure1(args),
    }
}

fn resolve_output(path: Option<PathBuf>) -> Option<PathBuf> {
    let path = path?;
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUTPUT_DIR_ENV) {
            return Some(PathBuf::from(dir).join(path));
        }
    }
    Some(path)
}

fn with_output<F>(path: Option<PathBuf>, write: F) -> Result<(), Error>
where
    F: FnOnce(&mut dyn Write) -> Result<(), Error>,
{
    match resolve_output(path) {
        Some(path) => {
            let file = File::create(&path)?;
            let mut buf = BufWriter::new(file);
            write(&mut buf)?;
            buf.flush()?;
            Ok(())
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)?;
            lock.flush()?;
            Ok(())
        }
    }
}

fn cmd_pmf(args: PmfArgs) -> Result<(), Error> {
    let rational = match args.precision_mode {
        PrecisionMode::Exact => Some(args.params.parse_rational()?),
        PrecisionMode::Log => None,
    };
    let params = args.params.parse_f64()?;
    let table = JointPmf::closed_form(args.n, &params);
    eprintln!(
        "normalization defect: {:e}",
        (table.total_mass() - 1.0).abs()
    );
    with_output(args.output, |w| match args.format {
        Format::Csv => write_pmf_csv(w, &table, rational.as_ref()),
        Format::Json => write_pmf_json(w, &table, rational.as_ref()),
    })
}

#[derive(Serialize)]
struct MomentsDoc {
    n: u32,
    eps_r: f64,
    eps_l: f64,
    mean_x: f64,
    mean_k: f64,
}

fn cmd_moments(args: MomentsArgs) -> Result<(), Error> {
    let params = args.params.parse_f64()?;
    let doc = MomentsDoc {
        n: args.n,
        eps_r: params.eps_r(),
        eps_l: params.eps_l(),
        mean_x: genfunc::mean_x(args.n, &params),
        mean_k: genfunc::mean_k(args.n, &params),
    };
    with_output(args.output, |w| match args.format {
        Format::Csv => {
            writeln!(w, "n,eps_r,eps_l,mean_x,mean_k")?;
            writeln!(
                w,
                "{},{},{},{},{}",
                doc.n,
                doc.eps_r,
                doc.eps_l,
                format_probability(doc.mean_x),
                format_probability(doc.mean_k)
            )?;
            Ok(())
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *w, &doc).map_err(|e| Error::Parse {
                line: 0,
                message: e.to_string(),
            })?;
            Ok(())
        }
    })
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), Error> {
    let config = SimConfig {
        n: args.n,
        num_walks: args.num_walks,
        seed: args.seed,
        params: args.params.parse_f64()?,
        sigma0_mode: args.sigma0_mode.into(),
    };
    let outcomes = simulate(&config);
    with_output(args.output, |w| {
        if args.aggregate {
            let dist = EmpiricalDist::from_outcomes(&outcomes)?;
            write_empirical_csv(w, &dist)
        } else {
            write_outcomes_csv(w, &outcomes)
        }
    })
}

#[derive(Serialize)]
struct EstimateDoc {
    n: u32,
    num_walks: u64,
    mean_x_per_n: f64,
    mean_k_per_n: f64,
    eps_r: f64,
    eps_l: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    ci_eps_r: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ci_eps_l: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    resamples_used: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    resamples_skipped: Option<u64>,
    seed: u64,
}

fn cmd_estimate(args: EstimateArgs) -> Result<(), Error> {
    let file = File::open(&args.input)?;
    let outcomes = prwalk::io::read_outcomes_csv(BufReader::new(file), args.n)?;
    let stats = SampleStats::from_outcomes(&outcomes)?;
    let point = estimate_params(&stats)?;
    let mut doc = EstimateDoc {
        n: stats.n,
        num_walks: stats.num_walks,
        mean_x_per_n: stats.mean_x_per_n,
        mean_k_per_n: stats.mean_k_per_n,
        eps_r: point.eps_r(),
        eps_l: point.eps_l(),
        ci_eps_r: None,
        ci_eps_l: None,
        resamples_used: None,
        resamples_skipped: None,
        seed: args.seed,
    };
    if args.resamples > 0 {
        let ci = estimate_confidence(&outcomes, args.resamples, args.seed)?;
        doc.ci_eps_r = Some(ci.eps_r);
        doc.ci_eps_l = Some(ci.eps_l);
        doc.resamples_used = Some(ci.resamples_used);
        doc.resamples_skipped = Some(ci.resamples_skipped);
    }
    with_output(args.output, |w| {
        serde_json::to_writer_pretty(&mut *w, &doc).map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })?;
        writeln!(w)?;
        Ok(())
    })
}

fn cmd_figure1(args: Figure1Args) -> Result<(), Error> {
    let betas: Vec<f64> = args
        .betas
        .split(',')
        .map(|s| {
            s.trim().parse::<f64>().map_err(|_| Error::Parse {
                line: 0,
                message: format!("bad beta value {s:?}"),
            })
        })
        .collect::<Result<_, _>>()?;
    if !(args.f_step > 0.0) || args.f_max < args.f_min {
        return Err(Error::Parse {
            line: 0,
            message: "need f_step > 0 and f_max >= f_min".into(),
        });
    }
    let steps = ((args.f_max - args.f_min) / args.f_step).round() as u64;
    with_output(args.output, |w| {
        writeln!(w, "beta,f,mean_x_over_n,admissible")?;
        for &beta in &betas {
            for i in 0..=steps {
                let force = args.f_min + i as f64 * args.f_step;
                match from_thermo(beta, force) {
                    Ok(params) => {
                        // the drift per step is n-independent
                        let value = genfunc::mean_x(1, &params);
                        writeln!(w, "{},{},{},true", beta, force, format_probability(value))?;
                    }
                    Err(_) => {
                        writeln!(w, "{},{},,false", beta, force)?;
                    }
                }
            }
        }
        Ok(())
    })
}
