//! Command-line front end.
//!
//! Four subcommands cover the three figure pipelines plus a calculator:
//!
//! * `throughput` runs the configured sweep and writes the mean-throughput
//!   table (CSV, optionally an SVG chart);
//! * `outage` runs the same sweep with an outage target from `--rate` and
//!   writes the outage table and log-scale chart;
//! * `cdf` collects User 1 throughput samples at one SNR point and writes
//!   the empirical CDF;
//! * `eval` evaluates a single strategy on explicit power gains and prints
//!   the resulting rate report, an oracle hatch for debugging.
//!
//! Every subcommand is a thin shell over library calls; anything printed
//! or written here can be reproduced by calling the library with the same
//! inputs.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::allocator::{objective_dpc, optimize_dpc, optimize_dpc_with_ordering, optimize_lnc, OptimizerSettings};
use crate::harness::config::{load_config, ConfigError};
use crate::harness::csv::{cdf_csv, sweep_csv};
use crate::harness::svg::{cdf_svg, outage_svg, throughput_svg, SvgError};
use crate::model::{
    ChannelRealization, DpcOrderingPair, FavoredDest, ModelError, OutageSpec, PowerAllocation,
    SnrPoint, StrategyId,
};
use crate::montecarlo::{empirical_cdf, sweep};
use crate::rates::{rate_report, RateReport, RateReportError, UserId};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Report(#[from] RateReportError),
    #[error(transparent)]
    Svg(#[from] SvgError),
    #[error("cannot write {path}: {source}")]
    WriteFile {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("output error: {0}")]
    Output(#[from] io::Error),
    #[error("{0}")]
    Arg(String),
}

#[derive(Parser)]
#[command(
    name = "coopnc",
    version,
    about = "Monte Carlo comparison of cooperative relaying strategies,\n\
             with and without network coding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mean throughput vs SNR for the configured strategies.
    Throughput(SweepArgs),
    /// Outage probability vs SNR for a target rate.
    Outage(OutageArgs),
    /// Empirical CDF of User 1 throughput at one SNR point.
    Cdf(CdfArgs),
    /// Evaluate one strategy on explicit link power gains.
    Eval(EvalArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Destination for the CSV table.
    #[arg(long)]
    csv: PathBuf,
    /// Optional destination for an SVG chart.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Override the config's master seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct OutageArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Target rate r in b/s; the outage thresholds follow from r and the
    /// configured bandwidth.
    #[arg(long)]
    rate: f64,
}

#[derive(Args)]
struct CdfArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// SNR point in dB at which to sample the CDF.
    #[arg(long)]
    snr_db: f64,
}

#[derive(Args)]
struct EvalArgs {
    /// SNR in dB.
    #[arg(long)]
    snr_db: f64,
    /// Strategy: rdf, pdf, lnc-rdf or dpc-nc-pdf.
    #[arg(long)]
    strategy: String,
    /// Six comma-separated link power gains |h|^2, ordered
    /// S1->S2, S2->S1, S1->D1, S1->D2, S2->D1, S2->D2.
    #[arg(long)]
    gains: String,
    /// Fixed power allocation f11,f12,f21,f22 (default: optimize).
    #[arg(long)]
    alloc: Option<String>,
    /// Fixed encoding ordering p1,p2 with values d1 or d2 (default: best).
    #[arg(long)]
    ordering: Option<String>,
}

fn parse_f64_list(what: &str, text: &str, n: usize) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != n {
        return Err(CliError::Arg(format!(
            "expected {n} comma-separated {what} values, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Arg(format!("{what} value {p:?} is not a number")))
        })
        .collect()
}

fn parse_ordering(text: &str) -> Result<DpcOrderingPair, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Arg(format!(
            "expected an ordering of the form d1,d2, got {text:?}"
        )));
    }
    let pi1: FavoredDest = parts[0].trim().parse()?;
    let pi2: FavoredDest = parts[1].trim().parse()?;
    Ok(DpcOrderingPair { pi1, pi2 })
}

fn write_file(path: &PathBuf, contents: String) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|source| CliError::WriteFile { path: path.clone(), source })
}

fn run_throughput(args: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let config = load_config(&args.config)?;
    let plan = config.monte_carlo_plan(args.seed, None)?;
    let profile = config.fading_profile()?;
    let result = sweep(&plan, &profile);
    write_file(&args.csv, sweep_csv(&result))?;
    writeln!(out, "wrote {}", args.csv.display())?;
    if let Some(svg_path) = &args.svg {
        write_file(svg_path, throughput_svg(&result)?)?;
        writeln!(out, "wrote {}", svg_path.display())?;
    }
    Ok(())
}

fn run_outage(args: &OutageArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let config = load_config(&args.sweep.config)?;
    let bandwidth = config.outage.as_ref().map_or(1.0, |o| o.bandwidth);
    let spec = OutageSpec::new(args.rate, bandwidth)?;
    let plan = config.monte_carlo_plan(args.sweep.seed, Some(spec))?;
    let profile = config.fading_profile()?;
    let result = sweep(&plan, &profile);
    write_file(&args.sweep.csv, sweep_csv(&result))?;
    writeln!(out, "wrote {}", args.sweep.csv.display())?;
    if let Some(svg_path) = &args.sweep.svg {
        write_file(svg_path, outage_svg(&result)?)?;
        writeln!(out, "wrote {}", svg_path.display())?;
    }
    Ok(())
}

fn run_cdf(args: &CdfArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let config = load_config(&args.sweep.config)?;
    SnrPoint::from_db(args.snr_db)?;
    let plan = config.monte_carlo_plan(args.sweep.seed, None)?;
    let profile = config.fading_profile()?;
    let curves = empirical_cdf(&plan, &profile, args.snr_db);
    write_file(&args.sweep.csv, cdf_csv(&curves))?;
    writeln!(out, "wrote {}", args.sweep.csv.display())?;
    if let Some(svg_path) = &args.sweep.svg {
        write_file(svg_path, cdf_svg(&curves)?)?;
        writeln!(out, "wrote {}", svg_path.display())?;
    }
    Ok(())
}

/// Evaluation plan for `eval`, resolved from the optional flags.
fn eval_report(args: &EvalArgs) -> Result<(RateReport, Option<PowerAllocation>, Option<DpcOrderingPair>), CliError> {
    let strategy: StrategyId = args.strategy.parse()?;
    let gains = parse_f64_list("gain", &args.gains, 6)?;
    let ch = ChannelRealization::from_power_gains(gains.try_into().expect("length checked"))?;
    let snr = SnrPoint::from_db(args.snr_db)?;
    let alloc = args
        .alloc
        .as_deref()
        .map(|text| {
            let f = parse_f64_list("allocation", text, 4)?;
            PowerAllocation::new(f[0], f[1], f[2], f[3]).map_err(CliError::from)
        })
        .transpose()?;
    let ordering = args.ordering.as_deref().map(parse_ordering).transpose()?;

    let settings = OptimizerSettings::default();
    let (alloc, ordering) = match strategy {
        StrategyId::Rdf | StrategyId::Pdf => (alloc, ordering),
        StrategyId::LncRdf => {
            let alloc = alloc.unwrap_or_else(|| optimize_lnc(&ch, snr, &settings).best_alloc);
            (Some(alloc), ordering)
        }
        StrategyId::DpcNcPdf => match (alloc, ordering) {
            (Some(a), Some(p)) => (Some(a), Some(p)),
            (Some(a), None) => {
                // Fixed allocation: pick the best ordering for it.
                let best = DpcOrderingPair::ALL
                    .into_iter()
                    .map(|p| (p, objective_dpc(&ch, snr, &a, p)))
                    .reduce(|best, cand| if cand.1 > best.1 { cand } else { best })
                    .expect("nonempty orderings")
                    .0;
                (Some(a), Some(best))
            }
            (None, Some(p)) => {
                let r = optimize_dpc_with_ordering(&ch, snr, &settings, p);
                (Some(r.best_alloc), Some(p))
            }
            (None, None) => {
                let r = optimize_dpc(&ch, snr, &settings);
                (Some(r.best_alloc), r.best_ordering)
            }
        },
    };
    let report = rate_report(strategy, &ch, snr, alloc.as_ref(), ordering)?;
    Ok((report, alloc, ordering))
}

fn run_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (report, alloc, ordering) = eval_report(args)?;
    writeln!(out, "strategy: {}", report.strategy().label())?;
    if report.strategy().needs_allocation() {
        let a = alloc.expect("network-coded strategies carry an allocation");
        writeln!(
            out,
            "alloc: {:.9},{:.9},{:.9},{:.9}",
            a.f11(),
            a.f12(),
            a.f21(),
            a.f22()
        )?;
    }
    if let Some(p) = ordering {
        writeln!(out, "ordering: {p}")?;
    }
    for user in UserId::ALL {
        writeln!(out, "mutual_info_user{}: {:.9}", user.index() + 1, report.mutual_info(user))?;
    }
    for user in UserId::ALL {
        writeln!(out, "throughput_user{}: {:.9}", user.index() + 1, report.throughput(user))?;
    }
    writeln!(out, "network_throughput: {:.9}", report.network_throughput())?;
    Ok(())
}

fn run(command: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Throughput(args) => run_throughput(args, out),
        Command::Outage(args) => run_outage(args, out),
        Command::Cdf(args) => run_cdf(args, out),
        Command::Eval(args) => run_eval(args, out),
    }
}

/// Entry point with an injectable output sink; returns the process exit
/// code. Errors print to stderr, clap usage messages follow clap's own
/// stream conventions.
pub fn cli_main_with_output<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return err.exit_code();
        }
    };
    match run(&cli.command, out) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            let mut source = std::error::Error::source(&err);
            while let Some(cause) = source {
                eprintln!("  caused by: {cause}");
                source = cause.source();
            }
            1
        }
    }
}

/// Entry point used by the binary.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    cli_main_with_output(argv, &mut io::stdout())
}

// ---------------------------------------------------------------------------
