use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use log::{info, warn};
use overinterp::harness::{self, ExperimentConfig, Kind, RunReport};

#[derive(Parser)]
#[command(
    name = "overinterp",
    version,
    about = "Zero-count experiments for polynomial and rational approximants: JSON in, CSV out"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Interpolation remainder bound over randomized trials.
    LagrangeBound(Common),
    /// Coefficient-decay certificates on synthesized witnesses.
    CoeffDecay(Common),
    /// Pade row stabilization and vanishing orders.
    PadeRow(Common),
    /// Classify a function by the denominator trace.
    ClassifyRational(Common),
    /// Bernstein-Walsh checks, F_n masks and circle selection.
    CircleSelect(Common),
    /// Errors of approximants on a circle.
    OverconvRate(Common),
    /// Minimal-degree curve through a point set, with Bezout checks.
    CurveFit(Common),
    /// Growth exponent of intersection counts.
    AlphaExponent(Common),
}

#[derive(Args)]
struct Common {
    /// JSON config; defaults for the subcommand when absent.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory; overrides the config, defaults to `out/<kind>`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// 0 = errors only, 1 = summary, 2 = per-step, 3 = debug.
    #[arg(long, default_value_t = 1)]
    verbosity: u8,
    /// Print the effective config and exit.
    #[arg(long)]
    print_config: bool,
}

impl Command {
    fn split(self) -> (Kind, Common) {
        match self {
            Command::LagrangeBound(c) => (Kind::LagrangeBound, c),
            Command::CoeffDecay(c) => (Kind::CoeffDecay, c),
            Command::PadeRow(c) => (Kind::PadeRow, c),
            Command::ClassifyRational(c) => (Kind::ClassifyRational, c),
            Command::CircleSelect(c) => (Kind::CircleSelect, c),
            Command::OverconvRate(c) => (Kind::OverconvRate, c),
            Command::CurveFit(c) => (Kind::CurveFit, c),
            Command::AlphaExponent(c) => (Kind::AlphaExponent, c),
        }
    }
}

fn effective_config(kind: Kind, args: &Common) -> anyhow::Result<ExperimentConfig> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::new(kind),
    };
    if cfg.kind != kind {
        bail!("config is for {} but the subcommand is {kind}", cfg.kind);
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &args.out {
        cfg.out = Some(out.clone());
    }
    if cfg.out.is_none() {
        cfg.out = Some(PathBuf::from("out").join(kind.name()));
    }
    Ok(cfg)
}

fn summarize(rep: &RunReport) {
    for (label, v) in &rep.verdicts {
        info!("{label}: {v}");
    }
    let t = rep.tally;
    info!(
        "{} inequalities checked, {} violated, {} errors ({} unresolved), {} ms",
        t.checked, t.violations, t.errors, t.unresolved, rep.wall_clock_ms
    );
    for row in rep.rows.iter().filter(|r| !r.holds) {
        warn!("violated [{}] {}: {} > {} ({})", row.module, row.context, row.lhs, row.rhs, row.anchor);
    }
    for e in &rep.errors {
        log::debug!("{}: {}", e.context, e.message);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = cli.command.split();
    let level = match args.verbosity {
        0 => log::LevelFilter::Error,
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();

    let result = (|| -> anyhow::Result<bool> {
        harness::init_threads()?;
        let cfg = effective_config(kind, &args)?;
        if args.print_config {
            println!("{}", cfg.to_json());
            return Ok(true);
        }
        let rep = harness::run(&cfg)?;
        let out = cfg.out.as_ref().expect("output directory set");
        rep.write(out).with_context(|| format!("writing {}", out.display()))?;
        summarize(&rep);
        info!("wrote {}", out.display());
        Ok(rep.success())
    })();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            log::error!("{e:#}");
            ExitCode::from(2)
        }
    }
}
