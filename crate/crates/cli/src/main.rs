//! `wconv` — config-driven experiment runner for the rearrangement and
//! weighted-convolution verification library.
//!
//! `wconv run <config.json>` executes one task; `wconv sweep <config.json>`
//! runs a parameter sweep. Each run writes one CSV (fixed, versioned columns)
//! and one JSON (full detail, traces included). Pass/fail is data in the
//! rows; the exit status is nonzero only for schema or I/O errors.

mod config;
mod report;
mod tasks;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use config::{ExperimentConfig, Task};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

#[derive(Parser)]
#[command(name = "wconv", about = "weighted convolution inequality verification runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute the task described by a JSON config.
    Run(RunArgs),
    /// Execute a parameter sweep described by a JSON config.
    Sweep(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to the JSON experiment config.
    config: PathBuf,
    /// Directory for the CSV/JSON reports (default: the config's directory).
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Seed override for randomized tasks.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for concurrent sweeps (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Override the scan grid's lower endpoint.
    #[arg(long)]
    t_min: Option<f64>,
    /// Override the scan grid's upper endpoint.
    #[arg(long)]
    t_max: Option<f64>,
    /// Override the grid cell width.
    #[arg(long)]
    grid_h: Option<f64>,
    /// Override the grid half-length.
    #[arg(long = "grid-L")]
    grid_l: Option<f64>,
}

fn main() {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Run(args) => run(args, false),
        Command::Sweep(args) => run(args, true),
    };
    if let Err(err) = code {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run(args: &RunArgs, expect_sweep: bool) -> Result<()> {
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("thread pool already initialized")?;
    }
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if expect_sweep && cfg.task != Task::Sweep {
        bail!("`wconv sweep` expects a config with task = \"sweep\", found \"{}\"", cfg.task.name());
    }

    // flag overrides
    if let Some(seed) = args.seed {
        cfg.seed = Some(seed);
    }
    if args.t_min.is_some() || args.t_max.is_some() {
        let mut scan = cfg.tscan();
        if let Some(t) = args.t_min {
            scan.t_min = t;
        }
        if let Some(t) = args.t_max {
            scan.t_max = t;
        }
        cfg.tscan = Some(scan);
    }
    if args.grid_h.is_some() || args.grid_l.is_some() {
        let mut grid = cfg.grid.unwrap_or(config::GridConfig { h: 1e-3, l: 1.0 });
        if let Some(h) = args.grid_h {
            grid.h = h;
        }
        if let Some(l) = args.grid_l {
            grid.l = l;
        }
        cfg.grid = Some(grid);
    }

    let base = args.config.parent().unwrap_or(Path::new(".")).to_path_buf();
    let needs_seed = matches!(
        cfg.task,
        Task::VerifyLemma1 | Task::Sweep | Task::EstimateNorm | Task::TwoSided | Task::Rearrange
    ) && uses_randomness(&cfg);
    let seed = if needs_seed { cfg.require_seed()? } else { cfg.seed.unwrap_or(0) };

    let started = Instant::now();
    let rows = tasks::run_task(&cfg, &base, seed)?;
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;

    let out_dir = args.out_dir.clone().unwrap_or_else(|| base.clone());
    std::fs::create_dir_all(&out_dir)
        .with_context(|| format!("cannot create output directory {}", out_dir.display()))?;
    let stem = args
        .config
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "report".into());
    let csv_path = cfg
        .out_csv
        .clone()
        .map(|p| if p.is_absolute() { p } else { out_dir.join(p) })
        .unwrap_or_else(|| out_dir.join(format!("{stem}.csv")));
    let json_path = cfg
        .out_json
        .clone()
        .map(|p| if p.is_absolute() { p } else { out_dir.join(p) })
        .unwrap_or_else(|| out_dir.join(format!("{stem}.json")));

    let timestamp_ms = SystemTime::now().duration_since(UNIX_EPOCH).unwrap().as_millis();
    report::write_csv(&csv_path, cfg.task.name(), &rows, timestamp_ms)?;
    let config_echo = serde_json::to_value(&cfg)?;
    report::write_json(&json_path, cfg.task.name(), &config_echo, &rows, wall_ms, timestamp_ms)?;

    println!(
        "{}: {} rows -> {} ({} ms)",
        cfg.task.name(),
        rows.len(),
        csv_path.display(),
        wall_ms.round()
    );
    Ok(())
}

/// Tasks that only use the seed when a random source is configured.
fn uses_randomness(cfg: &ExperimentConfig) -> bool {
    match cfg.task {
        Task::VerifyLemma1 | Task::Sweep => true,
        Task::Rearrange => {
            matches!(cfg.grid_source, Some(config::GridSource::Random { .. }))
        }
        Task::EstimateNorm | Task::TwoSided => {
            matches!(cfg.family, Some(config::FamilySpec::Random { .. }))
        }
        _ => false,
    }
}
