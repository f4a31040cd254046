//! `beamhop`: run a beam-hopping experiment from a TOML config.
//!
//! Every flag can also be set through an environment variable with the
//! `BEAMHOP_` prefix (`BEAMHOP_CONFIG`, `BEAMHOP_SCHEDULER`, `BEAMHOP_SEED`,
//! `BEAMHOP_OUT`, `BEAMHOP_WORKERS`, `BEAMHOP_SWEEP_IMAX`). Flags win over
//! the environment, which wins over the file.
//!
//! Exit status: 0 on success, 2 for configuration errors, 3 for simulation
//! errors, 4 for I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use beamhop::config::ExperimentConfig;
use beamhop::experiment::run_experiment;
use beamhop::output::emit_results;
use beamhop::parallel::ExecMode;
use beamhop::scheduler::Scheme;
use beamhop::Error;
use clap::Parser;

#[derive(Debug, Parser)]
#[command(name = "beamhop", version, about = "Beam-hopping LEO downlink simulator")]
struct Args {
    /// Experiment config (TOML).
    #[arg(long, env = "BEAMHOP_CONFIG")]
    config: PathBuf,

    /// Scheduler(s) to run, comma separated: distance_limit, no_limit, round_robin.
    #[arg(long, env = "BEAMHOP_SCHEDULER", value_delimiter = ',')]
    scheduler: Vec<Scheme>,

    /// Seed(s), comma separated.
    #[arg(long, env = "BEAMHOP_SEED", value_delimiter = ',')]
    seed: Vec<u64>,

    /// Output directory.
    #[arg(long, env = "BEAMHOP_OUT")]
    out: Option<PathBuf>,

    /// Worker threads; 0 uses every core.
    #[arg(long, env = "BEAMHOP_WORKERS")]
    workers: Option<usize>,

    /// I_max values to sweep, comma separated.
    #[arg(long = "sweep-imax", env = "BEAMHOP_SWEEP_IMAX", value_delimiter = ',')]
    sweep_imax: Vec<usize>,

    /// Run everything on the calling thread.
    #[arg(long)]
    sequential: bool,
}

fn run(args: Args) -> Result<(), Error> {
    let mut cfg = ExperimentConfig::from_file(&args.config)?;
    if !args.scheduler.is_empty() {
        cfg.scheduler = args.scheduler;
    }
    if !args.seed.is_empty() {
        cfg.seed = args.seed;
    }
    if !args.sweep_imax.is_empty() {
        cfg.i_max = args.sweep_imax;
    }
    if let Some(out) = args.out {
        cfg.out_dir = out.to_string_lossy().into_owned();
    }
    if let Some(w) = args.workers {
        cfg.workers = w;
    }
    cfg.validate()?;

    let mode = if args.sequential { ExecMode::Sequential } else { ExecMode::Parallel };
    let result = run_experiment(&cfg, mode, cfg.workers)?;
    let out = cfg.out_path();
    emit_results(&result, &out)?;

    for o in &result.runs {
        let r = &o.report;
        let sat = r.system_satisfaction.map_or("-".to_string(), |s| format!("{s:.4}"));
        let med = r.median_sinr_db().map_or("-".to_string(), |s| format!("{s:.2}"));
        println!(
            "{:<15} I_max={:<4} seed={:<6} throughput={:>9.2} Mbps/sat  median_sinr={med} dB  satisfaction={sat}",
            r.scheme.name(),
            r.i_max,
            r.seed,
            r.mean_satellite_throughput_mbps,
        );
    }
    println!("results written to {}", out.display());
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("beamhop: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
