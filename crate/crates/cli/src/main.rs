mod config;
mod experiments;
mod manifest;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{ConfigError, Experiment, FileConfig};
use log::{error, info};
use qet_core::protocol::AcceptRule;
use qet_core::Error;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "qet", version, about = "Energy-teleportation interactive proof experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Honest single-prover proof; with a `chain` config, an exact chain round
    Qip(Flags),
    /// State discrimination game for both verifier choices
    Qsd(Flags),
    /// Several honest provers on disjoint sites
    Qmip(Flags),
    /// Random-state attack sweep
    Soundness(Flags),
    /// Energy around the optimal angle
    DeltaSweep(Flags),
    /// Exact and simulated energies at the reference parameters
    Table1(Flags),
    /// Parameter pairs sharing the optimal angle or post-round expectations
    LevelSet(Flags),
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Strict,
    Ztest,
}

#[derive(Args)]
struct Flags {
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    n_shot: Option<u64>,
    #[arg(long)]
    n_unitaries: Option<usize>,
    #[arg(long)]
    n_thetas: Option<usize>,
    #[arg(long)]
    n_provers: Option<usize>,
    /// Games per verifier choice
    #[arg(long)]
    n_games: Option<u64>,
    #[arg(long)]
    n_deltas: Option<usize>,
    /// Half-width of the offset grid, radians
    #[arg(long)]
    delta_span: Option<f64>,
    #[arg(long)]
    n_samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    rule: Option<RuleArg>,
    /// JSON config file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Flags {
    fn overrides(&self) -> FileConfig {
        FileConfig {
            h: self.h,
            k: self.k,
            n_shot: self.n_shot,
            n_unitaries: self.n_unitaries,
            n_thetas: self.n_thetas,
            n_provers: self.n_provers,
            n_games: self.n_games,
            n_deltas: self.n_deltas,
            delta_span: self.delta_span,
            n_samples: self.n_samples,
            seed: self.seed,
            out: self.out.clone(),
            rule: self.rule.map(|r| match r {
                RuleArg::Strict => AcceptRule::Strict,
                RuleArg::Ztest => AcceptRule::ZTest,
            }),
            ..Default::default()
        }
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_CAPACITY: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::State(_) | Error::Locc(_) => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

fn configure_threads() -> Result<(), ConfigError> {
    let Ok(raw) = std::env::var("QET_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| ConfigError(format!("QET_THREADS must be a non-negative integer, got {raw:?}")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| ConfigError(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let (experiment, flags) = match &cli.command {
        Command::Qip(f) => (Experiment::Qip, f),
        Command::Qsd(f) => (Experiment::Qsd, f),
        Command::Qmip(f) => (Experiment::Qmip, f),
        Command::Soundness(f) => (Experiment::Soundness, f),
        Command::DeltaSweep(f) => (Experiment::DeltaSweep, f),
        Command::Table1(f) => (Experiment::Table1, f),
        Command::LevelSet(f) => (Experiment::LevelSet, f),
    };

    let cfg = flags
        .config
        .as_deref()
        .map(FileConfig::load)
        .transpose()
        .and_then(|file| Ok(file.unwrap_or_default().overlay(flags.overrides()).resolve(experiment)?))
        .and_then(|cfg| configure_threads().map(|_| cfg));
    let cfg = match cfg {
        Ok(cfg) => cfg,
        Err(e) => {
            error!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Err(e) = std::fs::create_dir_all(&cfg.out) {
        error!("cannot create {}: {e}", cfg.out.display());
        return ExitCode::from(EXIT_USAGE);
    }

    let start = Instant::now();
    let result = match experiment {
        Experiment::Qip => experiments::qip(&cfg),
        Experiment::Qsd => experiments::qsd(&cfg),
        Experiment::Qmip => experiments::qmip(&cfg),
        Experiment::Soundness => experiments::soundness(&cfg),
        Experiment::DeltaSweep => experiments::delta_sweep(&cfg),
        Experiment::Table1 => experiments::table1(&cfg),
        Experiment::LevelSet => experiments::level_set(&cfg),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            error!("{experiment}: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let wall_time_s = start.elapsed().as_secs_f64();

    let outputs = match manifest::output_files(&cfg.out, &outcome.files) {
        Ok(o) => o,
        Err(e) => {
            error!("cannot hash outputs: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let m = manifest::Manifest {
        experiment: experiment.to_string(),
        config: &cfg,
        seed: cfg.seed,
        wall_time_s,
        summary: outcome.summary,
        outputs,
    };
    let path = cfg.out.join("manifest.json");
    let written = serde_json::to_string_pretty(&m)
        .map_err(|e| e.to_string())
        .and_then(|s| std::fs::write(&path, s + "\n").map_err(|e| e.to_string()));
    if let Err(e) = written {
        error!("cannot write {}: {e}", path.display());
        return ExitCode::from(EXIT_USAGE);
    }
    info!("{experiment} done in {wall_time_s:.2}s: {}", m.summary);
    ExitCode::SUCCESS
}
