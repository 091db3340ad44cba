//! Experiment configuration: JSON file values overlaid by command-line flags.

use qet_core::protocol::AcceptRule;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Qip,
    Qsd,
    Qmip,
    Soundness,
    DeltaSweep,
    Table1,
    LevelSet,
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Experiment::Qip => "qip",
            Experiment::Qsd => "qsd",
            Experiment::Qmip => "qmip",
            Experiment::Soundness => "soundness",
            Experiment::DeltaSweep => "delta-sweep",
            Experiment::Table1 => "table1",
            Experiment::LevelSet => "level-set",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainConfig {
    pub z: Vec<f64>,
    pub xx: Vec<f64>,
}

/// Values read from a config file; every field is optional.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub experiment: Option<Experiment>,
    pub h: Option<f64>,
    pub k: Option<f64>,
    pub chain: Option<ChainConfig>,
    pub n_shot: Option<u64>,
    pub n_unitaries: Option<usize>,
    pub n_thetas: Option<usize>,
    pub n_provers: Option<usize>,
    pub n_games: Option<u64>,
    pub n_deltas: Option<usize>,
    pub delta_span: Option<f64>,
    pub n_samples: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub rule: Option<AcceptRule>,
}

/// The merged configuration a run actually uses.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub h: f64,
    pub k: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainConfig>,
    pub n_shot: u64,
    pub n_unitaries: usize,
    pub n_thetas: usize,
    pub n_provers: usize,
    pub n_games: u64,
    pub n_deltas: usize,
    pub delta_span: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub rule: AcceptRule,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| ConfigError(format!("invalid config {}: {e}", path.display())))
    }

    /// `self` with every field set in `over` replaced.
    pub fn overlay(self, over: FileConfig) -> FileConfig {
        FileConfig {
            experiment: over.experiment.or(self.experiment),
            h: over.h.or(self.h),
            k: over.k.or(self.k),
            chain: over.chain.or(self.chain),
            n_shot: over.n_shot.or(self.n_shot),
            n_unitaries: over.n_unitaries.or(self.n_unitaries),
            n_thetas: over.n_thetas.or(self.n_thetas),
            n_provers: over.n_provers.or(self.n_provers),
            n_games: over.n_games.or(self.n_games),
            n_deltas: over.n_deltas.or(self.n_deltas),
            delta_span: over.delta_span.or(self.delta_span),
            n_samples: over.n_samples.or(self.n_samples),
            seed: over.seed.or(self.seed),
            out: over.out.or(self.out),
            rule: over.rule.or(self.rule),
        }
    }

    /// Fills defaults and validates. `experiment` comes from the subcommand.
    pub fn resolve(self, experiment: Experiment) -> Result<ExperimentConfig, ConfigError> {
        if let Some(e) = self.experiment {
            if e != experiment {
                return Err(ConfigError(format!("config file is for `{e}`, but `{experiment}` was requested")));
            }
        }
        let cfg = ExperimentConfig {
            experiment,
            h: self.h.unwrap_or(1.0),
            k: self.k.unwrap_or(1.0),
            chain: self.chain,
            n_shot: self.n_shot.unwrap_or(10_000),
            n_unitaries: self.n_unitaries.unwrap_or(500),
            n_thetas: self.n_thetas.unwrap_or(600),
            n_provers: self.n_provers.unwrap_or(3),
            n_games: self.n_games.unwrap_or(1),
            n_deltas: self.n_deltas.unwrap_or(1001),
            delta_span: self.delta_span.unwrap_or(std::f64::consts::FRAC_PI_2),
            n_samples: self.n_samples.unwrap_or(8),
            seed: self.seed.unwrap_or(0),
            out: self.out.unwrap_or_else(|| PathBuf::from("qet-out")),
            rule: self.rule.unwrap_or_default(),
        };
        for (name, v) in [("h", cfg.h), ("k", cfg.k), ("delta_span", cfg.delta_span)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ConfigError(format!("{name} must be positive and finite, got {v}")));
            }
        }
        let counts = [
            ("n_shot", cfg.n_shot as usize),
            ("n_unitaries", cfg.n_unitaries),
            ("n_thetas", cfg.n_thetas),
            ("n_games", cfg.n_games as usize),
            ("n_deltas", cfg.n_deltas),
            ("n_samples", cfg.n_samples),
        ];
        for (name, v) in counts {
            if v == 0 {
                return Err(ConfigError(format!("{name} must be positive")));
            }
        }
        if cfg.n_provers < 2 {
            return Err(ConfigError(format!("n_provers must be at least 2, got {}", cfg.n_provers)));
        }
        Ok(cfg)
    }
}
