use std::path::{Path, PathBuf};

use elastika_core::spectrum::{DEFAULT_DENOM_BOUND, DEFAULT_GRADING_BOUND};
use serde::Deserialize;

use crate::Failure;

pub const DEFAULT_KMAX: u64 = 5;
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Optional run file given with --config; every key is optional and an
/// unknown key is an error.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub bound: Option<u64>,
    pub denoms: Option<u64>,
    pub kmax: Option<u64>,
    pub budget: Option<u64>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
    }
}

/// Flags as given on the command line, before defaults.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub bound: Option<u64>,
    pub denoms: Option<u64>,
    pub kmax: Option<u64>,
    pub budget: Option<u64>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: String,
    pub input: Option<PathBuf>,
    pub bound: u64,
    pub denoms: u64,
    pub kmax: u64,
    pub budget: u64,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub jobs: Option<usize>,
}

impl RunConfig {
    /// Command-line flags win over the run file, the run file over defaults.
    pub fn resolve(command: &str, input: Option<PathBuf>, flags: Overrides, file: ConfigFile) -> Result<Self, Failure> {
        let cfg = RunConfig {
            command: command.to_string(),
            input,
            bound: flags.bound.or(file.bound).unwrap_or(DEFAULT_GRADING_BOUND),
            denoms: flags.denoms.or(file.denoms).unwrap_or(DEFAULT_DENOM_BOUND),
            kmax: flags.kmax.or(file.kmax).unwrap_or(DEFAULT_KMAX),
            budget: flags.budget.or(file.budget).unwrap_or(DEFAULT_BUDGET),
            out: flags.out.or(file.out),
            seed: flags.seed.or(file.seed).unwrap_or(0),
            jobs: flags.jobs.or(file.jobs),
        };
        for (name, v) in [("bound", cfg.bound), ("denoms", cfg.denoms), ("kmax", cfg.kmax), ("budget", cfg.budget)] {
            if v == 0 {
                return Err(Failure::Validation(format!("--{name} must be positive")));
            }
        }
        if cfg.jobs == Some(0) {
            return Err(Failure::Validation("--jobs must be positive".into()));
        }
        Ok(cfg)
    }

    pub fn budget(&self) -> elastika_core::Budget {
        elastika_core::Budget::new(self.budget)
    }
}
