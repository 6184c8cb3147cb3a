//! Run configuration shared by every subcommand.

use std::path::PathBuf;

use clap::ValueEnum;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Exact rationals; the default and the only mode `verify` accepts.
    Exact,
    /// f64 elimination, for exploratory runs on large chains.
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    /// Relative tolerance for float-mode ties.
    pub tol: f64,
    /// Largest family `enumerate` and `verify` will evaluate.
    pub cap: usize,
    pub format: Format,
    /// Worker threads; 0 lets the pool decide.
    pub workers: usize,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::Exact,
            tol: 1e-9,
            cap: kch_core::extremal::DEFAULT_CAP,
            format: Format::Text,
            workers: 0,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn validate(self) -> Result<RunConfig, CliError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Config(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.cap == 0 {
            return Err(CliError::Config("cap must be at least 1".into()));
        }
        Ok(self)
    }

    /// Runs `f` on a pool with the configured worker count.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(pool.install(f))
    }
}
