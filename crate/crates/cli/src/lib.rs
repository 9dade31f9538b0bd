//! Batch front end for the monogamy checks.
//!
//! Every report starts with a one-line JSON header holding the validated
//! [`RunConfig`] and tool version, followed by rows in a deterministic order.
//! The same configuration always reproduces the same bytes, whatever `--jobs` is.

pub mod commands;
pub mod config;
pub mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};

pub use commands::Outcome;
pub use config::{Args, Command, Format, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid --{field}: {message}")]
    Config { field: &'static str, message: String },
    #[error("input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] monogamy_core::Error),
    #[error("output: {0}")]
    Io(#[from] io::Error),
    #[error("output: {0}")]
    Serialize(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub(crate) fn serialize(e: impl std::fmt::Display) -> Self {
        CliError::Serialize(e.to_string())
    }

    /// 2 for anything that stops a run before a verdict.
    pub fn exit_code(&self) -> u8 {
        2
    }
}

/// What a finished run reports back to `main`.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub rows: usize,
    pub violations: usize,
    pub lines: Vec<String>,
}

impl RunSummary {
    pub fn exit_code(&self) -> u8 {
        u8::from(self.violations > 0)
    }
}

fn emit<R: report::Row>(config: &RunConfig, outcome: Outcome<R>) -> Result<RunSummary, CliError> {
    match &config.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            report::write_report(&mut BufWriter::new(file), config, &outcome.rows)?;
        }
        None => report::write_report(&mut io::stdout().lock(), config, &outcome.rows)?,
    }
    Ok(RunSummary { rows: outcome.rows.len(), violations: outcome.violations, lines: outcome.summary })
}

pub fn run(config: &RunConfig) -> Result<RunSummary, CliError> {
    match config.command {
        Command::Measure => emit(config, commands::measure(config)?),
        Command::Verify => emit(config, commands::verify(config)?),
        Command::Crosscheck => emit(config, commands::crosscheck(config)?),
        Command::LemmaSweep => emit(config, commands::lemma_sweep(config)?),
    }
}

/// Writes a report for `config` into `out` instead of its configured destination.
pub fn run_to<W: Write>(config: &RunConfig, out: &mut W) -> Result<RunSummary, CliError> {
    fn finish<R: report::Row, W: Write>(c: &RunConfig, o: Outcome<R>, out: &mut W) -> Result<RunSummary, CliError> {
        report::write_report(out, c, &o.rows)?;
        Ok(RunSummary { rows: o.rows.len(), violations: o.violations, lines: o.summary })
    }
    match config.command {
        Command::Measure => finish(config, commands::measure(config)?, out),
        Command::Verify => finish(config, commands::verify(config)?, out),
        Command::Crosscheck => finish(config, commands::crosscheck(config)?, out),
        Command::LemmaSweep => finish(config, commands::lemma_sweep(config)?, out),
    }
}
