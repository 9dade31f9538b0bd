use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use monogamy_core::{Inequality, MeasureKind, MAX_QUBITS};
use serde::Serialize;

use crate::CliError;

pub const DEFAULT_GRID: usize = 201;
pub const MIN_GRID: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Measures of one state file: the A|rest cut and every A–Bᵢ pair.
    Measure,
    /// Monogamy relations over a seeded Haar ensemble.
    Verify,
    /// Closed-form two-qubit measures against direct minimization.
    Crosscheck,
    /// Scalar inequalities on the quarter disk plus random helper inputs.
    LemmaSweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Bures,
    Geometric,
    Concurrence,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "monogamy", version, about = "Monogamy of the Bures and geometric measures of entanglement")]
pub struct Args {
    #[arg(long, value_enum)]
    pub command: Command,
    #[arg(long)]
    pub n_qubits: Option<usize>,
    /// Number of random states (verify, crosscheck) or random inputs (lemma-sweep).
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated powers, each ≥ 1.
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 2.0])]
    pub eta: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, default_value_t = 1.0)]
    pub k_prime: f64,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [KindArg::All])]
    pub kind: Vec<KindArg>,
    /// Relations to check in verify: ckw, power, sorted-power, split-power.
    #[arg(long, value_delimiter = ',', value_parser = parse_inequality)]
    pub inequality: Vec<Inequality>,
    /// Lattice points per axis for lemma-sweep.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    /// Qubit order applied before checking, e.g. `2,0,1,3` makes old qubit 2 the new A.
    #[arg(long, value_delimiter = ',')]
    pub permutation: Option<Vec<usize>>,
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Report destination; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    /// Worker threads; 0 uses every logical processor.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

fn parse_inequality(s: &str) -> Result<Inequality, String> {
    match s.parse::<Inequality>().map_err(|e| e.to_string())? {
        Inequality::SplitPowerUnit => Ok(Inequality::SplitPower),
        other => Ok(other),
    }
}

/// Validated run settings; written verbatim into every report header.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub n_qubits: usize,
    pub samples: usize,
    pub seed: u64,
    pub eta: Vec<f64>,
    pub k: f64,
    pub k_prime: f64,
    pub m: usize,
    pub kinds: Vec<MeasureKind>,
    pub inequalities: Vec<Inequality>,
    pub grid: usize,
    pub permutation: Option<Vec<usize>>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub jobs: usize,
}

fn config_err(field: &'static str, message: impl Into<String>) -> CliError {
    CliError::Config { field, message: message.into() }
}

fn at_least_one(field: &'static str, v: f64) -> Result<(), CliError> {
    if !v.is_finite() || v < 1.0 {
        return Err(config_err(field, format!("{v} must be a finite number >= 1")));
    }
    Ok(())
}

impl RunConfig {
    pub fn from_args(args: Args) -> Result<Self, CliError> {
        let mut kinds: Vec<MeasureKind> = Vec::new();
        for k in &args.kind {
            let add: &[MeasureKind] = match k {
                KindArg::All => &MeasureKind::ALL,
                KindArg::Bures => &[MeasureKind::Bures],
                KindArg::Geometric => &[MeasureKind::Geometric],
                KindArg::Concurrence => &[MeasureKind::Concurrence],
            };
            kinds.extend(add);
        }
        kinds.sort();
        kinds.dedup();

        if args.eta.is_empty() {
            return Err(config_err("eta", "at least one power is required"));
        }
        for &e in &args.eta {
            at_least_one("eta", e)?;
        }
        at_least_one("k", args.k)?;
        at_least_one("k-prime", args.k_prime)?;

        let explicit_split = args.inequality.contains(&Inequality::SplitPower);
        let mut inequalities = args.inequality.clone();
        inequalities.sort();
        inequalities.dedup();

        let n_qubits = match args.command {
            Command::Verify => {
                let n = args.n_qubits.ok_or_else(|| config_err("n-qubits", "verify needs --n-qubits"))?;
                if !(3..=MAX_QUBITS).contains(&n) {
                    return Err(config_err("n-qubits", format!("{n} is outside 3..={MAX_QUBITS}")));
                }
                if explicit_split && n < 4 {
                    return Err(config_err("inequality", format!("split-power needs at least 4 qubits, got {n}")));
                }
                if inequalities.is_empty() {
                    inequalities = vec![Inequality::Ckw, Inequality::Power, Inequality::SortedPower];
                    if n >= 4 {
                        inequalities.push(Inequality::SplitPower);
                    }
                }
                if inequalities.contains(&Inequality::SplitPower) && (args.m < 1 || args.m + 3 > n) {
                    return Err(config_err("m", format!("{} must satisfy 1 <= m <= n-3 = {}", args.m, n - 3)));
                }
                let ckw_only = !kinds.iter().any(|k| *k != MeasureKind::Concurrence);
                let wants_distance = inequalities.iter().any(|i| *i != Inequality::Ckw);
                let runs_ckw = inequalities.contains(&Inequality::Ckw) && kinds.contains(&MeasureKind::Concurrence);
                if !runs_ckw && (ckw_only || !wants_distance) {
                    return Err(config_err(
                        "kind",
                        "the requested kinds and inequalities leave nothing to check \
                         (ckw uses concurrence; the power relations use bures or geometric)",
                    ));
                }
                n
            }
            Command::Crosscheck => {
                if let Some(n) = args.n_qubits.filter(|&n| n != 2) {
                    return Err(config_err("n-qubits", format!("crosscheck works on two-qubit states, got {n}")));
                }
                kinds.retain(|k| *k != MeasureKind::Concurrence);
                if kinds.is_empty() {
                    return Err(config_err("kind", "crosscheck compares bures or geometric values"));
                }
                2
            }
            Command::Measure => {
                if args.input.is_none() {
                    return Err(config_err("input", "measure needs --input pointing at a state file"));
                }
                args.n_qubits.unwrap_or(0)
            }
            Command::LemmaSweep => {
                if args.grid < MIN_GRID {
                    return Err(config_err("grid", format!("{} is below the minimum of {MIN_GRID}", args.grid)));
                }
                args.n_qubits.unwrap_or(0)
            }
        };

        if let Some(perm) = &args.permutation {
            if !matches!(args.command, Command::Verify | Command::Measure) {
                return Err(config_err("permutation", "only verify and measure re-root states"));
            }
            if args.command == Command::Verify {
                check_permutation(perm, n_qubits)?;
            }
        }

        let samples = match (args.command, args.samples) {
            (_, Some(s)) => s,
            (Command::Crosscheck, None) => 100,
            (_, None) => 1000,
        };
        if samples == 0 && matches!(args.command, Command::Verify | Command::LemmaSweep) {
            return Err(config_err("samples", "must be at least 1"));
        }

        Ok(Self {
            command: args.command,
            n_qubits,
            samples,
            seed: args.seed,
            eta: args.eta,
            k: args.k,
            k_prime: args.k_prime,
            m: args.m,
            kinds,
            inequalities,
            grid: args.grid,
            permutation: args.permutation,
            input: args.input,
            output: args.output,
            format: args.format,
            jobs: args.jobs,
        })
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<(), CliError> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(config_err("permutation", format!("expected {n} entries, got {}", perm.len())));
    }
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(config_err("permutation", format!("{perm:?} is not a permutation of 0..{n}")));
        }
    }
    Ok(())
}
