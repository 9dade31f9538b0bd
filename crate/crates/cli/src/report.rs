use std::io::Write;

use monogamy_core::bounds::ScalarLemma;
use monogamy_core::{MeasureKind, MonogamyReport};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::CliError;

#[derive(Debug, Serialize)]
struct Header<'a> {
    tool: &'static str,
    version: &'static str,
    seed: u64,
    config: &'a RunConfig,
}

/// One line of any report body.
pub trait Row: Serialize {
    type Flat: Serialize;
    /// CSV form: scalar columns only.
    fn flat(&self) -> Self::Flat;
}

/// One line of `measure` output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureRow {
    pub state_id: String,
    /// `A|rest` or `A|B<i>`.
    pub subsystem: String,
    pub partner: Option<usize>,
    pub kind: MeasureKind,
    pub value: f64,
}

impl Row for MeasureRow {
    type Flat = Self;
    fn flat(&self) -> Self {
        self.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyCsv {
    pub state_id: String,
    pub kind: MeasureKind,
    pub inequality: String,
    pub eta: f64,
    pub k: f64,
    pub k_prime: f64,
    pub m: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub conditions_met: bool,
    pub seed: Option<u64>,
}

impl Row for MonogamyReport {
    type Flat = VerifyCsv;
    fn flat(&self) -> VerifyCsv {
        VerifyCsv {
            state_id: self.state_id.clone(),
            kind: self.kind,
            inequality: self.inequality.to_string(),
            eta: self.params.eta,
            k: self.params.k,
            k_prime: self.params.k_prime,
            m: self.params.m,
            lhs: self.lhs,
            rhs: self.rhs,
            residual: self.residual,
            conditions_met: self.conditions_met,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrosscheckRow {
    pub state_id: String,
    pub kind: MeasureKind,
    pub closed_form: f64,
    pub variational: f64,
    pub abs_diff: f64,
    pub seed: Option<u64>,
}

impl Row for CrosscheckRow {
    type Flat = Self;
    fn flat(&self) -> Self {
        self.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaSource {
    /// Quarter-disk lattice plus boundary arc.
    Grid,
    /// Seeded random admissible inputs.
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaRow {
    pub inequality: ScalarLemma,
    /// `None` when the inequality has no power parameter.
    pub eta: Option<f64>,
    pub source: LemmaSource,
    pub points: usize,
    pub min_residual: f64,
    pub argmin: Vec<f64>,
    pub equality_points: usize,
    /// Equality cases on `x² + y² = 1` (grid rows only).
    pub boundary_equalities: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaCsv {
    pub inequality: ScalarLemma,
    pub eta: Option<f64>,
    pub source: LemmaSource,
    pub points: usize,
    pub min_residual: f64,
    pub argmin: String,
    pub equality_points: usize,
    pub boundary_equalities: String,
}

fn join(values: impl IntoIterator<Item = String>, sep: &str) -> String {
    values.into_iter().collect::<Vec<_>>().join(sep)
}

impl Row for LemmaRow {
    type Flat = LemmaCsv;
    fn flat(&self) -> LemmaCsv {
        LemmaCsv {
            inequality: self.inequality,
            eta: self.eta,
            source: self.source,
            points: self.points,
            min_residual: self.min_residual,
            argmin: join(self.argmin.iter().map(f64::to_string), ";"),
            equality_points: self.equality_points,
            boundary_equalities: join(self.boundary_equalities.iter().map(|[x, y]| format!("{x};{y}")), "|"),
        }
    }
}

/// Header line, then the rows in the order given.
pub fn write_report<R: Row, W: Write>(out: &mut W, config: &RunConfig, rows: &[R]) -> Result<(), CliError> {
    let header = Header { tool: "monogamy", version: env!("CARGO_PKG_VERSION"), seed: config.seed, config };
    serde_json::to_writer(&mut *out, &header).map_err(CliError::serialize)?;
    out.write_all(b"\n")?;
    match config.format {
        Format::Jsonl => {
            for row in rows {
                serde_json::to_writer(&mut *out, row).map_err(CliError::serialize)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for row in rows {
                w.serialize(row.flat()).map_err(CliError::serialize)?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(())
}
