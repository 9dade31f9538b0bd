use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use monogamy_core::bounds::{check_scalar_lemma, sweep_quarter_disk, ScalarLemma, LEMMA_TOL};
use monogamy_core::variational::{min_bures_pure_with, min_geometric_pure_with, VariationalOptions};
use monogamy_core::{
    make_named_state, measure_pure_bipartition, measure_two_qubit, sample_haar_state, Inequality, MeasureKind,
    MonogamyParams, MonogamyReport, NamedFamily, PairProfile, StateVector, Subsystem,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{check_permutation, RunConfig};
use crate::report::{CrosscheckRow, LemmaRow, LemmaSource, MeasureRow};
use crate::CliError;

/// Largest `|closed form − variational|` accepted by `crosscheck`.
pub const CROSSCHECK_TOL: f64 = 1e-5;

/// Rows of one command plus what the exit status needs.
#[derive(Debug, Clone)]
pub struct Outcome<R> {
    pub rows: Vec<R>,
    pub violations: usize,
    /// Human-readable totals for stderr.
    pub summary: Vec<String>,
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| CliError::Runtime(e.to_string()))
}

/// Zero-padded so lexical order is sample order.
fn sample_id(prefix: &str, index: usize, total: usize) -> String {
    let width = total.saturating_sub(1).to_string().len().max(6);
    format!("{prefix}-{index:0width$}")
}

/// Seed of the `index`-th random state of a run.
pub fn sample_seed(base: u64, index: usize) -> u64 {
    base.wrapping_add(index as u64)
}

pub fn measure(config: &RunConfig) -> Result<Outcome<MeasureRow>, CliError> {
    let path = config.input.as_deref().expect("validated");
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut psi = StateVector::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let n = psi.n_qubits();
    if n < 2 {
        return Err(CliError::Input(format!("{}: measures need at least 2 qubits, got {n}", path.display())));
    }
    if let Some(perm) = &config.permutation {
        check_permutation(perm, n)?;
        psi = psi.permute_qubits(perm)?;
    }
    let state_id = state_label(path);
    let mut rows = Vec::new();
    for &kind in &config.kinds {
        let cut = measure_pure_bipartition(&psi, &Subsystem::single(0), kind)?;
        rows.push(MeasureRow {
            state_id: state_id.clone(),
            subsystem: "A|rest".into(),
            partner: None,
            kind,
            value: cut.value,
        });
        if n > 2 {
            for i in 1..n {
                let rho = psi.reduced(&Subsystem::new(vec![0, i]))?;
                rows.push(MeasureRow {
                    state_id: state_id.clone(),
                    subsystem: format!("A|B{i}"),
                    partner: Some(i),
                    kind,
                    value: measure_two_qubit(&rho, kind)?.value,
                });
            }
        }
    }
    let summary = vec![format!("measure: {n}-qubit state, {} values", rows.len())];
    Ok(Outcome { rows, violations: 0, summary })
}

fn state_label(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "input".into())
}

/// All reports for one Haar sample.
pub fn verify_sample(config: &RunConfig, index: usize) -> Result<Vec<MonogamyReport>, CliError> {
    let seed = sample_seed(config.seed, index);
    let mut psi = sample_haar_state(config.n_qubits, seed)?;
    if let Some(perm) = &config.permutation {
        psi = psi.permute_qubits(perm)?;
    }
    let id = sample_id(&format!("haar-n{}", config.n_qubits), index, config.samples);
    let profile = PairProfile::from_state(&psi)?;
    let mut out = Vec::new();
    for &inequality in &config.inequalities {
        if inequality == Inequality::Ckw {
            if config.kinds.contains(&MeasureKind::Concurrence) {
                out.push(profile.ckw());
            }
            continue;
        }
        for &kind in config.kinds.iter().filter(|k| MeasureKind::DISTANCE.contains(k)) {
            for &eta in &config.eta {
                out.push(match inequality {
                    Inequality::Power => profile.power(kind, eta)?,
                    Inequality::SortedPower => profile.sorted_power(kind, eta)?,
                    _ => {
                        let params = MonogamyParams { eta, k: config.k, k_prime: config.k_prime, m: config.m };
                        profile.split_power(kind, params)?
                    }
                });
            }
        }
    }
    Ok(out.into_iter().map(|r| r.labeled(id.clone(), Some(seed))).collect())
}

#[derive(Debug, Default)]
struct Tally {
    rows: usize,
    conditions_met: usize,
    violations: usize,
    min_residual: f64,
    not_tighter: usize,
}

pub fn verify(config: &RunConfig) -> Result<Outcome<MonogamyReport>, CliError> {
    let per_state: Vec<Vec<MonogamyReport>> = pool(config.jobs)?
        .install(|| (0..config.samples).into_par_iter().map(|i| verify_sample(config, i)).collect::<Result<_, _>>())?;
    let mut rows: Vec<MonogamyReport> = per_state.into_iter().flatten().collect();
    rows.sort_by(|a, b| a.state_id.cmp(&b.state_id));

    let mut tallies: BTreeMap<(Inequality, MeasureKind, u64), Tally> = BTreeMap::new();
    for r in &rows {
        let t = tallies
            .entry((r.inequality, r.kind, r.params.eta.to_bits()))
            .or_insert(Tally { min_residual: f64::INFINITY, ..Tally::default() });
        t.rows += 1;
        if r.conditions_met {
            t.conditions_met += 1;
            t.min_residual = t.min_residual.min(r.residual);
        }
        t.violations += r.is_violation() as usize;
        t.not_tighter += (r.tighter == Some(false)) as usize;
    }
    let violations = rows.iter().filter(|r| r.is_violation()).count();
    let summary = tallies
        .iter()
        .map(|((ineq, kind, eta), t)| {
            format!(
                "verify: {ineq} {kind} eta={} rows={} conditions_met={} violations={} min_residual={:.3e} not_tighter={}",
                f64::from_bits(*eta),
                t.rows,
                t.conditions_met,
                t.violations,
                t.min_residual,
                t.not_tighter
            )
        })
        .collect();
    Ok(Outcome { rows, violations, summary })
}

fn crosscheck_states(config: &RunConfig) -> Result<Vec<(String, Option<u64>, StateVector)>, CliError> {
    let mut states = vec![
        ("bell".to_string(), None, make_named_state(NamedFamily::Bell, 2)?),
        ("product".to_string(), None, make_named_state(NamedFamily::Product, 2)?),
    ];
    for i in 0..config.samples {
        let seed = sample_seed(config.seed, i);
        states.push((sample_id("haar-n2", i, config.samples), Some(seed), sample_haar_state(2, seed)?));
    }
    states.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(states)
}

pub fn crosscheck(config: &RunConfig) -> Result<Outcome<CrosscheckRow>, CliError> {
    let states = crosscheck_states(config)?;
    let per_state: Vec<Vec<CrosscheckRow>> = pool(config.jobs)?.install(|| {
        states
            .par_iter()
            .map(|(id, seed, psi)| {
                let opts = VariationalOptions { seed: seed.unwrap_or(config.seed), ..VariationalOptions::default() };
                config
                    .kinds
                    .iter()
                    .map(|&kind| {
                        let closed_form = measure_pure_bipartition(psi, &Subsystem::single(0), kind)?.value;
                        let variational = match kind {
                            MeasureKind::Bures => min_bures_pure_with(psi, &opts)?.value,
                            _ => min_geometric_pure_with(psi, &opts)?.value,
                        };
                        Ok(CrosscheckRow {
                            state_id: id.clone(),
                            kind,
                            closed_form,
                            variational,
                            abs_diff: (closed_form - variational).abs(),
                            seed: *seed,
                        })
                    })
                    .collect::<Result<Vec<_>, CliError>>()
            })
            .collect::<Result<_, _>>()
    })?;
    let rows: Vec<CrosscheckRow> = per_state.into_iter().flatten().collect();
    let violations = rows.iter().filter(|r| r.abs_diff.is_nan() || r.abs_diff > CROSSCHECK_TOL).count();
    let summary = config
        .kinds
        .iter()
        .map(|&kind| {
            let max = rows.iter().filter(|r| r.kind == kind).map(|r| r.abs_diff).fold(0.0, f64::max);
            format!("crosscheck: {kind} states={} max_abs_diff={max:.3e}", states.len())
        })
        .collect();
    Ok(Outcome { rows, violations, summary })
}

/// Quarter-disk checks spot-checked at random interior points.
pub const INTERIOR_SPOT_CHECKS: [ScalarLemma; 3] =
    [ScalarLemma::HalfGap, ScalarLemma::ProductExpansion, ScalarLemma::HalfAngleSum];

/// Length of the random descending tuples fed to the sorted power sum.
pub const TUPLE_LEN: usize = 5;

struct RandomMin {
    points: usize,
    min: f64,
    argmin: Vec<f64>,
    equalities: usize,
}

impl RandomMin {
    fn new() -> Self {
        Self { points: 0, min: f64::INFINITY, argmin: Vec::new(), equalities: 0 }
    }

    fn push(&mut self, args: Vec<f64>, residual: f64) {
        self.points += 1;
        if residual.abs() <= LEMMA_TOL {
            self.equalities += 1;
        }
        if residual < self.min {
            self.min = residual;
            self.argmin = args;
        }
    }

    fn row(self, inequality: ScalarLemma, eta: Option<f64>) -> LemmaRow {
        LemmaRow {
            inequality,
            eta,
            source: LemmaSource::Random,
            points: self.points,
            min_residual: self.min,
            argmin: self.argmin,
            equality_points: self.equalities,
            boundary_equalities: Vec::new(),
        }
    }
}

fn interior_point(rng: &mut ChaCha8Rng) -> (f64, f64) {
    loop {
        let (x, y): (f64, f64) = (rng.random(), rng.random());
        if x > 0.0 && y > 0.0 && x * x + y * y < 1.0 {
            return (x, y);
        }
    }
}

/// The seeded random-input rows of `lemma-sweep`.
pub fn random_lemma_rows(config: &RunConfig) -> Result<Vec<LemmaRow>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::new();
    for &which in &INTERIOR_SPOT_CHECKS {
        let mut acc = RandomMin::new();
        for _ in 0..config.samples {
            let (x, y) = interior_point(&mut rng);
            acc.push(vec![x, y], check_scalar_lemma(which, &[x, y])?);
        }
        rows.push(acc.row(which, None));
    }
    for &mu in &config.eta {
        let mut acc = RandomMin::new();
        for _ in 0..config.samples {
            let mut args: Vec<f64> = (0..TUPLE_LEN).map(|_| rng.random::<f64>()).collect();
            args.sort_by(|a, b| b.total_cmp(a));
            args.push(mu);
            let r = check_scalar_lemma(ScalarLemma::SortedPowerSum, &args)?;
            acc.push(args, r);
        }
        rows.push(acc.row(ScalarLemma::SortedPowerSum, Some(mu)));
    }
    let mut acc = RandomMin::new();
    for _ in 0..config.samples {
        let t = rng.random_range(1.0..=5.0);
        let k = rng.random_range(1.0..=4.0);
        let x = rng.random_range(0.0..=1.0 / k);
        acc.push(vec![t, k, x], check_scalar_lemma(ScalarLemma::BinomialTail, &[t, k, x])?);
    }
    rows.push(acc.row(ScalarLemma::BinomialTail, None));
    Ok(rows)
}

pub fn lemma_sweep(config: &RunConfig) -> Result<Outcome<LemmaRow>, CliError> {
    let jobs: Vec<(ScalarLemma, Option<f64>)> = ScalarLemma::QUARTER_DISK
        .iter()
        .flat_map(|&which| {
            if which.uses_eta() {
                config.eta.iter().map(|&e| (which, Some(e))).collect::<Vec<_>>()
            } else {
                vec![(which, None)]
            }
        })
        .collect();
    let mut rows: Vec<LemmaRow> = pool(config.jobs)?.install(|| {
        jobs.par_iter()
            .map(|&(which, eta)| {
                let s = sweep_quarter_disk(which, eta.unwrap_or(1.0), config.grid)?;
                Ok(LemmaRow {
                    inequality: which,
                    eta,
                    source: LemmaSource::Grid,
                    points: s.points,
                    min_residual: s.min_residual,
                    argmin: s.argmin.to_vec(),
                    equality_points: s.equality_points,
                    boundary_equalities: s.boundary_equalities,
                })
            })
            .collect::<Result<_, CliError>>()
    })?;
    rows.extend(random_lemma_rows(config)?);
    let violations = rows.iter().filter(|r| r.min_residual.is_nan() || r.min_residual < -LEMMA_TOL).count();
    let summary = rows
        .iter()
        .map(|r| {
            let eta = r.eta.map(|e| format!(" eta={e}")).unwrap_or_default();
            format!(
                "lemma-sweep: {}{eta} {:?} points={} min_residual={:.3e} equalities={}",
                r.inequality, r.source, r.points, r.min_residual, r.equality_points
            )
        })
        .collect();
    Ok(Outcome { rows, violations, summary })
}
