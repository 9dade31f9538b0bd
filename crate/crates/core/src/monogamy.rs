//! Both sides of the monogamy relations for a pure N-qubit state.
//!
//! Qubit 0 plays the role of `A`; qubits `1..N` are the partners `B₁ … B_{N−1}`.
//! Re-rooting is done by permuting the state first
//! ([`StateVector::permute_qubits`]).
//!
//! The relations checked, with `Eᵢ = E(ρ_{ABᵢ})` and `E = E(A|B₁⋯B_{N−1})`:
//!
//! * [`Inequality::Ckw`]: `C² ≥ Σ Cᵢ²`.
//! * [`Inequality::Power`]: `E^η ≥ Σ Eᵢ^η` for `η ≥ 1`.
//! * [`Inequality::SortedPower`]: partners relabeled so `E₁ ≥ E₂ ≥ ⋯`, then
//!   `E^η ≥ Σ [i^η − (i−1)^η] Eᵢ^η`.
//! * [`Inequality::SplitPower`] / [`Inequality::SplitPowerUnit`]: the conditional
//!   bound with parameters `k, k′ ≥ 1` and split index `m` (see
//!   [`split_power_rhs`]); valid only when its ordering conditions hold, which
//!   are evaluated on the partners in their given order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{concurrence_two_qubit, qubit_cut_spectrum, MeasureKind, QubitSpectrum};
use crate::states::StateVector;
use crate::tensor::Subsystem;

/// A residual below `-RESIDUAL_TOL` with the conditions met is a violation.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Agreement required between the general split bound at `k = k′ = 1` and its
/// specialized form, relative to `max(1, |rhs|)`.
pub const SPECIALIZATION_TOL: f64 = 1e-12;
/// Slack on the dominance comparisons behind [`MonogamyReport::tighter`].
pub const DOMINANCE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Inequality {
    /// Squared concurrence.
    Ckw,
    /// η-th power of a distance measure.
    Power,
    /// Power relation with sorted, weighted partner terms.
    SortedPower,
    /// Conditional bound for general `k, k′`.
    SplitPower,
    /// Conditional bound, specialized form for `k = k′ = 1`.
    SplitPowerUnit,
}

impl Inequality {
    pub fn as_str(self) -> &'static str {
        match self {
            Inequality::Ckw => "ckw",
            Inequality::Power => "power",
            Inequality::SortedPower => "sorted-power",
            Inequality::SplitPower => "split-power",
            Inequality::SplitPowerUnit => "split-power-unit",
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Inequality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ckw" => Ok(Inequality::Ckw),
            "power" => Ok(Inequality::Power),
            "sorted-power" => Ok(Inequality::SortedPower),
            "split-power" => Ok(Inequality::SplitPower),
            "split-power-unit" => Ok(Inequality::SplitPowerUnit),
            other => Err(Error::Param(format!("unknown inequality '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonogamyParams {
    pub eta: f64,
    pub k: f64,
    pub k_prime: f64,
    pub m: usize,
}

impl Default for MonogamyParams {
    fn default() -> Self {
        Self { eta: 1.0, k: 1.0, k_prime: 1.0, m: 1 }
    }
}

impl MonogamyParams {
    pub fn with_eta(eta: f64) -> Self {
        Self { eta, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("eta", self.eta), ("k", self.k), ("k_prime", self.k_prime)] {
            if !v.is_finite() || v < 1.0 {
                return Err(Error::Param(format!("{name} = {v} must be >= 1")));
            }
        }
        Ok(())
    }

    /// Also requires `1 ≤ m ≤ N − 3`.
    pub fn validate_split(&self, n_qubits: usize) -> Result<()> {
        self.validate()?;
        if self.m < 1 || self.m + 3 > n_qubits {
            return Err(Error::Param(format!(
                "split index m = {} must satisfy 1 <= m <= N-3 = {}",
                self.m,
                n_qubits as i64 - 3
            )));
        }
        Ok(())
    }
}

/// One evaluated inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonogamyReport {
    pub state_id: String,
    pub kind: MeasureKind,
    pub inequality: Inequality,
    #[serde(flatten)]
    pub params: MonogamyParams,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub conditions_met: bool,
    /// `(partner qubit, value)` in the order the right-hand side uses.
    pub per_pair_values: Vec<(usize, f64)>,
    pub seed: Option<u64>,
    /// Right-hand side this bound is compared against for tightness, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reference_rhs: Option<f64>,
    /// `rhs ≥ reference_rhs − DOMINANCE_TOL`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tighter: Option<bool>,
}

impl MonogamyReport {
    fn new(kind: MeasureKind, inequality: Inequality, params: MonogamyParams, lhs: f64, rhs: f64) -> Self {
        Self {
            state_id: String::new(),
            kind,
            inequality,
            params,
            lhs,
            rhs,
            residual: lhs - rhs,
            conditions_met: true,
            per_pair_values: Vec::new(),
            seed: None,
            reference_rhs: None,
            tighter: None,
        }
    }

    pub fn labeled(mut self, state_id: impl Into<String>, seed: Option<u64>) -> Self {
        self.state_id = state_id.into();
        self.seed = seed;
        self
    }

    /// Conditions hold but the residual is below `-RESIDUAL_TOL`.
    pub fn is_violation(&self) -> bool {
        self.conditions_met && self.residual < -RESIDUAL_TOL
    }
}

/// Concurrences of a pure state that every relation is built from.
#[derive(Debug, Clone, PartialEq)]
pub struct PairProfile {
    n_qubits: usize,
    /// Spectrum of `ρ_A`, which fixes every measure of the `A | rest` cut.
    pub cut_spectrum: QubitSpectrum,
    /// `C(A | B₁⋯B_{N−1})`.
    pub cut_concurrence: f64,
    /// `C(ρ_{ABᵢ})` for `i = 1 … N−1`.
    pub pair_concurrences: Vec<f64>,
}

impl PairProfile {
    pub fn from_state(psi: &StateVector) -> Result<Self> {
        let n = psi.n_qubits();
        if n < 3 {
            return Err(Error::Domain(format!("monogamy needs at least 3 qubits, got {n}")));
        }
        let cut_spectrum = qubit_cut_spectrum(psi, &Subsystem::single(0))?;
        let cut_concurrence = cut_spectrum.measure(MeasureKind::Concurrence);
        let pair_concurrences = (1..n)
            .map(|i| concurrence_two_qubit(&psi.reduced(&Subsystem::new(vec![0, i]))?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n_qubits: n, cut_spectrum, cut_concurrence, pair_concurrences })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// `E(A | rest)` for the chosen measure.
    pub fn cut_measure(&self, kind: MeasureKind) -> Result<f64> {
        Ok(self.cut_spectrum.measure(kind))
    }

    /// `[E(ρ_{AB₁}), …, E(ρ_{AB_{N−1}})]`.
    pub fn pair_measures(&self, kind: MeasureKind) -> Result<Vec<f64>> {
        self.pair_concurrences.iter().map(|&c| kind.from_concurrence(c)).collect()
    }

    fn indexed(values: &[f64]) -> Vec<(usize, f64)> {
        values.iter().enumerate().map(|(i, &v)| (i + 1, v)).collect()
    }

    pub fn ckw(&self) -> MonogamyReport {
        let lhs = self.cut_spectrum.concurrence_sqr();
        let rhs = self.pair_concurrences.iter().map(|c| c * c).sum();
        let mut r =
            MonogamyReport::new(MeasureKind::Concurrence, Inequality::Ckw, MonogamyParams::with_eta(2.0), lhs, rhs);
        r.per_pair_values = Self::indexed(&self.pair_concurrences);
        r
    }

    pub fn power(&self, kind: MeasureKind, eta: f64) -> Result<MonogamyReport> {
        let params = MonogamyParams::with_eta(eta);
        params.validate()?;
        let pairs = self.pair_measures(kind)?;
        let lhs = self.cut_measure(kind)?.powf(eta);
        let rhs = pairs.iter().map(|e| e.powf(eta)).sum();
        let mut r = MonogamyReport::new(kind, Inequality::Power, params, lhs, rhs);
        r.per_pair_values = Self::indexed(&pairs);
        Ok(r)
    }

    pub fn sorted_power(&self, kind: MeasureKind, eta: f64) -> Result<MonogamyReport> {
        let params = MonogamyParams::with_eta(eta);
        params.validate()?;
        let pairs = self.pair_measures(kind)?;
        let mut sorted = Self::indexed(&pairs);
        sorted.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        let values: Vec<f64> = sorted.iter().map(|p| p.1).collect();
        let lhs = self.cut_measure(kind)?.powf(eta);
        let rhs = sorted_power_rhs(&values, eta);
        let reference: f64 = pairs.iter().map(|e| e.powf(eta)).sum();
        let mut r = MonogamyReport::new(kind, Inequality::SortedPower, params, lhs, rhs);
        r.per_pair_values = sorted;
        r.reference_rhs = Some(reference);
        r.tighter = Some(rhs >= reference - DOMINANCE_TOL);
        Ok(r)
    }

    pub fn split_power(&self, kind: MeasureKind, params: MonogamyParams) -> Result<MonogamyReport> {
        if self.n_qubits < 4 {
            return Err(Error::Domain(format!("the split bound needs at least 4 qubits, got {}", self.n_qubits)));
        }
        params.validate_split(self.n_qubits)?;
        let pairs = self.pair_measures(kind)?;
        let lhs = self.cut_measure(kind)?.powf(params.eta);
        let general = split_power_rhs(&pairs, params.eta, params.k, params.k_prime, params.m);
        let unit = params.k == 1.0 && params.k_prime == 1.0;
        let (inequality, rhs) = if unit {
            let special = split_power_rhs_unit(&pairs, params.eta, params.m);
            if (special - general).abs() > SPECIALIZATION_TOL * general.abs().max(1.0) {
                return Err(Error::Consistency(format!(
                    "unit split bound {special} disagrees with the general form {general}"
                )));
            }
            (Inequality::SplitPowerUnit, special)
        } else {
            (Inequality::SplitPower, general)
        };
        let reference = sorted_power_rhs(&pairs, params.eta);
        let mut r = MonogamyReport::new(kind, inequality, params, lhs, rhs);
        r.conditions_met = split_conditions_hold(&pairs, params.k, params.k_prime, params.m);
        r.per_pair_values = Self::indexed(&pairs);
        r.reference_rhs = Some(reference);
        r.tighter = Some(rhs >= reference - DOMINANCE_TOL);
        Ok(r)
    }
}

/// `Σᵢ [i^η − (i−1)^η] eᵢ^η` over `values` in the order given.
pub fn sorted_power_rhs(values: &[f64], eta: f64) -> f64 {
    values.iter().enumerate().map(|(i, e)| (((i + 1) as f64).powf(eta) - (i as f64).powf(eta)) * e.powf(eta)).sum()
}

/// Ordering conditions of the split bound on `e = [E₁, …, E_{N−1}]`:
/// `Eᵢ ≥ k·Σ_{l>i} E_l` for `i ≤ m`, and `k′·Eⱼ ≤ Σ_{l>j} E_l` for `m < j ≤ N−2`.
pub fn split_conditions_hold(e: &[f64], k: f64, k_prime: f64, m: usize) -> bool {
    let tail = |i: usize| -> f64 { e[i..].iter().sum() };
    let head_ok = (1..=m).all(|i| e[i - 1] >= k * tail(i));
    let rest_ok = (m + 1..e.len()).all(|j| k_prime * e[j - 1] <= tail(j));
    head_ok && rest_ok
}

/// Right-hand side of the split bound on `e = [E₁, …, E_{N−1}]`:
///
/// ```text
///   Σ_{i=1}^{m} c^{i−1} Eᵢ^η
/// + c^m c′ Σ_{j=m+1}^{N−3} Eⱼ^η
/// + c^m [ d′ E_{N−2}^η + k′η/(k′+1) E_{N−2} E_{N−1}^{η−1} + E_{N−1}^η ]
/// ```
///
/// with `c = (k+1)^η − k^η`, `c′ = (k′+1)^η − k′^η` and
/// `d′ = (k′+1)^η − (1 + η/(k′+1)) k′^η`. The middle block carries one common
/// factor `c′`; it is empty when `m = N − 3`.
pub fn split_power_rhs(e: &[f64], eta: f64, k: f64, k_prime: f64, m: usize) -> f64 {
    let n1 = e.len();
    debug_assert!(n1 >= 3 && m >= 1 && m + 2 <= n1);
    let c = (k + 1.0).powf(eta) - k.powf(eta);
    let c_prime = (k_prime + 1.0).powf(eta) - k_prime.powf(eta);
    let d_prime = (k_prime + 1.0).powf(eta) - (1.0 + eta / (k_prime + 1.0)) * k_prime.powf(eta);
    let head: f64 = (0..m).map(|i| c.powi(i as i32) * e[i].powf(eta)).sum();
    let middle: f64 = e[m..n1 - 2].iter().map(|x| x.powf(eta)).sum();
    let (last2, last) = (e[n1 - 2], e[n1 - 1]);
    let tail =
        d_prime * last2.powf(eta) + k_prime * eta / (k_prime + 1.0) * last2 * last.powf(eta - 1.0) + last.powf(eta);
    let cm = c.powi(m as i32);
    head + cm * c_prime * middle + cm * tail
}

/// The split bound written out for `k = k′ = 1`:
///
/// ```text
///   Σ_{i=1}^{m} (2^η−1)^{i−1} Eᵢ^η
/// + (2^η−1)^{m+1} Σ_{j=m+1}^{N−3} Eⱼ^η
/// + (2^η−1)^m [ (2^η − η/2 − 1) E_{N−2}^η + η/2 · E_{N−2} E_{N−1}^{η−1} + E_{N−1}^η ]
/// ```
pub fn split_power_rhs_unit(e: &[f64], eta: f64, m: usize) -> f64 {
    let n1 = e.len();
    let w = 2f64.powf(eta) - 1.0;
    let head: f64 = (0..m).map(|i| w.powi(i as i32) * e[i].powf(eta)).sum();
    let middle: f64 = e[m..n1 - 2].iter().map(|x| x.powf(eta)).sum();
    let (last2, last) = (e[n1 - 2], e[n1 - 1]);
    let tail = (2f64.powf(eta) - eta / 2.0 - 1.0) * last2.powf(eta)
        + eta / 2.0 * last2 * last.powf(eta - 1.0)
        + last.powf(eta);
    head + w.powi(m as i32 + 1) * middle + w.powi(m as i32) * tail
}

/// `[E(ρ_{AB₁}), …, E(ρ_{AB_{N−1}})]` with qubit 0 as `A`.
pub fn pairwise_measures(psi: &StateVector, kind: MeasureKind) -> Result<Vec<f64>> {
    PairProfile::from_state(psi)?.pair_measures(kind)
}

pub fn check_ckw(psi: &StateVector) -> Result<MonogamyReport> {
    Ok(PairProfile::from_state(psi)?.ckw())
}

pub fn check_power_monogamy(psi: &StateVector, kind: MeasureKind, eta: f64) -> Result<MonogamyReport> {
    MonogamyParams::with_eta(eta).validate()?;
    PairProfile::from_state(psi)?.power(kind, eta)
}

pub fn check_sorted_power(psi: &StateVector, kind: MeasureKind, eta: f64) -> Result<MonogamyReport> {
    MonogamyParams::with_eta(eta).validate()?;
    PairProfile::from_state(psi)?.sorted_power(kind, eta)
}

pub fn check_split_power(psi: &StateVector, kind: MeasureKind, params: MonogamyParams) -> Result<MonogamyReport> {
    if psi.n_qubits() < 4 {
        return Err(Error::Domain(format!("the split bound needs at least 4 qubits, got {}", psi.n_qubits())));
    }
    params.validate_split(psi.n_qubits())?;
    PairProfile::from_state(psi)?.split_power(kind, params)
}
