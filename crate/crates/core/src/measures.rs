//! Fidelity, concurrence and the Bures / geometric measures of entanglement.
//!
//! For two qubits both distance-based measures are functions of the
//! concurrence `C`:
//!
//! * Bures: `B(C) = 2 − 2·√((1 + √(1 − C²)) / 2)`, ranging over `[0, 2 − √2]`,
//! * geometric: `G(C) = (1 − √(1 − C²)) / 2`, ranging over `[0, 1/2]`.
//!
//! Mixed two-qubit concurrence uses the Wootters spin-flip spectrum. Pure states
//! with a one-qubit-versus-rest cut reduce to two qubits through the Schmidt
//! decomposition, so the same closed forms apply there.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::{DensityMatrix, StateVector};
use crate::tensor::{hermitian_eig, psd_factor, singular_values, ComplexMatrix, Subsystem};

/// Arguments of `B`/`G` may exceed `[0, 1]` by this much before being rejected.
pub const ARG_CLAMP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Concurrence,
    Bures,
    Geometric,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 3] = [MeasureKind::Concurrence, MeasureKind::Bures, MeasureKind::Geometric];
    /// The two distance-based measures.
    pub const DISTANCE: [MeasureKind; 2] = [MeasureKind::Bures, MeasureKind::Geometric];

    pub fn as_str(self) -> &'static str {
        match self {
            MeasureKind::Concurrence => "concurrence",
            MeasureKind::Bures => "bures",
            MeasureKind::Geometric => "geometric",
        }
    }

    /// Largest value the measure takes on two qubits.
    pub fn max_value(self) -> f64 {
        match self {
            MeasureKind::Concurrence => 1.0,
            MeasureKind::Bures => 2.0 - std::f64::consts::SQRT_2,
            MeasureKind::Geometric => 0.5,
        }
    }

    /// Maps a two-qubit concurrence to this measure.
    pub fn from_concurrence(self, c: f64) -> Result<f64> {
        match self {
            MeasureKind::Concurrence => Ok(c),
            MeasureKind::Bures => b_of(c),
            MeasureKind::Geometric => g_of(c),
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "concurrence" | "c" => Ok(MeasureKind::Concurrence),
            "bures" | "b" => Ok(MeasureKind::Bures),
            "geometric" | "g" => Ok(MeasureKind::Geometric),
            other => Err(Error::Param(format!("unknown measure '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureValue {
    pub kind: MeasureKind,
    pub value: f64,
}

/// Uhlmann fidelity `(tr √(√ρ σ √ρ))²`, clamped to `[0, 1]`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::Shape(format!("fidelity between dimensions {} and {}", rho.dim(), sigma.dim())));
    }
    // tr √(√ρ σ √ρ) = ‖√ρ √σ‖₁ = ‖W_ρ† W_σ‖₁ for any factors ρ = W_ρ W_ρ†.
    let overlap = psd_factor(rho.matrix())?.adjoint().matmul(&psd_factor(sigma.matrix())?);
    let tr: f64 = singular_values(&overlap)?.iter().sum();
    Ok((tr * tr).clamp(0.0, 1.0))
}

fn check_cut(n_qubits: usize, cut: &Subsystem) -> Result<()> {
    cut.validate(n_qubits)?;
    if cut.is_empty() || cut.len() >= n_qubits {
        return Err(Error::Domain(format!(
            "cut must be a nonempty proper subset of {n_qubits} qubits, got {:?}",
            cut.qubits()
        )));
    }
    Ok(())
}

/// Pure-state concurrence `√(2(1 − tr ρ_A²))` across `cut | rest`.
pub fn concurrence_pure(psi: &StateVector, cut: &Subsystem) -> Result<f64> {
    check_cut(psi.n_qubits(), cut)?;
    // The smaller side has the cheaper reduced matrix and the same purity.
    let side = if cut.len() * 2 > psi.n_qubits() { cut.complement(psi.n_qubits()) } else { cut.clone() };
    let purity = psi.reduced(&side)?.purity();
    let d = (1usize << side.len()) as f64;
    let ceiling = (2.0 * (1.0 - 1.0 / d)).sqrt();
    Ok((2.0 * (1.0 - purity)).max(0.0).sqrt().min(ceiling))
}

/// Descending Wootters values `λᵢ`: square roots of the spectrum of `√ρ ρ̃ √ρ`,
/// with `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
///
/// They are evaluated as the singular values of `Wᵀ (σ_y⊗σ_y) W` for a factor
/// `ρ = W W†`, which avoids square roots of near-zero eigenvalues on the
/// rank-deficient marginals of pure states.
pub fn wootters_lambdas(rho: &DensityMatrix) -> Result<[f64; 4]> {
    if rho.n_qubits() != 2 {
        return Err(Error::Shape(format!("two-qubit concurrence of a {}-qubit state", rho.n_qubits())));
    }
    let w = psd_factor(rho.matrix())?;
    // σ_y ⊗ σ_y is real: anti-diagonal (−1, 1, 1, −1).
    let signs = [-1.0, 1.0, 1.0, -1.0];
    let mut flipped = ComplexMatrix::zeros(4, w.cols());
    for i in 0..4 {
        for k in 0..w.cols() {
            flipped[(i, k)] = w[(3 - i, k)] * signs[i];
        }
    }
    let tau = w.transpose().matmul(&flipped);
    let mut out = [0.0; 4];
    for (o, s) in out.iter_mut().zip(singular_values(&tau)?) {
        *o = s;
    }
    Ok(out)
}

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`.
pub fn concurrence_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    let l = wootters_lambdas(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

fn clamp_unit(x: f64) -> Result<f64> {
    if !x.is_finite() || !(-ARG_CLAMP..=1.0 + ARG_CLAMP).contains(&x) {
        return Err(Error::Domain(format!("argument {x} outside [0, 1]")));
    }
    Ok(x.clamp(0.0, 1.0))
}

/// `G(x) = (1 − √(1 − x²)) / 2`.
pub fn g_of(x: f64) -> Result<f64> {
    clamp_unit(x).map(g_unchecked)
}

/// `B(x) = 2 − 2√((1 + √(1 − x²)) / 2)`.
pub fn b_of(x: f64) -> Result<f64> {
    clamp_unit(x).map(b_unchecked)
}

// Cancellation-free forms: 1 − √(1−x²) = x² / (1 + √(1−x²)), and
// 1 − √u = (1 − u) / (1 + √u) with 1 − u = G(x).
pub(crate) fn g_unchecked(x: f64) -> f64 {
    let s = (1.0 - x * x).max(0.0).sqrt();
    x * x / (2.0 * (1.0 + s))
}

pub(crate) fn b_unchecked(x: f64) -> f64 {
    let s = (1.0 - x * x).max(0.0).sqrt();
    let u = (1.0 + s) / 2.0;
    2.0 * g_unchecked(x) / (1.0 + u.sqrt())
}

/// Ordered spectrum `p_min ≤ p_max` of the one-qubit side of a pure-state cut.
///
/// For a one-qubit cut every measure is a function of this pair:
/// `C = 2√(p_min p_max)`, `G = p_min` and `B = 2 p_min / (1 + √p_max)`. These
/// forms avoid the `√(1 − C²)` step, which loses half the digits near `C = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitSpectrum {
    pub p_min: f64,
    pub p_max: f64,
}

impl QubitSpectrum {
    /// Spectrum of a 2×2 density matrix; `p_min` comes from `det / p_max` so it
    /// keeps absolute accuracy when it is tiny.
    pub fn of(m: &ComplexMatrix) -> Result<Self> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::Shape(format!("{}x{} matrix is not a one-qubit state", m.rows(), m.cols())));
        }
        let (a, d) = (m[(0, 0)].re, m[(1, 1)].re);
        let b = m[(0, 1)].norm();
        let p_max = 0.5 * (a + d) + (0.5 * (a - d)).hypot(b);
        let p_min = if p_max > 0.0 { ((a * d - b * b) / p_max).max(0.0) } else { 0.0 };
        Ok(Self { p_min: p_min.min(0.5), p_max: p_max.clamp(0.5, 1.0) })
    }

    pub fn measure(&self, kind: MeasureKind) -> f64 {
        match kind {
            MeasureKind::Concurrence => (2.0 * (self.p_min * self.p_max).sqrt()).min(1.0),
            MeasureKind::Geometric => self.p_min,
            MeasureKind::Bures => 2.0 * self.p_min / (1.0 + self.p_max.sqrt()),
        }
    }

    /// `C²`.
    pub fn concurrence_sqr(&self) -> f64 {
        (4.0 * self.p_min * self.p_max).min(1.0)
    }
}

/// [`QubitSpectrum`] of the one-qubit side of `cut | rest`.
pub fn qubit_cut_spectrum(psi: &StateVector, cut: &Subsystem) -> Result<QubitSpectrum> {
    check_cut(psi.n_qubits(), cut)?;
    let n = psi.n_qubits();
    let side = match cut.len() {
        1 => cut.clone(),
        l if l == n - 1 => cut.complement(n),
        _ => {
            return Err(Error::Domain(format!(
                "cut {:?} is not one qubit against the rest; the closed forms need an effective two-qubit system",
                cut.qubits()
            )))
        }
    };
    QubitSpectrum::of(psi.reduced(&side)?.matrix())
}

/// Measure across a one-qubit-versus-rest cut of a pure state.
pub fn measure_pure_bipartition(psi: &StateVector, cut: &Subsystem, kind: MeasureKind) -> Result<MeasureValue> {
    let spectrum = qubit_cut_spectrum(psi, cut)?;
    Ok(MeasureValue { kind, value: spectrum.measure(kind) })
}

/// Measure of a two-qubit density matrix via its Wootters concurrence.
pub fn measure_two_qubit(rho: &DensityMatrix, kind: MeasureKind) -> Result<MeasureValue> {
    let c = concurrence_two_qubit(rho)?;
    Ok(MeasureValue { kind, value: kind.from_concurrence(c)? })
}

/// Schmidt coefficients `(s₀ ≥ s₁)` of a two-qubit pure state, from the
/// spectrum of its one-qubit marginal.
pub fn schmidt_coefficients(psi: &StateVector) -> Result<(f64, f64)> {
    if psi.n_qubits() != 2 {
        return Err(Error::Shape(format!("Schmidt pair of a {}-qubit state", psi.n_qubits())));
    }
    let eig = hermitian_eig(psi.reduced(&Subsystem::single(0))?.matrix())?;
    Ok((eig.eigenvalues[0].max(0.0).sqrt(), eig.eigenvalues[1].max(0.0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{
        apply_channel_one_side, make_named_state, sample_channel, sample_haar_state, sample_induced_two_qubit,
        sample_local_unitary, KrausChannel, NamedFamily,
    };
    use crate::tensor::kron;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn named(f: NamedFamily, n: usize) -> StateVector {
        make_named_state(f, n).unwrap()
    }

    #[test]
    fn closed_form_fixtures() {
        assert_eq!(b_of(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(b_of(1.0).unwrap(), 2.0 - SQRT2, epsilon = 1e-15);
        assert_eq!(g_of(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(g_of(1.0).unwrap(), 0.5, epsilon = 1e-15);
        // Direct evaluation of the textbook forms.
        assert_abs_diff_eq!(b_of(0.6).unwrap(), 2.0 - 2.0 * 0.9f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(b_of(0.6).unwrap(), 0.1026334, epsilon = 1e-7);
        assert_abs_diff_eq!(g_of(2.0 / 3.0).unwrap(), (1.0 - 5f64.sqrt() / 3.0) / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g_of(2.0 / 3.0).unwrap(), 0.1273220, epsilon = 1e-7);
    }

    #[test]
    fn arguments_outside_the_band_are_rejected() {
        assert!(b_of(1.0 + 5e-10).is_ok());
        assert!(g_of(-5e-10).is_ok());
        assert!(matches!(b_of(1.01), Err(Error::Domain(_))));
        assert!(matches!(g_of(-0.1), Err(Error::Domain(_))));
        assert!(g_of(f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn stable_forms_agree_with_textbook_forms(x in 0.0f64..=1.0) {
            let s = (1.0 - x * x).sqrt();
            prop_assert!((g_of(x).unwrap() - (1.0 - s) / 2.0).abs() < 1e-15);
            prop_assert!((b_of(x).unwrap() - (2.0 - 2.0 * ((1.0 + s) / 2.0).sqrt())).abs() < 1e-15);
        }

        #[test]
        fn b_and_g_increase(x in 0.0f64..1.0, dy in 1e-6f64..1.0) {
            let y = (x + dy).min(1.0);
            prop_assume!(y > x);
            prop_assert!(b_of(x).unwrap() < b_of(y).unwrap());
            prop_assert!(g_of(x).unwrap() < g_of(y).unwrap());
        }
    }

    #[test]
    fn fidelity_fixtures() {
        let rho = sample_induced_two_qubit(2, 1).unwrap();
        assert_abs_diff_eq!(fidelity(&rho, &rho).unwrap(), 1.0, epsilon = 1e-9);

        let zero = StateVector::basis(1, 0).unwrap().density();
        let mixed = DensityMatrix::maximally_mixed(1);
        // Direct evaluation: √|0⟩⟨0| = |0⟩⟨0|, inner = |0⟩⟨0|/2, tr √ = 1/√2.
        assert_abs_diff_eq!(fidelity(&zero, &mixed).unwrap(), 0.5, epsilon = 1e-12);

        for seed in 0..20 {
            let a = sample_haar_state(2, seed).unwrap();
            let b = sample_haar_state(2, seed + 1000).unwrap();
            let overlap = a.inner(&b).norm_sqr();
            assert_abs_diff_eq!(fidelity(&a.density(), &b.density()).unwrap(), overlap, epsilon = 1e-9);
        }
        assert!(fidelity(&zero, &rho).is_err());
    }

    #[test]
    fn fidelity_is_symmetric() {
        for seed in 0..30 {
            let a = sample_induced_two_qubit(1 + seed as usize % 2, seed).unwrap();
            let b = sample_induced_two_qubit(2, seed + 500).unwrap();
            assert_abs_diff_eq!(fidelity(&a, &b).unwrap(), fidelity(&b, &a).unwrap(), epsilon = 1e-9);
        }
    }

    #[test]
    fn pure_concurrence_fixtures() {
        let cut = Subsystem::single(0);
        assert_eq!(concurrence_pure(&named(NamedFamily::Product, 4), &cut).unwrap(), 0.0);
        assert_abs_diff_eq!(concurrence_pure(&named(NamedFamily::Ghz, 3), &cut).unwrap(), 1.0, epsilon = 1e-12);
        // ρ_A = diag(2/3, 1/3), tr ρ_A² = 5/9.
        let w = concurrence_pure(&named(NamedFamily::W, 3), &cut).unwrap();
        assert_abs_diff_eq!(w, 2.0 * SQRT2 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(w, 0.942809, epsilon = 1e-6);
        let rest = Subsystem::new(vec![1, 2]);
        assert_abs_diff_eq!(concurrence_pure(&named(NamedFamily::W, 3), &rest).unwrap(), w, epsilon = 1e-12);
    }

    #[test]
    fn pure_concurrence_rejects_trivial_cuts() {
        let ghz = named(NamedFamily::Ghz, 3);
        assert!(matches!(concurrence_pure(&ghz, &Subsystem::new(vec![])), Err(Error::Domain(_))));
        assert!(matches!(concurrence_pure(&ghz, &Subsystem::new(vec![0, 1, 2])), Err(Error::Domain(_))));
        assert!(matches!(concurrence_pure(&ghz, &Subsystem::single(5)), Err(Error::Index(_))));
    }

    #[test]
    fn wootters_fixtures() {
        let bell = named(NamedFamily::Bell, 2).density();
        assert_abs_diff_eq!(concurrence_two_qubit(&bell).unwrap(), 1.0, epsilon = 1e-12);

        let w_pair = named(NamedFamily::W, 3).reduced(&Subsystem::new(vec![0, 1])).unwrap();
        assert_abs_diff_eq!(concurrence_two_qubit(&w_pair).unwrap(), 2.0 / 3.0, epsilon = 1e-9);

        let ghz_pair = named(NamedFamily::Ghz, 3).reduced(&Subsystem::new(vec![0, 2])).unwrap();
        assert_abs_diff_eq!(concurrence_two_qubit(&ghz_pair).unwrap(), 0.0, epsilon = 1e-9);

        let werner = bell.mix(&DensityMatrix::maximally_mixed(2), 1.0 / 3.0).unwrap();
        assert_abs_diff_eq!(concurrence_two_qubit(&werner).unwrap(), 0.0, epsilon = 1e-9);
        let werner = bell.mix(&DensityMatrix::maximally_mixed(2), 0.6).unwrap();
        // (3p − 1)/2 for Werner states.
        assert_abs_diff_eq!(concurrence_two_qubit(&werner).unwrap(), 0.4, epsilon = 1e-9);

        let three = named(NamedFamily::W, 3).density();
        assert!(matches!(concurrence_two_qubit(&three), Err(Error::Shape(_))));
    }

    #[test]
    fn measures_of_fixtures() {
        let ghz = named(NamedFamily::Ghz, 3);
        let cut = Subsystem::single(0);
        let g = measure_pure_bipartition(&ghz, &cut, MeasureKind::Geometric).unwrap();
        assert_abs_diff_eq!(g.value, 0.5, epsilon = 1e-12);
        let b = measure_pure_bipartition(&ghz, &cut, MeasureKind::Bures).unwrap();
        assert_abs_diff_eq!(b.value, 2.0 - SQRT2, epsilon = 1e-12);
        for kind in MeasureKind::ALL {
            let p = measure_pure_bipartition(&named(NamedFamily::Product, 3), &cut, kind).unwrap();
            assert_eq!(p.value, 0.0);
        }
        let bell = named(NamedFamily::Bell, 2).density();
        // B has infinite slope at C = 1, so a rounding-level C costs ~1e-8 here.
        assert_abs_diff_eq!(measure_two_qubit(&bell, MeasureKind::Bures).unwrap().value, 2.0 - SQRT2, epsilon = 1e-7);
        let w_pair = named(NamedFamily::W, 3).reduced(&Subsystem::new(vec![0, 2])).unwrap();
        assert_abs_diff_eq!(
            measure_two_qubit(&w_pair, MeasureKind::Geometric).unwrap().value,
            0.1273220,
            epsilon = 1e-7
        );
        let sep = DensityMatrix::maximally_mixed(2);
        for kind in MeasureKind::DISTANCE {
            assert_eq!(measure_two_qubit(&sep, kind).unwrap().value, 0.0);
        }
    }

    #[test]
    fn cut_spectrum_is_exact_at_the_extremes() {
        let ghz = named(NamedFamily::Ghz, 3);
        let s = qubit_cut_spectrum(&ghz, &Subsystem::single(0)).unwrap();
        assert_abs_diff_eq!(s.measure(MeasureKind::Geometric), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(s.concurrence_sqr(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.measure(MeasureKind::Bures), 2.0 - SQRT2, epsilon = 1e-15);
        let rest = qubit_cut_spectrum(&ghz, &Subsystem::new(vec![1, 2])).unwrap();
        assert_eq!(rest, s);
        let p = qubit_cut_spectrum(&named(NamedFamily::Product, 4), &Subsystem::single(0)).unwrap();
        for kind in MeasureKind::ALL {
            assert_eq!(p.measure(kind), 0.0);
        }
    }

    proptest! {
        #[test]
        fn cut_spectrum_matches_the_concurrence_forms(seed in 0u64..2000, n in 2usize..6) {
            let psi = sample_haar_state(n, seed).unwrap();
            let s = qubit_cut_spectrum(&psi, &Subsystem::single(0)).unwrap();
            let c = concurrence_pure(&psi, &Subsystem::single(0)).unwrap();
            prop_assert!((s.measure(MeasureKind::Concurrence) - c).abs() < 1e-12);
            prop_assert!((s.measure(MeasureKind::Geometric) - g_of(c).unwrap()).abs() < 1e-12);
            prop_assert!((s.measure(MeasureKind::Bures) - b_of(c).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn pure_bipartition_requires_one_qubit_cut() {
        let psi = sample_haar_state(4, 0).unwrap();
        assert!(measure_pure_bipartition(&psi, &Subsystem::new(vec![0, 1]), MeasureKind::Bures).is_err());
        assert!(measure_pure_bipartition(&psi, &Subsystem::new(vec![1, 2, 3]), MeasureKind::Bures).is_ok());
    }

    #[test]
    fn mixed_and_pure_routes_agree_on_pure_states() {
        for seed in 0..100 {
            let psi = sample_haar_state(2, seed).unwrap();
            for kind in MeasureKind::ALL {
                let mixed = measure_two_qubit(&psi.density(), kind).unwrap().value;
                let pure = measure_pure_bipartition(&psi, &Subsystem::single(0), kind).unwrap().value;
                assert_abs_diff_eq!(mixed, pure, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn schmidt_coefficients_give_concurrence() {
        for seed in 0..20 {
            let psi = sample_haar_state(2, seed).unwrap();
            let (s0, s1) = schmidt_coefficients(&psi).unwrap();
            assert_abs_diff_eq!(s0 * s0 + s1 * s1, 1.0, epsilon = 1e-12);
            let c = concurrence_pure(&psi, &Subsystem::single(0)).unwrap();
            assert_abs_diff_eq!(2.0 * s0 * s1, c, epsilon = 1e-10);
        }
    }

    #[test]
    fn local_unitaries_leave_measures_unchanged() {
        for seed in 0..100u64 {
            let rho = sample_induced_two_qubit(1 + (seed as usize % 2), seed).unwrap();
            let u = kron(&sample_local_unitary(2 * seed + 1), &sample_local_unitary(2 * seed + 2)).unwrap();
            let moved = rho.transform(&u).unwrap();
            for kind in MeasureKind::ALL {
                let before = measure_two_qubit(&rho, kind).unwrap().value;
                let after = measure_two_qubit(&moved, kind).unwrap().value;
                assert_abs_diff_eq!(before, after, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn one_sided_channels_do_not_increase_measures() {
        for seed in 0..200u64 {
            let psi = sample_haar_state(2, seed).unwrap().density();
            let ch = sample_channel(seed + 7, 1 + (seed as usize % 4)).unwrap();
            let out = apply_channel_one_side(&psi, &ch, 1).unwrap();
            for kind in MeasureKind::DISTANCE {
                let before = measure_two_qubit(&psi, kind).unwrap().value;
                let after = measure_two_qubit(&out, kind).unwrap().value;
                assert!(after <= before + 1e-8, "seed {seed} {kind}: {after} > {before}");
            }
        }
    }

    #[test]
    fn depolarized_bell_pair_is_separable() {
        let bell = named(NamedFamily::Bell, 2).density();
        let out = apply_channel_one_side(&bell, &KrausChannel::completely_depolarizing(), 1).unwrap();
        assert_abs_diff_eq!(concurrence_two_qubit(&out).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn measure_kind_parsing() {
        assert_eq!("Bures".parse::<MeasureKind>().unwrap(), MeasureKind::Bures);
        assert!("negativity".parse::<MeasureKind>().is_err());
        assert_eq!(serde_json::to_string(&MeasureKind::Geometric).unwrap(), "\"geometric\"");
    }
}
