//! Pure states, density matrices, local unitaries and one-sided channels.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{basis_offsets, hermitian_eig, kron, partial_trace, ComplexMatrix, Subsystem};
use crate::MAX_QUBITS;

/// Normalization tolerance for states built in code.
pub const NORM_TOL: f64 = 1e-10;
/// Normalization tolerance for states read from files.
pub const FILE_NORM_TOL: f64 = 1e-6;
/// Tolerance on Hermiticity, trace and spectrum of a [`DensityMatrix`].
pub const DENSITY_TOL: f64 = 1e-10;
/// Tolerance on `Σ K†K = I`.
pub const COMPLETENESS_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn dim_of(n_qubits: usize) -> usize {
    1 << n_qubits
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::Shape(format!("{len} amplitudes is not 2^n for n >= 1")));
    }
    let n = len.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::Size(format!("{n} qubits exceeds the {MAX_QUBITS}-qubit limit")));
    }
    Ok(n)
}

/// A normalized pure state of `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Accepts amplitudes whose squared norm is within [`NORM_TOL`] of one.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(amplitudes, NORM_TOL)
    }

    /// Accepts amplitudes whose norm is within `tol` of one, then renormalizes.
    pub fn with_tolerance(amplitudes: Vec<Complex64>, tol: f64) -> Result<Self> {
        let n_qubits = qubits_for_len(amplitudes.len())?;
        if let Some(i) = amplitudes.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState(format!("amplitude {i} is not finite")));
        }
        let norm = norm_of(&amplitudes);
        if (norm - 1.0).abs() > tol {
            return Err(Error::InvalidState(format!("normalization: norm is {norm}, off from 1 by more than {tol:e}")));
        }
        Ok(Self { n_qubits, amplitudes: amplitudes.into_iter().map(|z| z / norm).collect() })
    }

    /// Rescales any nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n_qubits = qubits_for_len(amplitudes.len())?;
        let norm = norm_of(&amplitudes);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidState("cannot normalize a zero or non-finite vector".into()));
        }
        Ok(Self { n_qubits, amplitudes: amplitudes.into_iter().map(|z| z / norm).collect() })
    }

    /// `|0…0⟩` with the given basis index set to one.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS || index >= dim_of(n_qubits) {
            return Err(Error::Domain(format!("basis state {index} of {n_qubits} qubits")));
        }
        let mut amplitudes = vec![ZERO; dim_of(n_qubits)];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amplitudes)
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix { n_qubits: self.n_qubits, matrix: ComplexMatrix::outer(&self.amplitudes) }
    }

    /// Reduced density matrix on `keep`, computed straight from the amplitudes.
    pub fn reduced(&self, keep: &Subsystem) -> Result<DensityMatrix> {
        keep.validate(self.n_qubits)?;
        if keep.is_empty() {
            return Err(Error::Domain("cannot reduce to an empty subsystem".into()));
        }
        let traced = keep.complement(self.n_qubits);
        let kept = basis_offsets(keep.qubits(), self.n_qubits);
        let rest = basis_offsets(traced.qubits(), self.n_qubits);
        let d = kept.len();
        let mut m = ComplexMatrix::zeros(d, d);
        for a in 0..d {
            for b in a..d {
                let acc: Complex64 =
                    rest.iter().map(|&t| self.amplitudes[kept[a] | t] * self.amplitudes[kept[b] | t].conj()).sum();
                m[(a, b)] = acc;
                m[(b, a)] = acc.conj();
            }
            m[(a, a)].im = 0.0;
        }
        Ok(DensityMatrix { n_qubits: keep.len(), matrix: m })
    }

    /// Relabels qubits: qubit `i` of the result is qubit `perm[i]` of `self`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<StateVector> {
        if perm.len() != self.n_qubits {
            return Err(Error::Index(format!("permutation of length {} for {} qubits", perm.len(), self.n_qubits)));
        }
        Subsystem::new(perm.to_vec()).validate(self.n_qubits)?;
        let offsets = basis_offsets(perm, self.n_qubits);
        let amplitudes = offsets.iter().map(|&src| self.amplitudes[src]).collect();
        Ok(StateVector { n_qubits: self.n_qubits, amplitudes })
    }

    /// Applies a one-qubit operator to `target`.
    pub fn apply_one_qubit(&self, op: &ComplexMatrix, target: usize) -> Result<StateVector> {
        if op.rows() != 2 || op.cols() != 2 {
            return Err(Error::Shape("one-qubit operator must be 2x2".into()));
        }
        if target >= self.n_qubits {
            return Err(Error::Index(format!("qubit {target} out of range for {} qubits", self.n_qubits)));
        }
        let bit = 1 << (self.n_qubits - 1 - target);
        let mut out = self.amplitudes.clone();
        for i in (0..self.amplitudes.len()).filter(|i| i & bit == 0) {
            let (a0, a1) = (self.amplitudes[i], self.amplitudes[i | bit]);
            out[i] = op[(0, 0)] * a0 + op[(0, 1)] * a1;
            out[i | bit] = op[(1, 0)] * a0 + op[(1, 1)] * a1;
        }
        Ok(StateVector { n_qubits: self.n_qubits, amplitudes: out })
    }

    pub fn to_file(&self) -> StateFile {
        StateFile { n_qubits: self.n_qubits, amplitudes: self.amplitudes.iter().map(|z| [z.re, z.im]).collect() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("state file serializes")
    }

    /// Parses the state JSON format and validates it with [`FILE_NORM_TOL`].
    pub fn from_json(text: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        file.into_state()
    }
}

fn norm_of(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// On-disk state: `{"n_qubits": n, "amplitudes": [[re, im], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n_qubits: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn into_state(self) -> Result<StateVector> {
        if self.n_qubits == 0 || self.n_qubits > MAX_QUBITS {
            return Err(Error::Parse(format!("n_qubits: {} is outside 1..={MAX_QUBITS}", self.n_qubits)));
        }
        let expected = dim_of(self.n_qubits);
        if self.amplitudes.len() != expected {
            return Err(Error::Parse(format!(
                "amplitudes: expected {expected} entries for {} qubits, found {}",
                self.n_qubits,
                self.amplitudes.len()
            )));
        }
        if let Some(i) = self.amplitudes.iter().position(|[re, im]| !re.is_finite() || !im.is_finite()) {
            return Err(Error::Parse(format!("amplitudes[{i}]: entry is not finite")));
        }
        let amps = self.amplitudes.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        StateVector::with_tolerance(amps, FILE_NORM_TOL)
    }
}

/// A density operator on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity within [`DENSITY_TOL`].
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Shape(format!("{}x{} density matrix", matrix.rows(), matrix.cols())));
        }
        let n_qubits = qubits_for_len(matrix.rows())?;
        let defect = matrix.hermiticity_defect();
        if defect > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("Hermiticity defect {defect:e}")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let min = hermitian_eig(&matrix)?.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { n_qubits, matrix: matrix.hermitian_part() })
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let d = dim_of(n_qubits);
        Self { n_qubits, matrix: ComplexMatrix::identity(d).scale(Complex64::new(1.0 / d as f64, 0.0)) }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn purity(&self) -> f64 {
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn partial_trace(&self, keep: &Subsystem) -> Result<DensityMatrix> {
        let m = partial_trace(&self.matrix, self.n_qubits, keep)?;
        Ok(DensityMatrix { n_qubits: keep.len(), matrix: m })
    }

    /// `U ρ U†` for a unitary on the whole register.
    pub fn transform(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        if u.rows() != self.dim() || u.cols() != self.dim() {
            return Err(Error::Shape(format!("{}x{} unitary on dimension {}", u.rows(), u.cols(), self.dim())));
        }
        Ok(DensityMatrix { n_qubits: self.n_qubits, matrix: u.conjugate(&self.matrix).hermitian_part() })
    }

    /// Convex combination `p·self + (1-p)·other`.
    pub fn mix(&self, other: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
        if self.dim() != other.dim() {
            return Err(Error::Shape("mixing density matrices of different dimension".into()));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("mixing weight {p} outside [0, 1]")));
        }
        let m = &self.matrix.scale(Complex64::new(p, 0.0)) + &other.matrix.scale(Complex64::new(1.0 - p, 0.0));
        Ok(DensityMatrix { n_qubits: self.n_qubits, matrix: m })
    }
}

/// Canonical fixture states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedFamily {
    Ghz,
    W,
    Product,
    Bell,
}

/// `GHZ_n`, `W_n`, `|0⟩^⊗n` or the Bell state `|Φ⁺⟩`.
pub fn make_named_state(family: NamedFamily, n: usize) -> Result<StateVector> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(Error::Domain(format!("{family:?} state needs 2..={MAX_QUBITS} qubits, got {n}")));
    }
    let d = dim_of(n);
    let mut amps = vec![ZERO; d];
    match family {
        NamedFamily::Ghz => {
            amps[0] = Complex64::new(1.0, 0.0);
            amps[d - 1] = Complex64::new(1.0, 0.0);
        }
        NamedFamily::W => {
            for q in 0..n {
                amps[1 << q] = Complex64::new(1.0, 0.0);
            }
        }
        NamedFamily::Product => amps[0] = Complex64::new(1.0, 0.0),
        NamedFamily::Bell => {
            if n != 2 {
                return Err(Error::Domain(format!("Bell state is defined for 2 qubits, got {n}")));
            }
            amps[0] = Complex64::new(1.0, 0.0);
            amps[3] = Complex64::new(1.0, 0.0);
        }
    }
    StateVector::normalized(amps)
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Haar-random pure state on `n` qubits (normalized complex Gaussian vector).
pub fn sample_haar_state(n: usize, seed: u64) -> Result<StateVector> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(Error::Domain(format!("Haar sampling needs 2..={MAX_QUBITS} qubits, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = (0..dim_of(n)).map(|_| gaussian(&mut rng)).collect();
    StateVector::normalized(amps)
}

/// Haar-random `dim × dim` unitary.
///
/// Gram–Schmidt on a complex Gaussian matrix yields `R` with a positive real
/// diagonal, which is the phase convention that makes `Q` Haar distributed.
pub fn sample_haar_unitary(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..dim).map(|_| (0..dim).map(|_| gaussian(rng)).collect()).collect();
    for j in 0..dim {
        // Two passes keep the columns orthonormal to working precision.
        for _ in 0..2 {
            for i in 0..j {
                let proj: Complex64 = cols[i].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
                let (head, tail) = cols.split_at_mut(j);
                for (x, y) in tail[0].iter_mut().zip(&head[i]) {
                    *x -= proj * y;
                }
            }
        }
        let norm = norm_of(&cols[j]);
        for x in &mut cols[j] {
            *x /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(dim, dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

/// Haar-random single-qubit unitary.
pub fn sample_local_unitary(seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_haar_unitary(2, &mut rng)
}

/// Two-qubit mixed state from the induced measure: the `{0, 1}` marginal of a
/// Haar-random pure state on `2 + env_qubits` qubits.
pub fn sample_induced_two_qubit(env_qubits: usize, seed: u64) -> Result<DensityMatrix> {
    let psi = sample_haar_state(2 + env_qubits, seed)?;
    psi.reduced(&Subsystem::new(vec![0, 1]))
}

/// Completely positive trace-preserving map on one qubit, in Kraus form.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    operators: Vec<ComplexMatrix>,
}

impl KrausChannel {
    /// Validates shapes and `Σ K†K = I` within [`COMPLETENESS_TOL`].
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::Domain("a channel needs at least one Kraus operator".into()));
        }
        if operators.iter().any(|k| k.rows() != 2 || k.cols() != 2) {
            return Err(Error::Shape("Kraus operators must be 2x2".into()));
        }
        let channel = Self { operators };
        let defect = channel.completeness_defect();
        if defect > COMPLETENESS_TOL {
            return Err(Error::Domain(format!("Kraus operators are incomplete (defect {defect:e})")));
        }
        Ok(channel)
    }

    pub fn identity() -> Self {
        Self { operators: vec![ComplexMatrix::identity(2)] }
    }

    /// Maps every input to `I/2` (Kraus operators `σ/2` for the four Paulis).
    pub fn completely_depolarizing() -> Self {
        let half = |d: [f64; 4], im: bool| {
            let data = d
                .iter()
                .map(|&x| if im { Complex64::new(0.0, x / 2.0) } else { Complex64::new(x / 2.0, 0.0) })
                .collect();
            ComplexMatrix::from_vec(2, 2, data).expect("2x2")
        };
        Self {
            operators: vec![
                half([1.0, 0.0, 0.0, 1.0], false),
                half([0.0, 1.0, 1.0, 0.0], false),
                half([0.0, -1.0, 1.0, 0.0], true),
                half([1.0, 0.0, 0.0, -1.0], false),
            ],
        }
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    /// `‖Σ K†K − I‖_F`.
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(2, 2);
        for k in &self.operators {
            sum = &sum + &k.adjoint().matmul(k);
        }
        (&sum - &ComplexMatrix::identity(2)).frobenius_norm()
    }
}

/// Random single-qubit channel with `n_kraus` operators, by Stinespring
/// dilation: a Haar unitary on qubit ⊗ ancilla, ancilla prepared in `|0⟩` and
/// traced out afterwards.
pub fn sample_channel(seed: u64, n_kraus: usize) -> Result<KrausChannel> {
    if !(1..=4).contains(&n_kraus) {
        return Err(Error::Domain(format!("n_kraus must be in 1..=4, got {n_kraus}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = sample_haar_unitary(2 * n_kraus, &mut rng);
    // Qubit is the leading factor: row/column index = s · n_kraus + ancilla.
    let operators = (0..n_kraus)
        .map(|i| {
            let mut k = ComplexMatrix::zeros(2, 2);
            for s_out in 0..2 {
                for s_in in 0..2 {
                    k[(s_out, s_in)] = u[(s_out * n_kraus + i, s_in * n_kraus)];
                }
            }
            k
        })
        .collect();
    KrausChannel::new(operators)
}

/// Embeds a one-qubit operator on `target` of an `n`-qubit register.
pub fn embed_one_qubit(op: &ComplexMatrix, target: usize, n_qubits: usize) -> Result<ComplexMatrix> {
    if target >= n_qubits {
        return Err(Error::Index(format!("qubit {target} out of range for {n_qubits} qubits")));
    }
    let left = ComplexMatrix::identity(1 << target);
    let right = ComplexMatrix::identity(1 << (n_qubits - 1 - target));
    kron(&kron(&left, op)?, &right)
}

/// `Σᵢ Kᵢ ρ Kᵢ†` with every `Kᵢ` acting on qubit `target` only.
pub fn apply_channel_one_side(rho: &DensityMatrix, channel: &KrausChannel, target: usize) -> Result<DensityMatrix> {
    if target >= rho.n_qubits() {
        return Err(Error::Index(format!("qubit {target} out of range for {} qubits", rho.n_qubits())));
    }
    let d = rho.dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for k in channel.operators() {
        let full = embed_one_qubit(k, target, rho.n_qubits())?;
        out = &out + &full.conjugate(rho.matrix());
    }
    Ok(DensityMatrix { n_qubits: rho.n_qubits(), matrix: out.hermitian_part() })
}
