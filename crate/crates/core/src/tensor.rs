//! Dense complex linear algebra for registers of up to eight qubits.
//!
//! Matrices are row-major. Basis index `i` of an `n`-qubit register encodes
//! qubit `q` in bit `n - 1 - q`, so qubit 0 is the most significant bit.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::MAX_DIM;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Tolerance on `max |m - m†|` accepted by [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Eigenvalues at or above `-PSD_CLAMP` are clamped to zero; anything more
/// negative is rejected with [`Error::NotPsd`].
pub const PSD_CLAMP: f64 = 1e-10;
/// Eigenvalues at or below `FACTOR_CUTOFF · max(1, λ_max)` are dropped by
/// [`psd_factor`]; they are eigensolver noise on a rank-deficient input.
pub const FACTOR_CUTOFF: f64 = 1e-13;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting NaN and infinities.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries cannot fill a {rows}x{cols} matrix", data.len())));
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(pos / cols.max(1), pos % cols.max(1)));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Outer product `|v⟩⟨v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermiticity_defect(&self) -> f64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(m + m†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "vector length differs from column count");
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `self · m · self†`.
    pub fn conjugate(&self, m: &Self) -> Self {
        self.matmul(m).matmul(&self.adjoint())
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = ONE;
        for col in 0..n {
            let pivot =
                (col..n).max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm())).unwrap_or(col);
            if a[pivot * n + col] == ZERO {
                return Ok(ZERO);
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in col + 1..n {
                let f = a[r * n + col] / p;
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= f * v;
                }
            }
        }
        Ok(det)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, " {:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Ordered, duplicate-free list of qubit indices naming one side of a cut.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subsystem(Vec<usize>);

impl Subsystem {
    pub fn new(qubits: impl Into<Vec<usize>>) -> Self {
        Self(qubits.into())
    }

    pub fn single(qubit: usize) -> Self {
        Self(vec![qubit])
    }

    pub fn qubits(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Qubits of an `n`-qubit register not in this subsystem, ascending.
    pub fn complement(&self, n_qubits: usize) -> Subsystem {
        Subsystem((0..n_qubits).filter(|q| !self.0.contains(q)).collect())
    }

    /// Checks the indices are in range and distinct.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        for (pos, &q) in self.0.iter().enumerate() {
            if q >= n_qubits {
                return Err(Error::Index(format!("qubit {q} out of range for {n_qubits} qubits")));
            }
            if self.0[..pos].contains(&q) {
                return Err(Error::Index(format!("qubit {q} listed twice")));
            }
        }
        Ok(())
    }
}

impl From<Vec<usize>> for Subsystem {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

impl From<&[usize]> for Subsystem {
    fn from(v: &[usize]) -> Self {
        Self(v.to_vec())
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let rows = a.rows.checked_mul(b.rows);
    let cols = a.cols.checked_mul(b.cols);
    let (rows, cols) = match (rows, cols) {
        (Some(r), Some(c)) if r <= MAX_DIM && c <= MAX_DIM => (r, c),
        _ => {
            return Err(Error::Size(format!(
                "{}x{} ⊗ {}x{} exceeds the {MAX_DIM}-per-side limit",
                a.rows, a.cols, b.rows, b.cols
            )))
        }
    };
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out.data[(i * b.rows + k) * cols + j * b.cols + l] = aij * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Unitary; column `j` belongs to `eigenvalues[j]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    /// `V diag(f(λ)) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = ZERO;
                for (k, &w) in weights.iter().enumerate() {
                    if w != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * w;
                    }
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
            out[(i, i)].im = 0.0;
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|l| l)
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// The input is symmetrized as `(m + m†)/2` after the Hermiticity check.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEig> {
    if !m.is_square() {
        return Err(Error::Shape(format!("eigendecomposition of a {}x{} matrix", m.rows, m.cols)));
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let n = m.rows;
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm();
    if scale > 0.0 && n > 1 {
        for _sweep in 0..64 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= f64::EPSILON * 1e-3 * scale {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&x, &y| diag[y].total_cmp(&diag[x]));
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new)] = v[(i, old)];
        }
    }
    Ok(HermitianEig { eigenvalues: order.iter().map(|&i| diag[i]).collect(), eigenvectors: vectors })
}

/// One rotation `a ← J† a J`, `v ← v J` that annihilates `a[p][q]`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Below the resolution of the diagonal the rotation would only add noise.
    if mag <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // J[p][p] = c, J[p][q] = s·e, J[q][p] = -s·ē, J[q][q] = c.
    let jpq = phase * s;
    let jqp = -phase.conj() * s;
    let n = a.rows;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * jqp;
        a[(k, q)] = akp * jpq + akq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * jqp.conj();
        a[(q, k)] = apk * jpq.conj() + aqk * c;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * c;
    }
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn matrix_sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = psd_eig(m)?;
    Ok(eig.map_spectrum(|l| l.max(0.0).sqrt()))
}

fn psd_eig(m: &ComplexMatrix) -> Result<HermitianEig> {
    let eig = hermitian_eig(m)?;
    let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
    if min < -PSD_CLAMP {
        return Err(Error::NotPsd(min));
    }
    Ok(eig)
}

/// A factor `W` (`n × r`) with `W W† = m`, built from the eigenvalues above
/// the noise floor. `r` is at least 1 so the factor is never empty.
///
/// Unlike [`matrix_sqrt_psd`], the result carries no `√ε` entries from
/// near-zero eigenvalues, so spectra derived from it keep absolute accuracy
/// on low-rank inputs.
pub fn psd_factor(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = psd_eig(m)?;
    let top = eig.eigenvalues.first().copied().unwrap_or(0.0);
    let cutoff = FACTOR_CUTOFF * top.max(1.0);
    let rank = eig.eigenvalues.iter().filter(|&&l| l > cutoff).count().max(1);
    let n = m.rows;
    let mut w = ComplexMatrix::zeros(n, rank);
    for (k, &l) in eig.eigenvalues.iter().take(rank).enumerate() {
        let s = l.max(0.0).sqrt();
        for i in 0..n {
            w[(i, k)] = eig.eigenvectors[(i, k)] * s;
        }
    }
    Ok(w)
}

/// Singular values of `a`, descending, `min(rows, cols)` of them.
///
/// Computed as the nonnegative half of the spectrum of `[[0, a], [a†, 0]]`,
/// which keeps small singular values accurate to `ε‖a‖` instead of `√ε`.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let (r, c) = (a.rows, a.cols);
    if r + c > 2 * MAX_DIM {
        return Err(Error::Size(format!("{r}x{c} matrix is too large")));
    }
    let mut h = ComplexMatrix::zeros(r + c, r + c);
    for i in 0..r {
        for j in 0..c {
            h[(i, r + j)] = a[(i, j)];
            h[(r + j, i)] = a[(i, j)].conj();
        }
    }
    let eig = hermitian_eig(&h)?;
    Ok(eig.eigenvalues.iter().take(r.min(c)).map(|&s| s.max(0.0)).collect())
}

/// Reduced matrix on the qubits in `keep`, in the order listed.
///
/// `m` must be `2^n × 2^n`; the remaining qubits are traced out.
pub fn partial_trace(m: &ComplexMatrix, n_qubits: usize, keep: &Subsystem) -> Result<ComplexMatrix> {
    let dim = 1usize
        .checked_shl(n_qubits as u32)
        .filter(|&d| d <= MAX_DIM)
        .ok_or_else(|| Error::Size(format!("{n_qubits} qubits exceeds the supported register")))?;
    if m.rows != dim || m.cols != dim {
        return Err(Error::Shape(format!("{}x{} matrix does not describe {n_qubits} qubits", m.rows, m.cols)));
    }
    keep.validate(n_qubits)?;
    let traced = keep.complement(n_qubits);
    let kept_dim = 1usize << keep.len();
    let traced_dim = 1usize << traced.len();
    let kept_offsets = basis_offsets(keep.qubits(), n_qubits);
    let traced_offsets = basis_offsets(traced.qubits(), n_qubits);

    let mut out = ComplexMatrix::zeros(kept_dim, kept_dim);
    for a in 0..kept_dim {
        for b in 0..kept_dim {
            let mut acc = ZERO;
            for &t in &traced_offsets[..traced_dim] {
                acc += m[(kept_offsets[a] | t, kept_offsets[b] | t)];
            }
            out[(a, b)] = acc;
        }
    }
    Ok(out)
}

/// For each local index `x` over `qubits` (first listed = most significant),
/// the full-register index with only those qubits set.
pub(crate) fn basis_offsets(qubits: &[usize], n_qubits: usize) -> Vec<usize> {
    let k = qubits.len();
    (0..1usize << k)
        .map(|x| {
            qubits.iter().enumerate().fold(0usize, |acc, (pos, &q)| {
                let bit = (x >> (k - 1 - pos)) & 1;
                acc | (bit << (n_qubits - 1 - q))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
        let data = (0..rows * cols).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        ComplexMatrix::from_vec(rows, cols, data).unwrap()
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        random_matrix(rng, n, n).hermitian_part()
    }

    fn random_psd(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> ComplexMatrix {
        let g = random_matrix(rng, n, rank);
        let p = g.matmul(&g.adjoint());
        let tr = p.trace().re;
        p.scale(c(1.0 / tr, 0.0))
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2).unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_places_basis_projector() {
        let p0 = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let p1 = ComplexMatrix::from_diagonal(&[0.0, 1.0]);
        let k = kron(&p0, &p1).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if (i, j) == (1, 1) { 1.0 } else { 0.0 };
                assert_eq!(k[(i, j)], c(expected, 0.0));
            }
        }
    }

    #[test]
    fn kron_trace_factorizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 2, 2);
            let b = random_matrix(&mut rng, 2, 2);
            let k = kron(&a, &b).unwrap();
            // Direct oracle: tr(a⊗b) = Σ_i Σ_k a_ii b_kk.
            let mut expected = ZERO;
            for i in 0..2 {
                for kk in 0..2 {
                    expected += a[(i, i)] * b[(kk, kk)];
                }
            }
            assert!((k.trace() - expected).norm() < 1e-14);
            assert!((k.trace() - a.trace() * b.trace()).norm() < 1e-14);
        }
    }

    #[test]
    fn kron_rejects_oversized_product() {
        let big = ComplexMatrix::identity(32);
        let small = ComplexMatrix::identity(16);
        assert!(matches!(kron(&big, &small), Err(Error::Size(_))));
        assert!(kron(&small, &small).is_ok());
    }

    #[test]
    fn kron_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 2, 2);
        let b = random_matrix(&mut rng, 2, 3);
        let d = random_matrix(&mut rng, 3, 2);
        let left = kron(&kron(&a, &b).unwrap(), &d).unwrap();
        let right = kron(&a, &kron(&b, &d).unwrap()).unwrap();
        assert!(left.max_abs_diff(&right) < 1e-15);
    }

    #[test]
    fn eig_of_diagonal_sorts_descending() {
        let eig = hermitian_eig(&ComplexMatrix::from_diagonal(&[1.0, 3.0])).unwrap();
        assert_eq!(eig.eigenvalues, vec![3.0, 1.0]);
    }

    #[test]
    fn eig_of_pauli_x() {
        let x = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let eig = hermitian_eig(&x).unwrap();
        assert_abs_diff_eq!(eig.eigenvalues[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(eig.eigenvalues[1], -1.0, epsilon = 1e-15);
        let plus = eig.eigenvectors.column(0);
        let minus = eig.eigenvectors.column(1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // Up to a global phase.
        assert_abs_diff_eq!((plus[0] * s + plus[1] * s).norm(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!((minus[0] * s - minus[1] * s).norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2, 3, 4, 8, 16] {
            let m = random_hermitian(&mut rng, n);
            let eig = hermitian_eig(&m).unwrap();
            assert!((&eig.reconstruct() - &m).frobenius_norm() <= 1e-10);
            assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
            let v = &eig.eigenvectors;
            assert!((&v.adjoint().matmul(v) - &ComplexMatrix::identity(n)).frobenius_norm() < 1e-12);
            assert_abs_diff_eq!(eig.eigenvalues.iter().sum::<f64>(), m.trace().re, epsilon = 1e-10);
        }
    }

    #[test]
    fn eig_rejects_bad_input() {
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(hermitian_eig(&rect), Err(Error::Shape(_))));
        let skew = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0]).unwrap();
        assert!(matches!(hermitian_eig(&skew), Err(Error::NotHermitian(_))));
        // Within tolerance is symmetrized instead.
        let nearly = ComplexMatrix::from_real(2, 2, &[1.0, 0.5, 0.5 + 1e-11, 2.0]).unwrap();
        assert!(hermitian_eig(&nearly).is_ok());
    }

    #[test]
    fn sqrt_of_simple_matrices() {
        let i3 = ComplexMatrix::identity(3);
        assert!(matrix_sqrt_psd(&i3).unwrap().max_abs_diff(&i3) < 1e-15);
        let r = matrix_sqrt_psd(&ComplexMatrix::from_diagonal(&[4.0, 9.0])).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::from_diagonal(&[2.0, 3.0])) < 1e-14);
    }

    #[test]
    fn sqrt_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, rank) in [(2, 2), (4, 4), (4, 2), (8, 3), (16, 16)] {
            let rho = random_psd(&mut rng, n, rank);
            let r = matrix_sqrt_psd(&rho).unwrap();
            assert!(r.hermiticity_defect() < 1e-14);
            assert!((&r.matmul(&r) - &rho).frobenius_norm() <= 1e-9);
            assert!(hermitian_eig(&r).unwrap().eigenvalues.iter().all(|&l| l >= -1e-12));
        }
    }

    #[test]
    fn sqrt_rejects_negative_spectrum() {
        let m = ComplexMatrix::from_diagonal(&[1.0, -1e-6]);
        assert!(matches!(matrix_sqrt_psd(&m), Err(Error::NotPsd(_))));
        let m = ComplexMatrix::from_diagonal(&[1.0, -1e-9]);
        assert!(matches!(matrix_sqrt_psd(&m), Err(Error::NotPsd(_))));
        let drift = ComplexMatrix::from_diagonal(&[1.0, -1e-11]);
        let r = matrix_sqrt_psd(&drift).unwrap();
        assert_eq!(r[(1, 1)], ZERO);
    }

    #[test]
    fn factor_reproduces_low_rank_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let v = random_matrix(&mut rng, 6, 2);
        let m = v.matmul(&v.adjoint()).hermitian_part();
        let w = psd_factor(&m).unwrap();
        assert_eq!(w.cols(), 2);
        assert!(w.matmul(&w.adjoint()).max_abs_diff(&m) < 1e-12);
        let z = psd_factor(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert_eq!((z.rows(), z.cols()), (3, 1));
        assert!(matches!(psd_factor(&ComplexMatrix::from_diagonal(&[1.0, -1e-6])), Err(Error::NotPsd(_))));
    }

    #[test]
    fn singular_values_match_the_gram_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = random_matrix(&mut rng, 3, 5);
        let sv = singular_values(&a).unwrap();
        assert_eq!(sv.len(), 3);
        let gram = hermitian_eig(&a.matmul(&a.adjoint()).hermitian_part()).unwrap();
        for (s, g) in sv.iter().zip(&gram.eigenvalues) {
            assert!((s * s - g).abs() < 1e-12);
        }
        // Tiny singular values keep absolute accuracy.
        let d = ComplexMatrix::from_diagonal(&[1.0, 1e-12, 0.0]);
        let sv = singular_values(&d).unwrap();
        assert!((sv[1] - 1e-12).abs() < 1e-20 && sv[2] == 0.0);
    }

    #[test]
    fn partial_trace_of_product_state() {
        let zero = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let plus = ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        let rho = kron(&zero, &plus).unwrap();
        let a = partial_trace(&rho, 2, &Subsystem::single(0)).unwrap();
        assert!(a.max_abs_diff(&zero) < 1e-15);
        let b = partial_trace(&rho, 2, &Subsystem::single(1)).unwrap();
        assert!(b.max_abs_diff(&plus) < 1e-15);
    }

    #[test]
    fn partial_trace_of_ghz_is_maximally_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut psi = vec![ZERO; 8];
        psi[0] = c(s, 0.0);
        psi[7] = c(s, 0.0);
        let rho = ComplexMatrix::outer(&psi);
        // Direct summation oracle: ρ_A[a][b] = Σ_{t} ψ[a,t] ψ*[b,t] with t over 4 traced indices.
        let mut oracle = ComplexMatrix::zeros(2, 2);
        for a in 0..2 {
            for b in 0..2 {
                for t in 0..4 {
                    oracle[(a, b)] += psi[a * 4 + t] * psi[b * 4 + t].conj();
                }
            }
        }
        let reduced = partial_trace(&rho, 3, &Subsystem::single(0)).unwrap();
        assert!(reduced.max_abs_diff(&oracle) < 1e-15);
        assert!(reduced.max_abs_diff(&ComplexMatrix::from_diagonal(&[0.5, 0.5])) < 1e-15);
    }

    #[test]
    fn partial_trace_respects_keep_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let a = random_psd(&mut rng, 2, 2);
        let b = random_psd(&mut rng, 2, 2);
        let d = random_psd(&mut rng, 2, 2);
        let rho = kron(&kron(&a, &b).unwrap(), &d).unwrap();
        let kept = partial_trace(&rho, 3, &Subsystem::new(vec![2, 0])).unwrap();
        assert!(kept.max_abs_diff(&kron(&d, &a).unwrap()) < 1e-14);
    }

    #[test]
    fn partial_trace_composes() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let rho = random_psd(&mut rng, 16, 5);
        let once = partial_trace(&rho, 4, &Subsystem::new(vec![0, 3])).unwrap();
        let step = partial_trace(&rho, 4, &Subsystem::new(vec![0, 2, 3])).unwrap();
        let twice = partial_trace(&step, 3, &Subsystem::new(vec![0, 2])).unwrap();
        assert!(once.max_abs_diff(&twice) <= 1e-12);
        assert_abs_diff_eq!(once.trace().re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn partial_trace_validates_indices() {
        let rho = ComplexMatrix::identity(4);
        assert!(matches!(partial_trace(&rho, 2, &Subsystem::single(2)), Err(Error::Index(_))));
        assert!(matches!(partial_trace(&rho, 2, &Subsystem::new(vec![1, 1])), Err(Error::Index(_))));
        assert!(matches!(partial_trace(&rho, 3, &Subsystem::single(0)), Err(Error::Shape(_))));
    }

    #[test]
    fn determinant_of_rotation() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = ComplexMatrix::from_real(2, 2, &[s, s, s, -s]).unwrap();
        assert_abs_diff_eq!(h.determinant().unwrap().re, -1.0, epsilon = 1e-15);
    }
}
