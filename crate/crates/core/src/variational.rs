//! Direct minimization of the Bures and geometric distances from a two-qubit
//! pure state to the product pure states.
//!
//! This path never touches the concurrence, so it serves as an independent
//! check of the closed forms `B(C)` and `G(C)`. A coarse 4-D grid over the Bloch
//! angles of both factors seeds a set of Nelder–Mead refinements and the best
//! refined value wins.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::states::StateVector;

/// Product state `(cos(θa/2)|0⟩ + e^{iφa} sin(θa/2)|1⟩) ⊗ (same for b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductAnsatz {
    pub theta_a: f64,
    pub phi_a: f64,
    pub theta_b: f64,
    pub phi_b: f64,
}

impl ProductAnsatz {
    fn from_array(p: [f64; 4]) -> Self {
        Self { theta_a: p[0], phi_a: p[1], theta_b: p[2], phi_b: p[3] }
    }

    fn factor(theta: f64, phi: f64) -> [Complex64; 2] {
        let (s, c) = (theta / 2.0).sin_cos();
        [Complex64::new(c, 0.0), Complex64::from_polar(s, phi)]
    }

    pub fn amplitudes(&self) -> [Complex64; 4] {
        let a = Self::factor(self.theta_a, self.phi_a);
        let b = Self::factor(self.theta_b, self.phi_b);
        [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
    }

    /// `|⟨φ_A φ_B|ψ⟩|²`.
    pub fn overlap_sqr(&self, psi: &[Complex64]) -> f64 {
        self.amplitudes().iter().zip(psi).map(|(p, s)| p.conj() * s).sum::<Complex64>().norm_sqr()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VariationalOptions {
    /// Grid points per angle.
    pub grid: usize,
    /// Number of best grid points refined.
    pub starts: usize,
    /// Simplex convergence threshold on the objective spread.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Jitters the grid offset.
    pub seed: u64,
}

impl Default for VariationalOptions {
    fn default() -> Self {
        Self { grid: 16, starts: 32, tolerance: 1e-10, max_iterations: 4000, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VariationalResult {
    pub value: f64,
    pub argmin: ProductAnsatz,
}

fn check_two_qubit_pure(psi: &StateVector) -> Result<[Complex64; 4]> {
    if psi.n_qubits() != 2 {
        return Err(Error::Shape(format!(
            "variational distance needs a two-qubit pure state, got {} qubits",
            psi.n_qubits()
        )));
    }
    let a = psi.amplitudes();
    Ok([a[0], a[1], a[2], a[3]])
}

/// `min 1 − |⟨φ_A φ_B|ψ⟩|²` over product states.
pub fn min_geometric_pure(psi: &StateVector) -> Result<f64> {
    min_geometric_pure_with(psi, &VariationalOptions::default()).map(|r| r.value)
}

/// `min 2 − 2|⟨φ_A φ_B|ψ⟩|` over product states.
pub fn min_bures_pure(psi: &StateVector) -> Result<f64> {
    min_bures_pure_with(psi, &VariationalOptions::default()).map(|r| r.value)
}

pub fn min_geometric_pure_with(psi: &StateVector, opts: &VariationalOptions) -> Result<VariationalResult> {
    let amps = check_two_qubit_pure(psi)?;
    Ok(minimize(|p| 1.0 - ProductAnsatz::from_array(p).overlap_sqr(&amps), opts))
}

pub fn min_bures_pure_with(psi: &StateVector, opts: &VariationalOptions) -> Result<VariationalResult> {
    let amps = check_two_qubit_pure(psi)?;
    Ok(minimize(|p| 2.0 - 2.0 * ProductAnsatz::from_array(p).overlap_sqr(&amps).sqrt(), opts))
}

fn minimize(f: impl Fn([f64; 4]) -> f64, opts: &VariationalOptions) -> VariationalResult {
    let g = opts.grid.max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let jitter: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.0..1.0));
    let theta_step = std::f64::consts::PI / g as f64;
    let phi_step = std::f64::consts::TAU / g as f64;
    let steps = [theta_step, phi_step, theta_step, phi_step];

    let mut seeds: Vec<(f64, [f64; 4])> = Vec::with_capacity(g.pow(4));
    for i in 0..g {
        for j in 0..g {
            for k in 0..g {
                for l in 0..g {
                    let p = [
                        (i as f64 + jitter[0]) * theta_step,
                        (j as f64 + jitter[1]) * phi_step,
                        (k as f64 + jitter[2]) * theta_step,
                        (l as f64 + jitter[3]) * phi_step,
                    ];
                    seeds.push((f(p), p));
                }
            }
        }
    }
    seeds.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut best = (f64::INFINITY, [0.0; 4]);
    for &(_, start) in seeds.iter().take(opts.starts.max(1)) {
        let found = nelder_mead(&f, start, steps.map(|s| s / 2.0), opts.tolerance, opts.max_iterations);
        if found.0 < best.0 {
            best = found;
        }
    }
    VariationalResult { value: best.0.max(0.0), argmin: ProductAnsatz::from_array(best.1) }
}

/// Standard Nelder–Mead (reflection 1, expansion 2, contraction ½, shrink ½),
/// restarted once from the best vertex to avoid a collapsed simplex.
fn nelder_mead(
    f: &impl Fn([f64; 4]) -> f64,
    start: [f64; 4],
    scale: [f64; 4],
    tolerance: f64,
    max_iterations: usize,
) -> (f64, [f64; 4]) {
    let mut point = start;
    let mut value = f(start);
    let mut scale = scale;
    for _restart in 0..3 {
        let (v, p) = simplex_run(f, point, scale, tolerance, max_iterations);
        let improved = value - v;
        if v < value {
            value = v;
            point = p;
        }
        if improved.abs() < tolerance * 1e-2 {
            break;
        }
        scale = scale.map(|s| s * 0.1);
    }
    (value, point)
}

fn simplex_run(
    f: &impl Fn([f64; 4]) -> f64,
    start: [f64; 4],
    scale: [f64; 4],
    tolerance: f64,
    max_iterations: usize,
) -> (f64, [f64; 4]) {
    const N: usize = 4;
    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    simplex.push((start, f(start)));
    for d in 0..N {
        let mut p = start;
        p[d] += scale[d];
        simplex.push((p, f(p)));
    }

    for _ in 0..max_iterations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[N].1 - simplex[0].1;
        let size = simplex[1..]
            .iter()
            .map(|(p, _)| p.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread <= tolerance * 1e-3 && size <= 1e-7 {
            break;
        }
        let mut centroid = [0.0; N];
        for (p, _) in &simplex[..N] {
            for d in 0..N {
                centroid[d] += p[d] / N as f64;
            }
        }
        let along = |t: f64| -> [f64; N] { std::array::from_fn(|d| centroid[d] + t * (simplex[N].0[d] - centroid[d])) };
        let reflected = along(-1.0);
        let fr = f(reflected);
        if fr < simplex[0].1 {
            let expanded = along(-2.0);
            let fe = f(expanded);
            simplex[N] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[N - 1].1 {
            simplex[N] = (reflected, fr);
        } else {
            let (contracted, fc) = if fr < simplex[N].1 {
                let c = along(-0.5);
                (c, f(c))
            } else {
                let c = along(0.5);
                (c, f(c))
            };
            if fc < simplex[N].1.min(fr) {
                simplex[N] = (contracted, fc);
            } else {
                let best = simplex[0].0;
                for vertex in simplex.iter_mut().skip(1) {
                    let p: [f64; N] = std::array::from_fn(|d| best[d] + 0.5 * (vertex.0[d] - best[d]));
                    *vertex = (p, f(p));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    (simplex[0].1, simplex[0].0)
}
