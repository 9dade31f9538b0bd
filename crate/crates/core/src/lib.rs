//! Distance-based entanglement measures for multiqubit pure states.
//!
//! The crate evaluates the Bures and geometric measures of entanglement through
//! their two-qubit closed forms `B(C)` and `G(C)` of the concurrence, and checks
//! the family of monogamy relations these measures obey on pure N-qubit states:
//!
//! * the squared-concurrence (CKW) relation,
//! * the η-power relation `E^η(A|B₁⋯B_{N−1}) ≥ Σᵢ E^η(ρ_{ABᵢ})`,
//! * the sorted, weighted relation with coefficients `i^η − (i−1)^η`,
//! * the conditional relation parameterised by `k`, `k′` and a split index `m`,
//! * the scalar lemmas on the quarter disk that the chain relies on.
//!
//! Everything is dense and sized for at most [`MAX_QUBITS`] qubits. Qubit 0 is the
//! most significant bit of a computational-basis index.
//!
//! ```
//! use monogamy_core::{make_named_state, MeasureKind, NamedFamily};
//! use monogamy_core::monogamy::check_power_monogamy;
//!
//! let w = make_named_state(NamedFamily::W, 3).unwrap();
//! let report = check_power_monogamy(&w, MeasureKind::Geometric, 1.0).unwrap();
//! assert!(report.residual > 0.0);
//! ```

pub mod bounds;
pub mod error;
pub mod measures;
pub mod monogamy;
pub mod states;
pub mod tensor;
pub mod variational;

pub use error::{Error, Result};
pub use measures::{
    b_of, concurrence_pure, concurrence_two_qubit, fidelity, g_of, measure_pure_bipartition, measure_two_qubit,
    qubit_cut_spectrum, MeasureKind, MeasureValue,
};
pub use monogamy::{
    check_ckw, check_power_monogamy, check_sorted_power, check_split_power, pairwise_measures, Inequality,
    MonogamyParams, MonogamyReport, PairProfile,
};
pub use num_complex::Complex64;
pub use states::{
    apply_channel_one_side, make_named_state, sample_channel, sample_haar_state, sample_local_unitary, DensityMatrix,
    KrausChannel, NamedFamily, StateVector,
};
pub use tensor::{
    hermitian_eig, kron, matrix_sqrt_psd, partial_trace, psd_factor, singular_values, ComplexMatrix, HermitianEig,
    Subsystem,
};

/// Largest supported register.
pub const MAX_QUBITS: usize = 8;

/// Largest supported matrix side, `2^MAX_QUBITS`.
pub const MAX_DIM: usize = 1 << MAX_QUBITS;
