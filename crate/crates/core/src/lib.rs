//! Braid-group representations generated by 4×4 braid-equation solutions on
//! (ℂ²)^⊗N, extraction of the pure-braid invariant subspace and its
//! dimension, verification of the braid-invariant projection formula against
//! a brute-force oracle, and braided Betti / supertrace series.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! braid words ──π──▶ operators on (ℂ²)^⊗N ──▶ invariant subspace A_N^π
//!                                                  │
//!                         projection P_U ◀─────────┤
//!                         Betti / supertrace ◀─────┘
//! ```
//!
//! * [`braid`]: words in the braid generators, free reduction, the quotient
//!   map onto the symmetric group, and the pure-braid generators x_{i,j}.
//! * [`rmatrix`]: 4×4 braid-equation solutions, the Yang–Baxter
//!   correspondence, and the four-entry catalog.
//! * [`rep`]: matrix-free application of the representation on
//!   2^N-dimensional state vectors, dense materialization, and
//!   phased-permutation extraction.
//! * [`invariant`]: the joint fixed space of the pure-braid generators, via a
//!   dense Hermitian null-space route and a phase-consistency union-find route.
//! * [`projection`]: the averaged projection formula on H₀^⊗N ⊗ (ℂ²)^⊗N and
//!   its brute-force oracle.
//! * [`betti`]: Künneth convolution, the coefficient C_N^π, Euler
//!   characteristics, and supertrace partial sums against closed forms.

pub mod betti;
pub mod braid;
pub mod invariant;
pub mod linalg;
pub mod projection;
pub mod rep;
pub mod rmatrix;

// Downstream consumers format the exact coefficients; give them the types.
pub use num_rational;

pub use betti::{
    braided_betti, c_n_pi, closed_form_reference, euler_characteristic, kunneth_convolve,
    supertrace_catalog, supertrace_partial, BettiVector, BraidedBettiResult, ClosedFormComparison,
    CoefficientSequence, ConstantTerm, SignConvention, SupertraceReport,
};
pub use braid::{pure_braid_generator, pure_generators, BraidWord, Permutation};
pub use invariant::{
    example2_support_indices, induced_sym_rep, invariant_subspace, invariant_subspace_dense,
    invariant_subspace_phased, subalgebra_check, InducedSymRep, InvariantSubspace, MethodChoice,
    SolverMethod, SparseVector, SpectralGap,
};
pub use linalg::CMatrix;
pub use projection::{
    build_u_generator, compare_projections, p_u_bruteforce, p_u_formula, ProductSpaceSpec,
    ProjectionComparison,
};
pub use rep::{
    apply_generator, apply_word, as_phased_permutation, materialize, PhasedPermutation, StateVector,
};
pub use rmatrix::{
    catalog, swap_sigma, ybe_residual, CatalogTag, Epsilon, RMatrix, ResidualReport,
};

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors across all modules: precondition violations, size guards, and
/// numerical certificate failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range for {strands} strands (valid: 1..={max})", max = strands.saturating_sub(1))]
    GeneratorIndex { index: usize, strands: usize },

    #[error("invalid exponent sign {0}; expected +1 or -1")]
    InvalidSign(i8),

    #[error("a braid word needs at least one strand")]
    NoStrands,

    #[error("pure-braid generator indices must satisfy 1 <= i <= j <= N-1; got i={i}, j={j}, N={strands}")]
    PureGeneratorRange { i: usize, j: usize, strands: usize },

    #[error("need at least {min} strands, got {strands}")]
    TooFewStrands { strands: usize, min: usize },

    #[error("images are not a bijection of 1..={0}")]
    InvalidPermutation(usize),

    #[error("theta = {theta} gives q^2 = 1, which this catalog entry excludes")]
    DegeneratePhase { theta: f64 },

    #[error("{what}: size {requested} exceeds guard {max}")]
    SizeGuard {
        what: &'static str,
        requested: usize,
        max: usize,
    },

    #[error("matrix is not a generalized permutation matrix")]
    NotGeneralizedPermutation,

    #[error("{check} residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    ResidualCheck {
        check: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("invariant-subspace compression error {error:.3e} exceeds {tolerance:.3e}; the solver basis is not invariant")]
    Compression { error: f64, tolerance: f64 },

    #[error("invariant dimension {inv_dim} exceeds algebra dimension {alg_dim}")]
    DimensionExceedsAlgebra { inv_dim: usize, alg_dim: usize },

    #[error("no closed-form supertrace is available for {0}")]
    NoClosedForm(&'static str),

    #[error("coefficient sequence covers N <= {have}, but N = {need} was requested")]
    CoefficientSequenceTooShort { have: usize, need: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eigendecomposition failed: {0}")]
    Eigensolver(String),
}

/// Tolerance constants shared across the crate.
///
/// Residual checks default to [`tol::RESIDUAL`]; callers may pass their own
/// tolerance through the `*_with` variants.
pub mod tol {
    /// Default tolerance for unitarity, braid-equation, and Yang–Baxter
    /// residuals. All of these are Frobenius norms of products of at most
    /// 8×8 double-precision matrices, so 1e-10 has several orders of margin.
    pub const RESIDUAL: f64 = 1e-10;

    /// Eigenvalue threshold separating the numerical null space of the
    /// positive semidefinite Gram operator from its complement. The operators
    /// involved have quantized spectra; retained eigenvalues sit near 1e-15
    /// and rejected ones near |q²−1|² or larger.
    pub const NULLSPACE_EIGENVALUE: f64 = 1e-8;

    /// Phase-consistency tolerance for the union-find solver: a class dies
    /// when some cycle product differs from 1 by more than this. For θ a
    /// rational multiple of π the products are exact roots of unity.
    pub const PHASE_CONSISTENCY: f64 = 1e-9;

    /// Fixed-space certificate: every returned basis vector v must satisfy
    /// ‖π(x_{i,j})v − v‖₂ below this bound for every pure generator.
    pub const FIXED_SPACE: f64 = 1e-8;

    /// |sin θ| below which q² is treated as degenerate (q² = 1) and the
    /// affected catalog entries refuse construction.
    pub const DEGENERATE_PHASE: f64 = 1e-6;

    /// Entry-modulus threshold when classifying a matrix as a generalized
    /// permutation: entries of a unitary one are exactly 0 or unit modulus.
    pub const GENERALIZED_PERMUTATION_ENTRY: f64 = 1e-10;
}
