//! Error type shared by every module.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("vertex count {requested} exceeds cap {cap}")]
    VertexCapExceeded { requested: usize, cap: usize },

    #[error("edge weight must be finite and nonnegative, got {weight}")]
    InvalidWeight { weight: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),

    #[error("invalid generating set: {0}")]
    InvalidGeneratingSet(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("paley graph requires a prime q ≡ 1 (mod 4), got {q}: {reason}")]
    PaleyPrecondition { q: u64, reason: String },

    #[error("projection is not surjective: target vertex {target} has empty fibre")]
    NonSurjectiveProjection { target: usize },

    #[error("projection map must cover every source vertex and stay in range")]
    InvalidProjection,

    #[error("not a covering map: max residual {residual:.3e}")]
    NotACover { residual: f64 },

    #[error(
        "fibre over vertex {target} is not equitable: source vertices {a} and {b} \
         see weight sums {sum_a} and {sum_b} into fibre {towards}"
    )]
    FibreNotEquitable {
        target: usize,
        a: usize,
        b: usize,
        towards: usize,
        sum_a: f64,
        sum_b: f64,
    },

    #[error("input is not an eigenpair: residual {residual:.3e}")]
    NotAnEigenpair { residual: f64 },

    #[error("eigensolver did not converge: residual {off:.3e} after {sweeps} iterations")]
    EigenSolverDidNotConverge { off: f64, sweeps: usize },

    #[error("heat kernel overflow: |τ|·max|λ| = {magnitude:.3e} exceeds limit")]
    HeatKernelOverflow { magnitude: f64 },

    #[error("first row is not a symmetric circulant: row[{k}] ≠ row[{mk}]")]
    NotSymmetricCirculant { k: usize, mk: usize },

    #[error("circulant gate compilation needs a power-of-two size, got {m}; use the dense propagator fallback")]
    DenseFallbackRequired { m: usize },

    #[error("gate register width {width} exceeds simulation cap {cap}")]
    WidthCapExceeded { width: usize, cap: usize },

    #[error("qubit index {qubit} out of range for width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },

    #[error("invalid gate angle or phase: {0}")]
    InvalidGate(String),

    #[error("hidden period {p} does not divide {n} or is out of range")]
    InvalidPeriod { p: u64, n: u64 },

    #[error("state is not normalised: ‖ψ‖ = {norm}")]
    NotNormalised { norm: f64 },

    #[error("solver exhausted {samples} samples without a stable divisor")]
    SolverExhausted { samples: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
