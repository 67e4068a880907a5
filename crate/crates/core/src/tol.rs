//! Centralised numerical tolerances.
//!
//! Three tiers: identities that hold by construction (isometry), structural
//! predicates decided from floating-point residuals, and evolution residuals
//! accumulated through propagators.

/// Structural predicates: cover verification, circulant symmetry, eigenpair
/// residual checks.
pub const STRUCTURAL: f64 = 1e-9;

/// Isometry identities such as `P P† = I` and `(P†P)² = P†P`.
pub const ISOMETRY: f64 = 1e-12;

/// Evolution residuals: quotient-walk agreement, unitarity defects.
pub const EVOLUTION: f64 = 1e-9;

/// Quantum-state norm and fibre-constancy checks.
pub const STATE: f64 = 1e-10;

/// Eigenvalues closer than this are treated as one eigenspace.
pub const EIGEN_GROUP_GAP: f64 = 1e-8;

/// Sub-multiset matching of spectra between cover and quotient.
pub const SPECTRUM_MATCH: f64 = 1e-8;

/// Degree spread below which a graph counts as regular.
pub const REGULARITY: f64 = 1e-12;

/// Largest |τ|·max|λ| accepted by the heat kernel before `e^{−λτ}` overflows.
pub const HEAT_EXP_LIMIT: f64 = 700.0;
