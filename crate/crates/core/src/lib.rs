//! Continuous-time quantum walks on weighted graphs and their covering-space
//! structure.
//!
//! The library is organised around a small set of ideas:
//!
//! - a weighted graph `Y` carries a Laplacian `Δ = D − A`; its heat kernel
//!   `H(τ) = e^{−Δτ}` and propagator `U(t) = e^{−iΔt}` define the walk
//!   ([`graph`], [`spectral`]);
//! - a projection `π: V(Y) → V(X)` whose pull-back operator `P` satisfies
//!   `P·A(Y) = A(X)·P` makes `Y` a covering space of `X`; walks started on
//!   fibre-constant states factor through the quotient walk on `X`
//!   ([`covering`]);
//! - Cayley graphs cover their Schreier graphs, the hypercube covers a
//!   weighted path, and cycles cover cycles ([`group`]);
//! - walks on circulant graphs diagonalise as `QFT · Φ(t) · QFT†`, which
//!   compiles to a gate sequence whose length does not depend on `t`
//!   ([`gates`]);
//! - measuring the walk Hamiltonian on coset states of `C_n` confines the
//!   outcomes to the spectrum of the hidden quotient cycle, and continued
//!   fractions recover the hidden period ([`hidden`]).
//!
//! All matrices are dense and all arithmetic is `f64` / `Complex64`; the
//! intended scale is at most a few thousand vertices.

pub mod covering;
pub mod error;
pub mod fft;
pub mod gates;
pub mod graph;
pub mod group;
pub mod hidden;
pub mod jsonfmt;
pub mod linalg;
pub mod rng;
pub mod spectral;
pub mod tol;

pub use error::{Error, Result};
pub use graph::WeightedGraph;
pub use linalg::{ComplexMatrix, Matrix, SymmetricMatrix};
pub use rng::SplitMix64;
pub use spectral::{HamiltonianKind, Propagator, QuantumState, SpectralDecomposition};

/// Hard cap on vertex counts for dense-matrix work.
pub const VERTEX_CAP: usize = 4096;
