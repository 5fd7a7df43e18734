//! Toeplitz matrices whose symbol has a zero of fractional order at `θ = 0`,
//! `φ_α(θ) = |1 - e^{iθ}|^{2α} f₁(e^{iθ})`.
//!
//! The crate computes exact inverses through predictor polynomials and the
//! Gohberg–Semencul formula, evaluates the asymptotic kernels for inverse
//! entries and traces, and estimates the constant `c_α` in
//! `λ_min(T_N(φ_α)) ~ c_α f₁(1) / N^{2α}` two independent ways.

pub mod asymptotics;
pub mod bounds;
pub mod cli;
mod dd;
pub mod error;
pub mod quadrature;
pub mod recursion;
pub mod special;
pub mod spectral;
pub mod symbols;
pub mod toeplitz;

pub use error::{Error, Result};
pub use symbols::{CoeffKind, CoeffTable, SymbolSpec, TrigPoly};
pub use toeplitz::{GSInverse, PredictorPoly, ToeplitzMatrix};
