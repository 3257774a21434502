//! Exact logarithmic formal calculus.
//!
//! Scalars live in `ℚ(ζ_{2L})[Π, Π⁻¹]` with `Π = πi` kept transcendental; series are finite
//! sums of `x^n (log x)^k` with exponents on the lattice `(1/L)ℤ + (1/L)ℤ·i`.
#![no_std]
extern crate alloc;

pub mod scalars;

pub use scalars::{binom_general, ExactScalar, Exponent, Rat};
pub mod combinatorics;
pub mod intertwiner;
pub mod logseries;
pub mod matrix;
pub mod mobius;
pub mod report;
pub mod substitution;
pub mod suites;

pub use logseries::{CoeffSpace, CoeffVector, LogSeries, Monomial, Var};
pub use matrix::ExactMatrix;
