//! Exact scalars: rationals, the cyclotomic field `ℚ(ζ_{2L})` and Laurent polynomials in `Π = πi`.

mod cyclotomic;
mod exact;
mod exponent;
mod lattice;
mod rat;

use alloc::string::String;
use core::fmt;

pub use cyclotomic::Cyclotomic;
pub use exact::{binom_general, binom_int, ExactScalar};
pub use exponent::Exponent;
pub use lattice::{configure_lattice, cyclotomic_poly, lattice, Lattice, DEFAULT_LATTICE};
pub use rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    LatticeViolation(String),
    LatticeConfig(u32),
    NonMonomialDivisor(String),
    DivisionByZero,
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::LatticeViolation(m) => write!(f, "lattice violation: {m}"),
            ScalarError::LatticeConfig(l) => {
                write!(f, "cannot use lattice bound L = {l}: it must be even and fixed before first use")
            }
            ScalarError::NonMonomialDivisor(s) => write!(f, "division by non-monomial scalar {s}"),
            ScalarError::DivisionByZero => f.write_str("division by zero"),
        }
    }
}

impl core::error::Error for ScalarError {}

#[cfg(test)]
mod tests;
