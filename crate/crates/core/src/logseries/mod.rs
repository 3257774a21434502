//! Finitely supported sums `Σ w·x^n (log x)^k` in several formal variables.

mod calculus;
mod coeff;
mod display;
mod monomial;

#[cfg(test)]
mod tests;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Neg, Sub};

pub use calculus::{
    apply_diffop, d_dx, euler_power, exp_diffop, falling_factorial, kth_derivative_closed_form, kth_derivative_series, nth_derivative,
};
pub use coeff::{CoeffSpace, CoeffVector};
pub use monomial::{Factor, Monomial, Var};

use crate::scalars::{ExactScalar, Exponent, Rat, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    UndefinedProduct(CoeffSpace, CoeffSpace),
    SpaceMismatch(CoeffSpace, CoeffSpace),
    VariableNotFresh(String),
    NotLaurentPolynomial(String),
    Unsupported(String),
    Scalar(ScalarError),
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::UndefinedProduct(a, b) => write!(f, "product of {a} and {b} coefficients is undefined"),
            SeriesError::SpaceMismatch(a, b) => write!(f, "coefficient spaces differ: {a} vs {b}"),
            SeriesError::VariableNotFresh(v) => write!(f, "variable {v} already occurs in the series"),
            SeriesError::NotLaurentPolynomial(s) => write!(f, "operator coefficient {s} is not a Laurent polynomial"),
            SeriesError::Unsupported(s) => write!(f, "unsupported: {s}"),
            SeriesError::Scalar(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SeriesError {}

impl From<ScalarError> for SeriesError {
    fn from(e: ScalarError) -> Self {
        SeriesError::Scalar(e)
    }
}

/// Finite sum of coefficient vectors times monomials, with optional per-variable truncation.
///
/// `trunc[v] = N` records that terms of `v`-degree above `N` were discarded; products and
/// sums keep the smaller order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LogSeries {
    space: CoeffSpace,
    terms: BTreeMap<Monomial, CoeffVector>,
    trunc: BTreeMap<Var, i64>,
}

impl LogSeries {
    pub fn zero(space: CoeffSpace) -> Self {
        LogSeries { space, terms: BTreeMap::new(), trunc: BTreeMap::new() }
    }

    pub fn constant(c: ExactScalar) -> Self {
        LogSeries::term(Monomial::one(), c)
    }

    pub fn one() -> Self {
        LogSeries::constant(ExactScalar::one())
    }

    /// Scalar series `c·mono`.
    pub fn term(mono: Monomial, c: ExactScalar) -> Self {
        let mut s = LogSeries::zero(CoeffSpace::Scalar);
        s.add_term(mono, CoeffVector::scalar(c));
        s
    }

    pub fn var(x: &Var) -> Self {
        LogSeries::term(Monomial::power(x, Exponent::int(1), 0), ExactScalar::one())
    }

    /// `x^n (log x)^k`.
    pub fn power(x: &Var, n: Exponent, k: u32) -> Self {
        LogSeries::term(Monomial::power(x, n, k), ExactScalar::one())
    }

    pub fn vector_term(space: CoeffSpace, mono: Monomial, v: CoeffVector) -> Self {
        let mut s = LogSeries::zero(space);
        s.add_term(mono, v);
        s
    }

    pub fn space(&self) -> CoeffSpace {
        self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CoeffVector)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &Monomial) -> CoeffVector {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// Scalar coefficient of `mono` (component 0).
    pub fn scalar_coeff(&self, mono: &Monomial) -> ExactScalar {
        self.coeff(mono).get(0)
    }

    pub fn trunc(&self) -> &BTreeMap<Var, i64> {
        &self.trunc
    }

    pub fn trunc_of(&self, v: &Var) -> Option<i64> {
        self.trunc.get(v).copied()
    }

    /// Variables occurring in terms or truncation data.
    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out: BTreeSet<Var> = self.trunc.keys().cloned().collect();
        for m in self.terms.keys() {
            out.extend(m.vars().cloned());
        }
        out
    }

    pub fn add_term(&mut self, mono: Monomial, v: CoeffVector) {
        if v.is_zero() || self.beyond_trunc(&mono) {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(cur) => {
                cur.add_assign(&v);
                if cur.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, v);
            }
        }
    }

    pub fn add_scalar_term(&mut self, mono: Monomial, c: ExactScalar) {
        self.add_term(mono, CoeffVector::scalar(c));
    }

    fn beyond_trunc(&self, mono: &Monomial) -> bool {
        self.trunc.iter().any(|(v, n)| mono.exponent(v).re() > &Rat::int(*n))
    }

    /// Discard terms of `v`-degree above `n` and remember the order.
    pub fn truncate(&self, v: &Var, n: i64) -> LogSeries {
        let mut out = self.clone();
        out.set_trunc(v, n);
        out
    }

    pub fn set_trunc(&mut self, v: &Var, n: i64) {
        let n = match self.trunc.get(v) {
            Some(&cur) => cur.min(n),
            None => n,
        };
        self.trunc.insert(v.clone(), n);
        let bound = Rat::int(n);
        self.terms.retain(|m, _| m.exponent(v).re() <= &bound);
    }

    pub fn clear_trunc(&mut self, v: &Var) {
        self.trunc.remove(v);
    }

    pub fn scale(&self, c: &ExactScalar) -> LogSeries {
        let mut out = LogSeries { space: self.space, terms: BTreeMap::new(), trunc: self.trunc.clone() };
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v.scale(c));
        }
        out
    }

    /// Multiply every term by a monomial.
    pub fn shift(&self, mono: &Monomial) -> LogSeries {
        let mut out = LogSeries { space: self.space, terms: BTreeMap::new(), trunc: self.trunc.clone() };
        for (m, v) in &self.terms {
            out.add_term(m.mul(mono), v.clone());
        }
        out
    }

    /// Apply a linear map to each coefficient, landing in `space`.
    pub fn map_coeffs(&self, space: CoeffSpace, mut f: impl FnMut(&CoeffVector) -> CoeffVector) -> LogSeries {
        let mut out = LogSeries { space, terms: BTreeMap::new(), trunc: self.trunc.clone() };
        for (m, v) in &self.terms {
            out.add_term(m.clone(), f(v));
        }
        out
    }

    /// Rebuild by sending each term to a series; results are summed.
    pub fn flat_map_terms(
        &self,
        space: CoeffSpace,
        mut f: impl FnMut(&Monomial, &CoeffVector) -> Result<LogSeries, SeriesError>,
    ) -> Result<LogSeries, SeriesError> {
        let mut out = LogSeries::zero(space);
        out.trunc = self.trunc.clone();
        for (m, v) in &self.terms {
            let piece = f(m, v)?;
            out.add_assign_checked(&piece)?;
        }
        Ok(out)
    }

    pub fn add_assign_checked(&mut self, rhs: &LogSeries) -> Result<(), SeriesError> {
        if self.space != rhs.space {
            return Err(SeriesError::SpaceMismatch(self.space, rhs.space));
        }
        for (v, n) in &rhs.trunc {
            self.set_trunc(v, *n);
        }
        for (m, v) in &rhs.terms {
            self.add_term(m.clone(), v.clone());
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &LogSeries) -> Result<LogSeries, SeriesError> {
        let mut out = self.clone();
        out.add_assign_checked(rhs)?;
        Ok(out)
    }

    /// Product, defined when one factor has scalar coefficients or both are matrix-valued.
    pub fn mul(&self, rhs: &LogSeries) -> Result<LogSeries, SeriesError> {
        let space = self.space.product(rhs.space).ok_or(SeriesError::UndefinedProduct(self.space, rhs.space))?;
        let mut out = LogSeries::zero(space);
        for (v, n) in self.trunc.iter().chain(rhs.trunc.iter()) {
            out.set_trunc(v, *n);
        }
        for (ma, va) in &self.terms {
            for (mb, vb) in &rhs.terms {
                let m = ma.mul(mb);
                if out.beyond_trunc(&m) {
                    continue;
                }
                out.add_term(m, CoeffVector::product(self.space, va, rhs.space, vb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<LogSeries, SeriesError> {
        let mut acc = match self.space {
            CoeffSpace::Matrix(n) => LogSeries::vector_term(self.space, Monomial::one(), CoeffVector::identity(n)),
            _ => LogSeries::one(),
        };
        for (v, n) in &self.trunc {
            acc.set_trunc(v, *n);
        }
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Coefficient space reinterpreted; used when a scalar series is viewed as a 1-vector.
    pub fn with_space(mut self, space: CoeffSpace) -> LogSeries {
        self.space = space;
        self
    }

    /// Select the terms whose monomial satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> LogSeries {
        let mut out = self.clone();
        out.terms.retain(|m, _| keep(m));
        out
    }
}

impl Add for &LogSeries {
    type Output = LogSeries;
    fn add(self, rhs: &LogSeries) -> LogSeries {
        self.try_add(rhs).expect("coefficient spaces must agree")
    }
}

impl Add for LogSeries {
    type Output = LogSeries;
    fn add(self, rhs: LogSeries) -> LogSeries {
        &self + &rhs
    }
}

impl Neg for &LogSeries {
    type Output = LogSeries;
    fn neg(self) -> LogSeries {
        self.scale(&ExactScalar::int(-1))
    }
}

impl Sub for &LogSeries {
    type Output = LogSeries;
    fn sub(self, rhs: &LogSeries) -> LogSeries {
        self + &(-rhs)
    }
}

impl Sub for LogSeries {
    type Output = LogSeries;
    fn sub(self, rhs: LogSeries) -> LogSeries {
        &self - &rhs
    }
}
