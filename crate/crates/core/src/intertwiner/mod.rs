//! Tables of modes `(w₁)_{n;k} w₂` defining `𝒴(w₁,x)w₂ = Σ (w₁)_{n;k}w₂ x^{−n−1}(log x)^k`.

mod axioms;
mod conj;
mod derive;
pub mod fixtures;
mod jacobi;
mod ode;
mod recover;
mod solve;
mod vertex;
mod weights;

#[cfg(test)]
mod tests;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

pub use axioms::{axiom_check, axiom_check_all, axiom_residuals, Axiom};
pub use conj::{conj_formula_check, ConjFormula};
pub use derive::{
    a_r, by_congruence, by_logpower, compose_homs, l_minus1_comp_check, omega_r, shift, subst_table, x_t, x_t_via_homs,
    x_t_via_vandermonde, x_t_via_vandermonde_nodes,
};
pub use jacobi::{jacobi_check_window, jacobi_residuals, JacobiWindow};
pub use ode::{annihilating_order, ode_solution, ode_structure_check, truncated_exp_log, x_l0_ode_check};
pub use recover::recover_modes;
pub use solve::{solve_fusion_space, Constraint, FusionSpace, FusionWindow};
pub use vertex::VertexTable;
pub use weights::{weight_formulas_check, WeightFormula};

use crate::logseries::{CoeffSpace, CoeffVector, LogSeries, Monomial, SeriesError, Var};
use crate::matrix::MatrixError;
use crate::mobius::Module;
use crate::scalars::{Exponent, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntertwinerError {
    Dimension(String),
    Series(SeriesError),
    Matrix(MatrixError),
    Precondition(String),
    UncoveredSupport(String),
    NotConstant(String),
}

impl fmt::Display for IntertwinerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntertwinerError::Dimension(s) => write!(f, "dimension mismatch: {s}"),
            IntertwinerError::Series(e) => write!(f, "{e}"),
            IntertwinerError::Matrix(e) => write!(f, "{e}"),
            IntertwinerError::Precondition(s) => write!(f, "precondition failed: {s}"),
            IntertwinerError::UncoveredSupport(s) => write!(f, "window does not cover the support: {s}"),
            IntertwinerError::NotConstant(s) => write!(f, "recovered mode is not constant: {s}"),
        }
    }
}

impl core::error::Error for IntertwinerError {}

impl From<SeriesError> for IntertwinerError {
    fn from(e: SeriesError) -> Self {
        IntertwinerError::Series(e)
    }
}

impl From<ScalarError> for IntertwinerError {
    fn from(e: ScalarError) -> Self {
        IntertwinerError::Series(SeriesError::Scalar(e))
    }
}

impl From<MatrixError> for IntertwinerError {
    fn from(e: MatrixError) -> Self {
        IntertwinerError::Matrix(e)
    }
}

/// Index of the mode `(e_i)_{n;k} f_j`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ModeKey {
    pub i: usize,
    pub j: usize,
    pub n: Exponent,
    pub k: u32,
}

impl ModeKey {
    pub fn new(i: usize, j: usize, n: Exponent, k: u32) -> Self {
        ModeKey { i, j, n, k }
    }
}

/// Intertwining-operator data of type `(W₃; W₁ W₂)` on basis vectors; zero modes are not stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntertwinerTable {
    w1: Arc<Module>,
    w2: Arc<Module>,
    w3: Arc<Module>,
    modes: BTreeMap<ModeKey, CoeffVector>,
}

impl IntertwinerTable {
    pub fn new(w1: Arc<Module>, w2: Arc<Module>, w3: Arc<Module>) -> Self {
        IntertwinerTable { w1, w2, w3, modes: BTreeMap::new() }
    }

    pub fn empty_like(&self) -> Self {
        IntertwinerTable::new(self.w1.clone(), self.w2.clone(), self.w3.clone())
    }

    pub fn w1(&self) -> &Arc<Module> {
        &self.w1
    }

    pub fn w2(&self) -> &Arc<Module> {
        &self.w2
    }

    pub fn w3(&self) -> &Arc<Module> {
        &self.w3
    }

    pub fn modes(&self) -> impl Iterator<Item = (&ModeKey, &CoeffVector)> {
        self.modes.iter()
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn set(&mut self, key: ModeKey, v: CoeffVector) {
        if v.is_zero() {
            self.modes.remove(&key);
        } else {
            self.modes.insert(key, v);
        }
    }

    pub fn add(&mut self, key: ModeKey, v: &CoeffVector) {
        let cur = self.get(&key).add(v);
        self.set(key, cur);
    }

    pub fn get(&self, key: &ModeKey) -> CoeffVector {
        self.modes.get(key).cloned().unwrap_or_default()
    }

    pub fn mode(&self, i: usize, j: usize, n: &Exponent, k: u32) -> CoeffVector {
        self.modes.get(&ModeKey { i, j, n: n.clone(), k }).cloned().unwrap_or_default()
    }

    /// `(u)_{n;k} v` for arbitrary `u ∈ W₁`, `v ∈ W₂`.
    pub fn mode_lin(&self, u: &CoeffVector, v: &CoeffVector, n: &Exponent, k: u32) -> CoeffVector {
        let mut out = CoeffVector::zero();
        for (i, a) in u.components() {
            for (j, b) in v.components() {
                let m = self.mode(i, j, n, k);
                if !m.is_zero() {
                    out.add_scaled(&m, &(a * b));
                }
            }
        }
        out
    }

    /// Distinct exponents `n` with a stored mode.
    pub fn exponents(&self) -> BTreeSet<Exponent> {
        self.modes.keys().map(|k| k.n.clone()).collect()
    }

    pub fn max_log(&self) -> u32 {
        self.modes.keys().map(|k| k.k).max().unwrap_or(0)
    }

    /// `𝒴(u, x)v` as a `W₃`-valued series.
    pub fn series(&self, u: &CoeffVector, v: &CoeffVector, x: &Var) -> LogSeries {
        let mut out = LogSeries::zero(CoeffSpace::Vector(self.w3.dim()));
        for (key, m) in &self.modes {
            let a = u.get(key.i);
            let b = v.get(key.j);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            out.add_term(Monomial::power(x, -&key.n.add_int(1), key.k), m.scale(&(&a * &b)));
        }
        out
    }

    /// Read modes for `(e_i, f_j)` back from `𝒴(e_i, x) f_j`.
    pub fn set_from_series(&mut self, i: usize, j: usize, s: &LogSeries, x: &Var) -> Result<(), IntertwinerError> {
        for (m, v) in s.terms() {
            if m.factors().iter().any(|f| &f.var != x) {
                return Err(IntertwinerError::NotConstant(alloc::format!("term {m} involves other variables")));
            }
            let (e, k) = m.get(x);
            self.add(ModeKey { i, j, n: -&e.add_int(1), k }, v);
        }
        Ok(())
    }

    pub fn scale(&self, c: &crate::scalars::ExactScalar) -> Self {
        let mut out = self.empty_like();
        for (k, v) in &self.modes {
            out.set(k.clone(), v.scale(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.modes {
            out.add(k.clone(), &v.scale(&crate::scalars::ExactScalar::int(-1)));
        }
        out
    }

    pub fn add_table(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.modes {
            out.add(k.clone(), v);
        }
        out
    }

    /// First differing mode, for diagnostics.
    pub fn first_difference(&self, other: &Self) -> Option<(ModeKey, CoeffVector, CoeffVector)> {
        let keys: BTreeSet<&ModeKey> = self.modes.keys().chain(other.modes.keys()).collect();
        keys.into_iter().find_map(|k| {
            let (a, b) = (self.get(k), other.get(k));
            (a != b).then(|| (k.clone(), a, b))
        })
    }
}

impl fmt::Display for ModeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(e{})_{{{};{}}} f{}", self.i, self.n, self.k, self.j)
    }
}

/// `(M − s)^t v`.
pub(crate) fn shifted_pow(m: &crate::matrix::ExactMatrix, s: &crate::scalars::ExactScalar, t: u32, v: &CoeffVector) -> CoeffVector {
    let mut out = v.clone();
    for _ in 0..t {
        out = out.apply(m).sub(&out.scale(s));
    }
    out
}

/// Least `k` with `(M − s)^k v = 0`, if at most `bound`.
pub(crate) fn local_nilpotency(
    m: &crate::matrix::ExactMatrix,
    s: &crate::scalars::ExactScalar,
    v: &CoeffVector,
    bound: u32,
) -> Option<u32> {
    let mut cur = v.clone();
    for k in 0..=bound {
        if cur.is_zero() {
            return Some(k);
        }
        cur = cur.apply(m).sub(&cur.scale(s));
    }
    None
}
