//! Finite-dimensional graded spaces with an action of `L(−1), L(0), L(1)`.
//!
//! `L(0) = L(0)_s + N` where `L(0)_s` is diagonal in the given basis (the generalized
//! weights) and `N` is nilpotent.

pub mod catalog;
mod conj;
mod ops;

#[cfg(test)]
mod tests;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use conj::{conj_identity_check, ConjIdentity};
pub use ops::exp_series;

use crate::matrix::ExactMatrix;
use crate::report::{Check, Report};
use crate::scalars::{ExactScalar, Exponent};

/// `ℤ^r × ℤ/m₁ × ⋯ × ℤ/m_s`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GradingGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl GradingGroup {
    pub fn trivial() -> Self {
        GradingGroup::default()
    }

    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn normalize(&self, raw: &[i64]) -> GroupElem {
        assert_eq!(raw.len(), self.rank(), "group element has wrong length");
        let mut v = raw.to_vec();
        for (k, m) in self.torsion.iter().enumerate() {
            let i = self.free_rank + k;
            v[i] = v[i].rem_euclid(*m as i64);
        }
        GroupElem(v)
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem(alloc::vec![0; self.rank()])
    }

    pub fn add(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        let raw: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.normalize(&raw)
    }

    pub fn neg(&self, a: &GroupElem) -> GroupElem {
        let raw: Vec<i64> = a.0.iter().map(|x| -x).collect();
        self.normalize(&raw)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct GroupElem(pub Vec<i64>);

/// Basis data: one generalized weight and one group degree per basis vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedSpace {
    pub name: String,
    pub weights: Vec<Exponent>,
    pub degrees: Vec<GroupElem>,
    pub group: GradingGroup,
    /// Declared indecomposable: all weights must then be congruent modulo ℤ.
    pub indecomposable: bool,
}

impl GradedSpace {
    pub fn new(name: &str, weights: Vec<Exponent>) -> Self {
        let n = weights.len();
        GradedSpace {
            name: name.into(),
            weights,
            degrees: alloc::vec![GroupElem::default(); n],
            group: GradingGroup::trivial(),
            indecomposable: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sl2Action {
    pub lm1: ExactMatrix,
    pub l0: ExactMatrix,
    pub l1: ExactMatrix,
}

/// A graded space together with a validated `L(−1), L(0), L(1)` action.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Module {
    space: GradedSpace,
    action: Sl2Action,
    full_sl2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleError {
    pub relation: String,
    pub detail: String,
}

impl fmt::Display for ModuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "relation {} fails: {}", self.relation, self.detail)
    }
}

impl core::error::Error for ModuleError {}

/// Relation ids that a module must satisfy; `[L(1),L(-1)]=2L(0)` is reported separately.
pub const MOBIUS_RELATIONS: [&str; 7] =
    ["shape", "nilpotence", "[L(0),L(-1)]=L(-1)", "[L(0),L(1)]=-L(1)", "weight-shift", "grading", "congruence"];
pub const SL2_BRACKET: &str = "[L(1),L(-1)]=2L(0)";

fn first_nonzero(m: &ExactMatrix) -> Option<String> {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m.get(r, c).is_zero() {
                return Some(format!("entry ({r},{c}) = {}", m.get(r, c)));
            }
        }
    }
    None
}

/// Check every structural relation of `(space, action)`.
pub fn validate_sl2(space: &GradedSpace, action: &Sl2Action) -> Report {
    let mut rep = Report::new(&format!("module {}", space.name));
    let n = space.dim();
    let shape_ok = [&action.lm1, &action.l0, &action.l1].iter().all(|m| m.rows() == n && m.cols() == n)
        && space.degrees.len() == n
        && space.degrees.iter().all(|d| d.0.len() == space.group.rank());
    rep.push(Check::new("shape", "matrix and degree shapes", shape_ok, format!("dim {n}")));
    if !shape_ok {
        return rep;
    }
    let ws: Vec<ExactScalar> = space.weights.iter().map(Exponent::to_scalar).collect();
    let l0s = ExactMatrix::diagonal(&ws);
    let nil = &action.l0 - &l0s;
    let mut nil_ok = nil.nilpotency_index().is_some();
    let mut nil_w = None;
    for r in 0..n {
        for c in 0..n {
            if !nil.get(r, c).is_zero() && space.weights[r] != space.weights[c] {
                nil_ok = false;
                nil_w.get_or_insert(format!("L(0) mixes weights {} and {} at ({r},{c})", space.weights[r], space.weights[c]));
            }
        }
    }
    if nil_ok && !nil.commutator(&l0s).is_zero() {
        nil_ok = false;
    }
    if !nil_ok && nil_w.is_none() {
        nil_w = Some(String::from("L(0) − L(0)_s is not nilpotent"));
    }
    rep.push(Check::new("nilpotence", "L(0) − L(0)_s nilpotent, commuting with L(0)_s", nil_ok, String::new()).with_witness(nil_w));

    let bracket = |id: &str, lhs: ExactMatrix, rhs: &ExactMatrix| {
        let diff = &lhs - rhs;
        Check::new(id, id, diff.is_zero(), String::new()).with_witness(first_nonzero(&diff))
    };
    rep.push(bracket("[L(0),L(-1)]=L(-1)", action.l0.commutator(&action.lm1), &action.lm1));
    rep.push(bracket("[L(0),L(1)]=-L(1)", action.l0.commutator(&action.l1), &action.l1.scale(&ExactScalar::int(-1))));

    let mut shift_w = None;
    let mut grade_w = None;
    for (j, m) in [(-1i64, &action.lm1), (1, &action.l1)] {
        for r in 0..n {
            for c in 0..n {
                if m.get(r, c).is_zero() {
                    continue;
                }
                if space.weights[r] != space.weights[c].add_int(-j) {
                    shift_w.get_or_insert(format!("L({j}) entry ({r},{c}) joins weights {} and {}", space.weights[c], space.weights[r]));
                }
                if space.degrees[r] != space.degrees[c] {
                    grade_w.get_or_insert(format!("L({j}) entry ({r},{c}) changes degree"));
                }
            }
        }
    }
    for r in 0..n {
        for c in 0..n {
            if !action.l0.get(r, c).is_zero() && space.degrees[r] != space.degrees[c] {
                grade_w.get_or_insert(format!("L(0) entry ({r},{c}) changes degree"));
            }
        }
    }
    rep.push(Check::new("weight-shift", "L(±1) shifts weight by ∓1", shift_w.is_none(), String::new()).with_witness(shift_w));
    rep.push(Check::new("grading", "L(j) preserve group degree", grade_w.is_none(), String::new()).with_witness(grade_w));
    let cong_w = if space.indecomposable {
        space.weights.iter().find(|w| !w.congruent(&space.weights[0])).map(|w| format!("weight {w} not congruent to {}", space.weights[0]))
    } else {
        None
    };
    rep.push(
        Check::new("congruence", "weights of an indecomposable module congruent mod ℤ", cong_w.is_none(), String::new())
            .with_witness(cong_w),
    );
    rep.push(bracket(SL2_BRACKET, action.l1.commutator(&action.lm1), &action.l0.scale(&ExactScalar::int(2))));
    rep
}

impl Module {
    /// Validate and build; the `sl(2)` bracket `[L(1),L(−1)] = 2L(0)` is recorded, not required.
    pub fn new(space: GradedSpace, action: Sl2Action) -> Result<Self, ModuleError> {
        let rep = validate_sl2(&space, &action);
        if let Some(bad) = rep.checks.iter().find(|c| !c.pass && c.id != SL2_BRACKET) {
            return Err(ModuleError { relation: bad.id.clone(), detail: bad.witness.clone().unwrap_or_default() });
        }
        let full_sl2 = rep.find(SL2_BRACKET).is_some_and(|c| c.pass);
        Ok(Module { space, action, full_sl2 })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn action(&self) -> &Sl2Action {
        &self.action
    }

    pub fn name(&self) -> &str {
        &self.space.name
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn weight(&self, i: usize) -> &Exponent {
        &self.space.weights[i]
    }

    pub fn weights(&self) -> &[Exponent] {
        &self.space.weights
    }

    pub fn degree(&self, i: usize) -> &GroupElem {
        &self.space.degrees[i]
    }

    pub fn group(&self) -> &GradingGroup {
        &self.space.group
    }

    /// Whether `[L(1), L(−1)] = 2L(0)` holds as well.
    pub fn is_full_sl2(&self) -> bool {
        self.full_sl2
    }

    /// `L(j)` for `j ∈ {−1, 0, 1}`.
    pub fn l(&self, j: i32) -> &ExactMatrix {
        match j {
            -1 => &self.action.lm1,
            0 => &self.action.l0,
            1 => &self.action.l1,
            _ => panic!("L({j}) is not part of the sl(2) action"),
        }
    }

    pub fn l0_semisimple(&self) -> ExactMatrix {
        let ws: Vec<ExactScalar> = self.space.weights.iter().map(Exponent::to_scalar).collect();
        ExactMatrix::diagonal(&ws)
    }

    /// `N = L(0) − L(0)_s`.
    pub fn nilpotent(&self) -> ExactMatrix {
        &self.action.l0 - &self.l0_semisimple()
    }

    /// Smallest `K` with `N^K = 0`.
    pub fn nilpotency(&self) -> u32 {
        self.nilpotent().nilpotency_index().expect("validated")
    }

    /// Basis indices of generalized weight `w`.
    pub fn weight_indices<'a>(&'a self, w: &'a Exponent) -> impl Iterator<Item = usize> + 'a {
        (0..self.dim()).filter(move |&i| &self.space.weights[i] == w)
    }

    pub fn set_name(&mut self, name: &str) {
        self.space.name = name.into();
    }
}
