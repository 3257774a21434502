//! Exact solution spaces of the axioms on a finite mode window.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::axioms::axiom_residuals;
use super::jacobi::{c_values, check_coverage, jacobi_residuals, JacobiKey, JacobiWindow};
use super::{Axiom, IntertwinerError, IntertwinerTable, ModeKey, VertexTable};
use crate::logseries::CoeffVector;
use crate::mobius::Module;
use crate::scalars::{ExactScalar, Exponent};

/// Exponents `n` and maximal log power `k` allowed for unknown modes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionWindow {
    pub exponents: Vec<Exponent>,
    pub max_log: u32,
}

impl FusionWindow {
    /// `n = h₁ + h₂ − h₃ − 1` over all weight triples.
    pub fn derived(w1: &Module, w2: &Module, w3: &Module, max_log: u32) -> Self {
        let mut ns = BTreeSet::new();
        for h1 in w1.weights() {
            for h2 in w2.weights() {
                for h3 in w3.weights() {
                    ns.insert(&(&(h1 + h2) - h3) - &Exponent::int(1));
                }
            }
        }
        FusionWindow { exponents: ns.into_iter().collect(), max_log }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    Axiom(Axiom),
    Jacobi(VertexTable, JacobiWindow),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionSpace {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub basis: Vec<IntertwinerTable>,
}

impl FusionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum EqKey {
    Axiom(Axiom, ModeKey, usize),
    Jacobi(usize, JacobiKey, usize),
}

type Row = BTreeMap<usize, ExactScalar>;

#[derive(Default)]
struct Rref {
    rows: BTreeMap<usize, Row>,
}

impl Rref {
    fn insert(&mut self, mut row: Row) -> Result<(), IntertwinerError> {
        let hits: Vec<usize> = row.keys().copied().filter(|c| self.rows.contains_key(c)).collect();
        for c in hits {
            let f = row.remove(&c).expect("present");
            for (col, a) in &self.rows[&c] {
                if *col == c {
                    continue;
                }
                let v = &row.get(col).cloned().unwrap_or_default() - &(&f * a);
                if v.is_zero() {
                    row.remove(col);
                } else {
                    row.insert(*col, v);
                }
            }
        }
        if row.is_empty() {
            return Ok(());
        }
        let Some((&p, inv)) = row.iter().find_map(|(c, a)| a.inverse().ok().map(|inv| (c, inv))) else {
            return Err(IntertwinerError::Precondition(format!("no monomial pivot among {} coefficient(s)", row.len())));
        };
        for a in row.values_mut() {
            *a = &*a * &inv;
        }
        for other in self.rows.values_mut() {
            let Some(f) = other.remove(&p) else { continue };
            for (col, a) in &row {
                if *col == p {
                    continue;
                }
                let v = &other.get(col).cloned().unwrap_or_default() - &(&f * a);
                if v.is_zero() {
                    other.remove(col);
                } else {
                    other.insert(*col, v);
                }
            }
        }
        self.rows.insert(p, row);
        Ok(())
    }
}

pub fn solve_fusion_space(
    w1: Arc<Module>,
    w2: Arc<Module>,
    w3: Arc<Module>,
    window: &FusionWindow,
    constraints: &[Constraint],
) -> Result<FusionSpace, IntertwinerError> {
    let proto = IntertwinerTable::new(w1.clone(), w2.clone(), w3.clone());
    let mut unknowns = Vec::new();
    for i in 0..w1.dim() {
        for j in 0..w2.dim() {
            for n in &window.exponents {
                for k in 0..=window.max_log {
                    for c in 0..w3.dim() {
                        unknowns.push((ModeKey::new(i, j, n.clone(), k), c));
                    }
                }
            }
        }
    }
    let mut jwin = Vec::new();
    for con in constraints {
        if let Constraint::Jacobi(vt, w) = con {
            vt.validate([&w1, &w2, &w3])?;
            check_coverage(vt, w)?;
            jwin.push(c_values(window.exponents.iter().cloned(), w.d));
        } else {
            jwin.push(BTreeSet::new());
        }
    }

    let mut eqs: BTreeMap<EqKey, Row> = BTreeMap::new();
    for (u, (key, c)) in unknowns.iter().enumerate() {
        let mut unit = proto.clone();
        unit.set(key.clone(), CoeffVector::basis(*c));
        for (ci, con) in constraints.iter().enumerate() {
            match con {
                Constraint::Axiom(a) => {
                    for (mk, r) in axiom_residuals(&unit, *a) {
                        for (comp, v) in r.components() {
                            eqs.entry(EqKey::Axiom(*a, mk.clone(), comp)).or_default().insert(u, v.clone());
                        }
                    }
                }
                Constraint::Jacobi(vt, w) => {
                    for (jk, r) in jacobi_residuals(&unit, vt, w.a, w.b, &jwin[ci], window.max_log) {
                        for (comp, v) in r.components() {
                            eqs.entry(EqKey::Jacobi(ci, jk.clone(), comp)).or_default().insert(u, v.clone());
                        }
                    }
                }
            }
        }
    }

    let equations = eqs.len();
    let mut rref = Rref::default();
    for (_, row) in eqs {
        rref.insert(row)?;
    }
    let mut basis = Vec::new();
    for f in 0..unknowns.len() {
        if rref.rows.contains_key(&f) {
            continue;
        }
        let mut t = proto.clone();
        let (key, c) = &unknowns[f];
        t.add(key.clone(), &CoeffVector::basis(*c));
        for (p, row) in &rref.rows {
            if let Some(a) = row.get(&f) {
                let (pk, pc) = &unknowns[*p];
                t.add(pk.clone(), &CoeffVector::scalar_at(*pc, -a.clone()));
            }
        }
        basis.push(t);
    }
    Ok(FusionSpace { unknowns: unknowns.len(), equations, rank: rref.rows.len(), basis })
}
