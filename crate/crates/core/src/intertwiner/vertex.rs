//! Finite mode data for a vertex algebra acting on the three modules.

use alloc::collections::BTreeMap;
use alloc::format;

use super::IntertwinerError;
use crate::matrix::ExactMatrix;
use crate::mobius::Module;

/// Matrices of `v_m` on `W₁`, `W₂`, `W₃` for finitely many `(v, m)`; absent modes act as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexTable {
    vdim: usize,
    actions: [BTreeMap<(usize, i64), ExactMatrix>; 3],
}

impl VertexTable {
    pub fn new(vdim: usize) -> Self {
        VertexTable { vdim, actions: Default::default() }
    }

    /// The vacuum alone, acting by `𝟙_{−1} = id`.
    pub fn vacuum(dims: [usize; 3]) -> Self {
        let mut t = VertexTable::new(1);
        for (w, d) in dims.into_iter().enumerate() {
            t.actions[w].insert((0, -1), ExactMatrix::identity(d));
        }
        t
    }

    pub fn vdim(&self) -> usize {
        self.vdim
    }

    /// Set `v_m` on module `w ∈ {0,1,2}`.
    pub fn set(&mut self, w: usize, v: usize, m: i64, mat: ExactMatrix) {
        if mat.is_zero() {
            self.actions[w].remove(&(v, m));
        } else {
            self.actions[w].insert((v, m), mat);
        }
    }

    pub fn get(&self, w: usize, v: usize, m: i64) -> Option<&ExactMatrix> {
        self.actions[w].get(&(v, m))
    }

    /// Stored `(m, v_m)` for a fixed `v` on module `w`.
    pub fn modes_of(&self, w: usize, v: usize) -> impl Iterator<Item = (i64, &ExactMatrix)> {
        self.actions[w].range((v, i64::MIN)..=(v, i64::MAX)).map(|((_, m), a)| (*m, a))
    }

    pub fn entries(&self, w: usize) -> impl Iterator<Item = (&(usize, i64), &ExactMatrix)> {
        self.actions[w].iter()
    }

    pub fn validate(&self, mods: [&Module; 3]) -> Result<(), IntertwinerError> {
        for (w, m) in mods.into_iter().enumerate() {
            for ((v, n), a) in &self.actions[w] {
                if *v >= self.vdim {
                    return Err(IntertwinerError::Dimension(format!("vertex index {v} >= {}", self.vdim)));
                }
                if a.rows() != m.dim() || a.cols() != m.dim() {
                    return Err(IntertwinerError::Dimension(format!(
                        "v{v}_({n}) on W{} is {}x{}, module has dimension {}",
                        w + 1,
                        a.rows(),
                        a.cols(),
                        m.dim()
                    )));
                }
            }
        }
        Ok(())
    }
}
