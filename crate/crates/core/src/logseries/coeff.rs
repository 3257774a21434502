use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::matrix::ExactMatrix;
use crate::scalars::ExactScalar;

/// Where series coefficients live.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CoeffSpace {
    Scalar,
    Vector(usize),
    /// `n × n` matrices, stored row-major; closed under multiplication.
    Matrix(usize),
}

impl CoeffSpace {
    pub fn dim(self) -> usize {
        match self {
            CoeffSpace::Scalar => 1,
            CoeffSpace::Vector(n) => n,
            CoeffSpace::Matrix(n) => n * n,
        }
    }

    pub(crate) fn product(self, rhs: CoeffSpace) -> Option<CoeffSpace> {
        match (self, rhs) {
            (CoeffSpace::Scalar, s) | (s, CoeffSpace::Scalar) => Some(s),
            (CoeffSpace::Matrix(a), CoeffSpace::Matrix(b)) if a == b => Some(self),
            _ => None,
        }
    }
}

impl fmt::Display for CoeffSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffSpace::Scalar => f.write_str("scalar"),
            CoeffSpace::Vector(n) => write!(f, "{n}-vector"),
            CoeffSpace::Matrix(n) => write!(f, "{n}x{n}-matrix"),
        }
    }
}

/// Sparse coefficient vector; absent components are zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CoeffVector(BTreeMap<usize, ExactScalar>);

impl CoeffVector {
    pub fn zero() -> Self {
        CoeffVector(BTreeMap::new())
    }

    pub fn scalar(c: ExactScalar) -> Self {
        let mut v = CoeffVector::zero();
        v.set(0, c);
        v
    }

    pub fn basis(i: usize) -> Self {
        CoeffVector::scalar_at(i, ExactScalar::one())
    }

    pub fn scalar_at(i: usize, c: ExactScalar) -> Self {
        let mut v = CoeffVector::zero();
        v.set(i, c);
        v
    }

    pub fn identity(n: usize) -> Self {
        let mut v = CoeffVector::zero();
        for i in 0..n {
            v.set(i * n + i, ExactScalar::one());
        }
        v
    }

    pub fn from_dense(d: &[ExactScalar]) -> Self {
        let mut v = CoeffVector::zero();
        for (i, c) in d.iter().enumerate() {
            v.set(i, c.clone());
        }
        v
    }

    pub fn from_matrix(m: &ExactMatrix) -> Self {
        let mut v = CoeffVector::zero();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                v.set(r * m.cols() + c, m.get(r, c).clone());
            }
        }
        v
    }

    pub fn to_matrix(&self, n: usize) -> ExactMatrix {
        ExactMatrix::from_fn(n, n, |r, c| self.get(r * n + c))
    }

    pub fn to_dense(&self, dim: usize) -> Vec<ExactScalar> {
        (0..dim).map(|i| self.get(i)).collect()
    }

    pub fn get(&self, i: usize) -> ExactScalar {
        self.0.get(&i).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, c: ExactScalar) {
        if c.is_zero() {
            self.0.remove(&i);
        } else {
            self.0.insert(i, c);
        }
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &ExactScalar)> {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_assign(&mut self, rhs: &CoeffVector) {
        for (i, c) in &rhs.0 {
            let v = &self.get(*i) + c;
            self.set(*i, v);
        }
    }

    pub fn add(&self, rhs: &CoeffVector) -> CoeffVector {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    pub fn sub(&self, rhs: &CoeffVector) -> CoeffVector {
        self.add(&rhs.scale(&ExactScalar::int(-1)))
    }

    pub fn add_scaled(&mut self, rhs: &CoeffVector, s: &ExactScalar) {
        if s.is_zero() {
            return;
        }
        for (i, c) in &rhs.0 {
            let v = &self.get(*i) + &(c * s);
            self.set(*i, v);
        }
    }

    pub fn scale(&self, s: &ExactScalar) -> CoeffVector {
        if s.is_zero() {
            return CoeffVector::zero();
        }
        CoeffVector(self.0.iter().map(|(i, c)| (*i, c * s)).collect())
    }

    /// `M·v` for a matrix acting on the first `M.cols()` components.
    pub fn apply(&self, m: &ExactMatrix) -> CoeffVector {
        let mut out = CoeffVector::zero();
        for (c, x) in &self.0 {
            for r in 0..m.rows() {
                let a = m.get(r, *c);
                if !a.is_zero() {
                    let v = &out.get(r) + &(a * x);
                    out.set(r, v);
                }
            }
        }
        out
    }

    /// Keep only components in `keep`.
    pub fn project(&self, mut keep: impl FnMut(usize) -> bool) -> CoeffVector {
        CoeffVector(self.0.iter().filter(|(i, _)| keep(**i)).map(|(i, c)| (*i, c.clone())).collect())
    }

    pub(crate) fn product(sa: CoeffSpace, a: &CoeffVector, sb: CoeffSpace, b: &CoeffVector) -> CoeffVector {
        match (sa, sb) {
            (CoeffSpace::Scalar, _) => b.scale(&a.get(0)),
            (_, CoeffSpace::Scalar) => a.scale(&b.get(0)),
            (CoeffSpace::Matrix(n), CoeffSpace::Matrix(_)) => {
                let mut out = CoeffVector::zero();
                for (ia, x) in &a.0 {
                    let (r, k) = (ia / n, ia % n);
                    for c in 0..n {
                        if let Some(y) = b.0.get(&(k * n + c)) {
                            let v = &out.get(r * n + c) + &(x * y);
                            out.set(r * n + c, v);
                        }
                    }
                }
                out
            }
            _ => unreachable!("checked by CoeffSpace::product"),
        }
    }
}

impl fmt::Debug for CoeffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for CoeffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, (i, c)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}: {c}")?;
        }
        f.write_str("}")
    }
}
