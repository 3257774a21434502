//! Dense matrices over [`ExactScalar`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use crate::scalars::{ExactScalar, Rat, ScalarError};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![ExactScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, ExactScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn diagonal(diag: &[ExactScalar]) -> Self {
        let mut m = ExactMatrix::zero(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExactScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ExactScalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn scale_rat(&self, s: &Rat) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.scale_rat(s)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ExactMatrix::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Smallest `k` with `self^k = 0`, if `self` is nilpotent.
    pub fn nilpotency_index(&self) -> Option<u32> {
        let mut p = ExactMatrix::identity(self.rows);
        for k in 0..=self.rows as u32 {
            if p.is_zero() {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }

    /// `Σ_k (s·N)^k / k!` for nilpotent `N = self`.
    pub fn exp_nilpotent(&self, s: &ExactScalar) -> Option<Self> {
        let idx = self.nilpotency_index()?;
        let scaled = self.scale(s);
        let mut acc = ExactMatrix::identity(self.rows);
        let mut term = ExactMatrix::identity(self.rows);
        for k in 1..idx {
            term = (&term * &scaled).scale_rat(&Rat::new(1, k as i64));
            acc = &acc + &term;
        }
        Some(acc)
    }

    pub fn apply(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = ExactScalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Inverse by Gauss–Jordan elimination; pivots must be monomials in `Π`.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = ExactMatrix::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| a.get(r, col).as_monomial().is_some()).ok_or_else(|| {
                if (col..n).all(|r| a.get(r, col).is_zero()) {
                    MatrixError::Singular
                } else {
                    MatrixError::Scalar(ScalarError::NonMonomialDivisor(alloc::format!("pivot in column {col}")))
                }
            })?;
            a.swap_rows(col, piv);
            inv.swap_rows(col, piv);
            let p = a.get(col, col).inverse().map_err(MatrixError::Scalar)?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.add_row_multiple(r, col, &-&f);
                    inv.add_row_multiple(r, col, &-&f);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: &ExactScalar) {
        for c in 0..self.cols {
            let v = self.get(r, c) * s;
            self.set(r, c, v);
        }
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, s: &ExactScalar) {
        for c in 0..self.cols {
            let add = self.get(src, c) * s;
            if !add.is_zero() {
                let v = self.get(dst, c) + &add;
                self.set(dst, c, v);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    NotSquare,
    Singular,
    Scalar(ScalarError),
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::NotSquare => f.write_str("matrix is not square"),
            MatrixError::Singular => f.write_str("matrix is singular"),
            MatrixError::Scalar(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for MatrixError {}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = ExactMatrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        f.write_str("]")
    }
}
