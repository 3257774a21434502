use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::lattice::lattice;
use super::rat::Rat;
use super::ScalarError;

/// Element of `ℚ(ζ_{2L})` in the power basis `1, ζ, …, ζ^{φ(2L)-1}`.
///
/// Coefficients are stored without trailing zeros, so equality is structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Cyclotomic(Vec<Rat>);

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic(Vec::new())
    }

    pub fn one() -> Self {
        Cyclotomic::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut c = Cyclotomic(vec![r]);
        c.trim();
        c
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        let phi = lattice().degree();
        if coeffs.len() > phi {
            let mut acc = Cyclotomic::zero();
            for (k, c) in coeffs.drain(..).enumerate() {
                acc = &acc + &Cyclotomic::zeta_pow(k as i64).scale(&c);
            }
            return acc;
        }
        let mut c = Cyclotomic(coeffs);
        c.trim();
        c
    }

    /// `ζ^k` for the primitive `2L`-th root of unity `ζ = e^{πi/L}`.
    pub fn zeta_pow(k: i64) -> Self {
        let lat = lattice();
        let idx = k.rem_euclid(lat.order() as i64) as usize;
        Cyclotomic::from_coeffs(lat.power(idx).iter().map(|&c| Rat::int(c)).collect())
    }

    /// `i = ζ^{L/2}`.
    pub fn imag_unit() -> Self {
        Cyclotomic::zeta_pow(lattice().l() as i64 / 2)
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Rat::is_zero) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        match self.0.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic(self.0.iter().map(|c| c * r).collect())
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(r) = self.as_rat() {
            return Ok(Cyclotomic::from_rat(r.recip()));
        }
        // Solve (self · b) = 1 using the multiplication matrix of self.
        let phi = lattice().degree();
        let mut m: Vec<Vec<Rat>> = vec![vec![Rat::zero(); phi + 1]; phi];
        for k in 0..phi {
            let col = self * &Cyclotomic::zeta_pow(k as i64);
            for (row, c) in m.iter_mut().zip(col.0.iter()) {
                row[k] = c.clone();
            }
        }
        m[0][phi] = Rat::one();
        for col in 0..phi {
            let piv = (col..phi).find(|&r| !m[r][col].is_zero()).ok_or(ScalarError::DivisionByZero)?;
            m.swap(col, piv);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..phi {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (x, p) in m[r].iter_mut().zip(pivot_row.iter()) {
                        *x = &*x - &(&f * p);
                    }
                }
            }
        }
        Ok(Cyclotomic::from_coeffs(m.into_iter().map(|row| row[phi].clone()).collect()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclotomic::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let n = core::cmp::max(self.0.len(), rhs.0.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.0.get(k), rhs.0.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        let mut c = Cyclotomic(out);
        c.trim();
        c
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        if self.0.len() == 1 {
            return rhs.scale(&self.0[0]);
        }
        if rhs.0.len() == 1 {
            return self.scale(&rhs.0[0]);
        }
        let lat = lattice();
        let phi = lat.degree();
        let mut raw = vec![Rat::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += &(a * b);
                }
            }
        }
        let mut out = vec![Rat::zero(); phi];
        for (k, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < phi {
                out[k] += &c;
            } else {
                for (t, &p) in lat.power(k).iter().enumerate() {
                    if p != 0 {
                        out[t] += &(&c * &Rat::int(p));
                    }
                }
            }
        }
        let mut c = Cyclotomic(out);
        c.trim();
        c
    }
}
