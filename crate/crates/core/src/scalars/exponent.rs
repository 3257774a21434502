use core::fmt;
use core::ops::{Add, Neg, Sub};

use super::lattice::lattice;
use super::rat::Rat;
use super::{ExactScalar, ScalarError};

/// Complex exponent `re + im·i` with both parts in `(1/L)ℤ`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponent {
    re: Rat,
    im: Rat,
}

impl Exponent {
    pub fn new(re: Rat, im: Rat) -> Result<Self, ScalarError> {
        let l = lattice().l() as u64;
        for part in [&re, &im] {
            if !part.denom_divides(l) {
                return Err(ScalarError::LatticeViolation(alloc::format!("exponent part {part} has denominator not dividing L = {l}")));
            }
        }
        Ok(Exponent { re, im })
    }

    pub fn real(re: Rat) -> Result<Self, ScalarError> {
        Exponent::new(re, Rat::zero())
    }

    pub fn int(n: i64) -> Self {
        Exponent { re: Rat::int(n), im: Rat::zero() }
    }

    pub fn frac(num: i64, den: i64) -> Result<Self, ScalarError> {
        Exponent::real(Rat::new(num, den))
    }

    pub fn zero() -> Self {
        Exponent::int(0)
    }

    pub fn re(&self) -> &Rat {
        &self.re
    }

    pub fn im(&self) -> &Rat {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_real() && self.re.is_integer()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_real() {
            self.re.to_i64()
        } else {
            None
        }
    }

    /// Whether `self - other ∈ ℤ`.
    pub fn congruent(&self, other: &Exponent) -> bool {
        (self - other).is_integer()
    }

    /// Class representative modulo ℤ: real part reduced into `[0, 1)`.
    pub fn class_mod_z(&self) -> Exponent {
        Exponent { re: self.re.fract_part(), im: self.im.clone() }
    }

    pub fn add_int(&self, n: i64) -> Exponent {
        Exponent { re: &self.re + &Rat::int(n), im: self.im.clone() }
    }

    pub fn mul_int(&self, n: i64) -> Exponent {
        let f = Rat::int(n);
        Exponent { re: &self.re * &f, im: &self.im * &f }
    }

    pub fn to_scalar(&self) -> ExactScalar {
        let re = ExactScalar::from_rat(self.re.clone());
        if self.im.is_zero() {
            re
        } else {
            &re + &ExactScalar::imag_unit().scale_rat(&self.im)
        }
    }
}

impl Add for &Exponent {
    type Output = Exponent;
    fn add(self, rhs: &Exponent) -> Exponent {
        Exponent { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &Exponent {
    type Output = Exponent;
    fn sub(self, rhs: &Exponent) -> Exponent {
        Exponent { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent { re: -&self.re, im: -&self.im }
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::int(n)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_abs = self.im.abs();
        let im_txt = if im_abs.is_one() { alloc::string::String::from("i") } else { alloc::format!("{im_abs}*i") };
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{sign}{im_txt}")
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(f, "{}{sign}{im_txt}", self.re)
        }
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
