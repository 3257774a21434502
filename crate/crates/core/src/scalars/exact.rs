use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::cyclotomic::Cyclotomic;
use super::lattice::lattice;
use super::rat::Rat;
use super::ScalarError;

/// Laurent polynomial in the transcendental `Π = πi` with cyclotomic coefficients.
///
/// Powers of `Π` are never reduced against each other, so the ring has no
/// zero divisors but only monomials `c·Π^k` are invertible.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactScalar {
    terms: BTreeMap<i32, Cyclotomic>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        ExactScalar::from_rat(Rat::one())
    }

    pub fn int(n: i64) -> Self {
        ExactScalar::from_rat(Rat::int(n))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        ExactScalar::from_rat(Rat::new(num, den))
    }

    pub fn from_rat(r: Rat) -> Self {
        ExactScalar::monomial(Cyclotomic::from_rat(r), 0)
    }

    pub fn from_cyclotomic(c: Cyclotomic) -> Self {
        ExactScalar::monomial(c, 0)
    }

    pub fn monomial(c: Cyclotomic, pi_pow: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(pi_pow, c);
        }
        ExactScalar { terms }
    }

    /// The transcendental `Π = πi`.
    pub fn pi() -> Self {
        ExactScalar::monomial(Cyclotomic::one(), 1)
    }

    pub fn imag_unit() -> Self {
        ExactScalar::from_cyclotomic(Cyclotomic::imag_unit())
    }

    /// `e^{πi q}`; the denominator of `q` must divide `L`.
    pub fn root_of_unity(q: &Rat) -> Result<Self, ScalarError> {
        let l = lattice().l() as i64;
        let k = q * &Rat::int(l);
        let k =
            k.to_i64().ok_or_else(|| ScalarError::LatticeViolation(alloc::format!("e({q}) is not a 2L-th root of unity for L = {l}")))?;
        Ok(ExactScalar::from_cyclotomic(Cyclotomic::zeta_pow(k)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Cyclotomic)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(Cyclotomic::is_one)
    }

    pub fn as_rat(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&0).and_then(Cyclotomic::as_rat),
            _ => None,
        }
    }

    /// `(c, k)` if `self = c·Π^k` with `c ≠ 0`.
    pub fn as_monomial(&self) -> Option<(&Cyclotomic, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (c, *k))
        } else {
            None
        }
    }

    /// `(a, b)` if `self = a + b·i` with `a, b` rational.
    pub fn as_gaussian_rational(&self) -> Option<(Rat, Rat)> {
        if self.is_zero() {
            return Some((Rat::zero(), Rat::zero()));
        }
        let (c, 0) = self.as_monomial()? else {
            return None;
        };
        let a = c.coeffs().first().cloned().unwrap_or_else(Rat::zero);
        let rest = c - &Cyclotomic::from_rat(a.clone());
        let i = Cyclotomic::imag_unit();
        let idx = i.coeffs().iter().position(|r| !r.is_zero())?;
        let b = &rest.coeffs().get(idx).cloned().unwrap_or_else(Rat::zero) / &i.coeffs()[idx];
        (rest == i.scale(&b)).then_some((a, b))
    }

    /// `q` if `self = q·Π` with `q` rational (or `self = 0`).
    pub fn as_rational_pi_multiple(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        match self.as_monomial() {
            Some((c, 1)) => c.as_rat(),
            _ => None,
        }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return ExactScalar::zero();
        }
        ExactScalar { terms: self.terms.iter().map(|(k, c)| (*k, c.scale(r))).collect() }
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (c, k) = self.as_monomial().ok_or_else(|| ScalarError::NonMonomialDivisor(alloc::format!("{self}")))?;
        Ok(ExactScalar::monomial(c.inverse()?, -k))
    }

    /// Division by a monomial `c·Π^k`; any other divisor is rejected.
    pub fn div_monomial(&self, rhs: &ExactScalar) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ExactScalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn pow_int(&self, e: i64) -> Result<Self, ScalarError> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inverse()?.pow((-e) as u32))
        }
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::int(n)
    }
}

impl From<Rat> for ExactScalar {
    fn from(r: Rat) -> Self {
        ExactScalar::from_rat(r)
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        for (k, c) in &rhs.terms {
            let sum = match self.terms.get(k) {
                Some(a) => a + c,
                None => c.clone(),
            };
            if sum.is_zero() {
                self.terms.remove(k);
            } else {
                self.terms.insert(*k, sum);
            }
        }
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        *self += &(-rhs);
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for (ka, a) in &self.terms {
            for (kb, b) in &rhs.terms {
                out += &ExactScalar::monomial(a * b, ka + kb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                $tr::$m(&self, &rhs)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &ExactScalar) -> ExactScalar {
                $tr::$m(&self, rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// `m(m−1)⋯(m−k+1)/k!` for an arbitrary scalar `m`.
pub fn binom_general(m: &ExactScalar, k: u32) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for i in 0..k {
        acc = &acc * &(m - &ExactScalar::int(i as i64));
    }
    acc.scale_rat(&Rat::factorial(k).recip())
}

/// Integer binomial coefficient, valid for negative `n`.
pub fn binom_int(n: i64, k: u32) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k as i64 {
        acc = &acc * &Rat::int(n - i);
    }
    &acc / &Rat::factorial(k)
}

struct Atom<'a> {
    coeff: &'a Rat,
    zeta: usize,
    pi: i32,
}

impl fmt::Display for Atom<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors: alloc::vec::Vec<String> = alloc::vec::Vec::new();
        let mag = self.coeff.abs();
        if self.zeta != 0 {
            let q = Rat::new(self.zeta as i64, lattice().l() as i64);
            factors.push(alloc::format!("e({q})"));
        }
        match self.pi {
            0 => {}
            1 => factors.push(String::from("Pi")),
            p if p > 0 => factors.push(alloc::format!("Pi^{p}")),
            p => factors.push(alloc::format!("Pi^({p})")),
        }
        if factors.is_empty() || !mag.is_one() {
            factors.insert(0, alloc::format!("{mag}"));
        }
        f.write_str(&factors.join("*"))
    }
}

/// Terms are ordered by power of `Π`, then by power of `ζ`; roots of unity print as `e(k/L)`.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (pi, c) in &self.terms {
            for (zeta, coeff) in c.coeffs().iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let atom = Atom { coeff, zeta, pi: *pi };
                match (first, coeff.is_negative()) {
                    (true, true) => write!(f, "-{atom}")?,
                    (true, false) => write!(f, "{atom}")?,
                    (false, true) => write!(f, " - {atom}")?,
                    (false, false) => write!(f, " + {atom}")?,
                }
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
