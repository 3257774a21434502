use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::scalars::Exponent;

/// Name of a formal variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `var^exp (log var)^log`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Factor {
    pub var: Var,
    pub exp: Exponent,
    pub log: u32,
}

/// Product of factors in distinct variables, sorted by variable name; trivial factors are dropped.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<Factor>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn power(var: &Var, exp: Exponent, log: u32) -> Self {
        Monomial::one().with(var, exp, log)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.0.iter().map(|f| &f.var)
    }

    pub fn get(&self, var: &Var) -> (Exponent, u32) {
        match self.0.binary_search_by(|f| f.var.cmp(var)) {
            Ok(i) => (self.0[i].exp.clone(), self.0[i].log),
            Err(_) => (Exponent::zero(), 0),
        }
    }

    pub fn exponent(&self, var: &Var) -> Exponent {
        self.get(var).0
    }

    pub fn log_power(&self, var: &Var) -> u32 {
        self.get(var).1
    }

    /// Replace the factor in `var`.
    pub fn with(&self, var: &Var, exp: Exponent, log: u32) -> Self {
        let mut out = self.0.clone();
        let trivial = exp.is_zero() && log == 0;
        match out.binary_search_by(|f| f.var.cmp(var)) {
            Ok(i) => {
                if trivial {
                    out.remove(i);
                } else {
                    out[i] = Factor { var: var.clone(), exp, log };
                }
            }
            Err(i) => {
                if !trivial {
                    out.insert(i, Factor { var: var.clone(), exp, log });
                }
            }
        }
        Monomial(out)
    }

    pub fn without(&self, var: &Var) -> Self {
        self.with(var, Exponent::zero(), 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for f in &other.0 {
            let (e, k) = out.get(&f.var);
            out = out.with(&f.var, &e + &f.exp, k + f.log);
        }
        out
    }
}
