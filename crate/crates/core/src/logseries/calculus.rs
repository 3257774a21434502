use alloc::format;
use alloc::vec::Vec;

use super::{CoeffVector, LogSeries, Monomial, SeriesError, Var};
use crate::scalars::{ExactScalar, Exponent, Rat};

/// `d/dx x^n (log x)^m = n x^{n−1}(log x)^m + m x^{n−1}(log x)^{m−1}`, termwise.
pub fn d_dx(f: &LogSeries, x: &Var) -> LogSeries {
    let mut out = LogSeries::zero(f.space());
    for (v, n) in f.trunc() {
        out.set_trunc(v, if v == x { n - 1 } else { *n });
    }
    for (m, c) in f.terms() {
        let (n, k) = m.get(x);
        if n.is_zero() && k == 0 {
            continue;
        }
        let lowered = n.add_int(-1);
        if !n.is_zero() {
            out.add_term(m.with(x, lowered.clone(), k), c.scale(&n.to_scalar()));
        }
        if k > 0 {
            out.add_term(m.with(x, lowered, k - 1), c.scale(&ExactScalar::int(k as i64)));
        }
    }
    out
}

pub fn nth_derivative(f: &LogSeries, x: &Var, k: u32) -> LogSeries {
    let mut out = f.clone();
    for _ in 0..k {
        out = d_dx(&out, x);
    }
    out
}

fn check_laurent(p: &LogSeries, x: &Var) -> Result<(), SeriesError> {
    if p.space() != super::CoeffSpace::Scalar {
        return Err(SeriesError::NotLaurentPolynomial(format!("{p}")));
    }
    for (m, _) in p.terms() {
        let ok = m.factors().iter().all(|fac| &fac.var == x && fac.log == 0 && fac.exp.is_integer());
        if !ok {
            return Err(SeriesError::NotLaurentPolynomial(format!("{p}")));
        }
    }
    Ok(())
}

/// `p(x)·d/dx` applied to `f`, for a Laurent polynomial `p` in `x`.
pub fn apply_diffop(f: &LogSeries, p: &LogSeries, x: &Var) -> Result<LogSeries, SeriesError> {
    check_laurent(p, x)?;
    p.mul(&d_dx(f, x))
}

/// `e^{y·p(x)·d/dx} f = Σ_{k≤order} y^k (p d/dx)^k f / k!`, truncated at `y`-order `order`.
pub fn exp_diffop(f: &LogSeries, y: &Var, p: &LogSeries, x: &Var, order: u32) -> Result<LogSeries, SeriesError> {
    check_laurent(p, x)?;
    if y == x || f.vars().contains(y) {
        return Err(SeriesError::VariableNotFresh(format!("{y}")));
    }
    let mut out = LogSeries::zero(f.space());
    out.set_trunc(y, order as i64);
    let mut term = f.clone();
    for k in 0..=order {
        let piece = term.shift(&Monomial::power(y, Exponent::int(k as i64), 0)).scale(&ExactScalar::from_rat(Rat::factorial(k).recip()));
        out.add_assign_checked(&piece)?;
        if k < order {
            term = apply_diffop(&term, p, x)?;
        }
    }
    Ok(out)
}

/// `m(m−1)⋯(m−j+1)`.
pub fn falling_factorial(m: &ExactScalar, j: u32) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for i in 0..j {
        acc = &acc * &(m - &ExactScalar::int(i as i64));
    }
    acc
}

/// Coefficients `c_j` with `(d/dx)^k x^n (log x)^m = Σ_j c_j x^{n−k}(log x)^{m−j}`, `j = 0..=k`.
///
/// `c_j = m(m−1)⋯(m−j+1) · Σ_{0≤t₁<⋯<t_{k−j}<k} (n−t₁)⋯(n−t_{k−j})`.
pub fn kth_derivative_closed_form(n: &Exponent, m: &ExactScalar, k: u32) -> Vec<(u32, ExactScalar)> {
    let ns = n.to_scalar();
    // e[r] = elementary symmetric sum of degree r in n, n−1, …, n−k+1
    let mut e = alloc::vec![ExactScalar::zero(); k as usize + 1];
    e[0] = ExactScalar::one();
    for t in 0..k as usize {
        let val = &ns - &ExactScalar::int(t as i64);
        for r in (1..=t + 1).rev() {
            let add = &e[r - 1] * &val;
            e[r] += &add;
        }
    }
    (0..=k).map(|j| (j, &falling_factorial(m, j) * &e[(k - j) as usize])).collect()
}

/// The closed form assembled as a series; requires an integer log power.
pub fn kth_derivative_series(x: &Var, n: &Exponent, m: u32, k: u32) -> LogSeries {
    let mut out = LogSeries::zero(super::CoeffSpace::Scalar);
    for (j, c) in kth_derivative_closed_form(n, &ExactScalar::int(m as i64), k) {
        if j <= m {
            out.add_term(Monomial::power(x, n.add_int(-(k as i64)), m - j), CoeffVector::scalar(c));
        }
    }
    out
}

/// `(x d/dx − a)^m f`.
pub fn euler_power(f: &LogSeries, x: &Var, a: &ExactScalar, m: u32) -> LogSeries {
    let xv = Monomial::power(x, Exponent::int(1), 0);
    let mut out = f.clone();
    for _ in 0..m {
        out = &d_dx(&out, x).shift(&xv) - &out.scale(a);
    }
    out
}
