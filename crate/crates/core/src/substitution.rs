//! Argument substitutions `x ↦ x+y`, `x·e^y`, `x·y`, `e^ζ·x`, `x⁻¹` and the Möbius argument `x(1−yx)⁻¹`.
//!
//! Each substitution is built from the binomial and logarithm expansions directly, never from
//! exponentiated differential operators, so the Taylor and scaling identities compare two
//! independent computations.

use alloc::format;
use alloc::vec::Vec;

use crate::logseries::{CoeffSpace, CoeffVector, LogSeries, Monomial, SeriesError, Var};
use crate::scalars::{binom_general, binom_int, ExactScalar, Exponent, Rat, ScalarError};

fn ensure_fresh(f: &LogSeries, x: &Var, y: &Var) -> Result<(), SeriesError> {
    if x == y || f.vars().contains(y) {
        return Err(SeriesError::VariableNotFresh(format!("{y}")));
    }
    Ok(())
}

/// `Σ c_m·m ⊗ v`: attach the coefficient vector `v` to a scalar series.
fn attach(s: &LogSeries, v: &CoeffVector, space: CoeffSpace) -> LogSeries {
    s.map_coeffs(space, |c| v.scale(&c.get(0)))
}

fn mono(v: &Var, n: Exponent, k: u32) -> Monomial {
    Monomial::power(v, n, k)
}

/// Replace each term `w·x^n(log x)^k·rest` by `w·rest·g(n, k)`.
fn substitute_terms(
    f: &LogSeries,
    x: &Var,
    mut g: impl FnMut(&Exponent, u32) -> Result<LogSeries, SeriesError>,
) -> Result<LogSeries, SeriesError> {
    let space = f.space();
    f.flat_map_terms(space, |m, v| {
        let (n, k) = m.get(x);
        let rest = m.without(x);
        let img = g(&n, k)?;
        Ok(attach(&img, v, space).shift(&rest))
    })
}

/// `Σ_{i=1}^{order} (−1)^{i−1}/i · (y/x)^i`, the expansion of `log(1 + y/x)`.
fn log_one_plus_ratio(x: &Var, y: &Var, order: u32) -> LogSeries {
    let mut s = LogSeries::zero(CoeffSpace::Scalar);
    for i in 1..=order as i64 {
        let sign = if i % 2 == 1 { 1 } else { -1 };
        s.add_scalar_term(mono(x, Exponent::int(-i), 0).mul(&mono(y, Exponent::int(i), 0)), ExactScalar::frac(sign, i));
    }
    s.truncate(y, order as i64)
}

/// `(log x + L)^k = Σ_j C(k,j)(log x)^{k−j} L^j`.
fn log_binomial(x: &Var, l_powers: &[LogSeries], k: u32) -> Result<LogSeries, SeriesError> {
    let mut s = LogSeries::zero(CoeffSpace::Scalar);
    for j in 0..=k {
        let piece = l_powers[j as usize].shift(&mono(x, Exponent::zero(), k - j)).scale(&ExactScalar::from_rat(binom_int(k as i64, j)));
        s.add_assign_checked(&piece)?;
    }
    Ok(s)
}

fn powers(base: &LogSeries, upto: u32) -> Result<Vec<LogSeries>, SeriesError> {
    let mut out = Vec::with_capacity(upto as usize + 1);
    let mut cur = LogSeries::one();
    for (v, n) in base.trunc() {
        cur.set_trunc(v, *n);
    }
    out.push(cur.clone());
    for _ in 0..upto {
        cur = cur.mul(base)?;
        out.push(cur.clone());
    }
    Ok(out)
}

fn max_log(f: &LogSeries, x: &Var) -> u32 {
    f.terms().map(|(m, _)| m.log_power(x)).max().unwrap_or(0)
}

/// `f(x+y)` expanded in nonnegative powers of `y` up to `order`.
pub fn subst_x_plus_y(f: &LogSeries, x: &Var, y: &Var, order: u32) -> Result<LogSeries, SeriesError> {
    ensure_fresh(f, x, y)?;
    let lg = log_one_plus_ratio(x, y, order);
    let lpow = powers(&lg, max_log(f, x))?;
    let mut out = substitute_terms(f, x, |n, k| {
        let mut a = LogSeries::zero(CoeffSpace::Scalar);
        let ns = n.to_scalar();
        for i in 0..=order {
            let m = mono(x, n.add_int(-(i as i64)), 0).mul(&mono(y, Exponent::int(i as i64), 0));
            a.add_scalar_term(m, binom_general(&ns, i));
        }
        a.truncate(y, order as i64).mul(&log_binomial(x, &lpow, k)?)
    })?;
    out.set_trunc(y, order as i64);
    Ok(out)
}

/// `f(x·e^y) = Σ w x^n e^{ny} (log x + y)^m`, up to `y`-order `order`.
pub fn subst_x_exp_y(f: &LogSeries, x: &Var, y: &Var, order: u32) -> Result<LogSeries, SeriesError> {
    ensure_fresh(f, x, y)?;
    let mut out = substitute_terms(f, x, |n, k| {
        let ns = n.to_scalar();
        let mut e = LogSeries::zero(CoeffSpace::Scalar);
        for a in 0..=order {
            e.add_scalar_term(mono(y, Exponent::int(a as i64), 0), ns.pow(a).scale_rat(&Rat::factorial(a).recip()));
        }
        let mut l = LogSeries::zero(CoeffSpace::Scalar);
        for j in 0..=k.min(order) {
            let m = mono(x, Exponent::zero(), k - j).mul(&mono(y, Exponent::int(j as i64), 0));
            l.add_scalar_term(m, ExactScalar::from_rat(binom_int(k as i64, j)));
        }
        Ok(e.truncate(y, order as i64).mul(&l)?.shift(&mono(x, n.clone(), 0)))
    })?;
    out.set_trunc(y, order as i64);
    Ok(out)
}

/// `f(xy) = Σ w x^n y^n (log x + log y)^m`, exactly.
pub fn subst_xy(f: &LogSeries, x: &Var, y: &Var) -> Result<LogSeries, SeriesError> {
    ensure_fresh(f, x, y)?;
    substitute_terms(f, x, |n, k| {
        let mut s = LogSeries::zero(CoeffSpace::Scalar);
        for j in 0..=k {
            let m = mono(x, n.clone(), k - j).mul(&mono(y, n.clone(), j));
            s.add_scalar_term(m, ExactScalar::from_rat(binom_int(k as i64, j)));
        }
        Ok(s)
    })
}

/// `e^{ζn}` for `ζ = qΠ`; needs a real exponent with `q·n` on the lattice.
pub fn exp_zeta_times(q: &Rat, n: &Exponent) -> Result<ExactScalar, ScalarError> {
    if q.is_zero() {
        return Ok(ExactScalar::one());
    }
    if !n.is_real() {
        return Err(ScalarError::LatticeViolation(format!("e^(({q})Pi·({n})) with non-real exponent is not exact")));
    }
    ExactScalar::root_of_unity(&(q * n.re()))
}

/// `ζ` as `q` with `ζ = qΠ`.
pub fn zeta_ratio(zeta: &ExactScalar) -> Result<Rat, SeriesError> {
    zeta.as_rational_pi_multiple()
        .ok_or_else(|| SeriesError::Unsupported(format!("scaling by e^({zeta}); only rational multiples of Pi are exact")))
}

/// `f(e^ζ x)`: `x^n ↦ e^{ζn} x^n` and `(log x)^k ↦ (ζ + log x)^k`, for `ζ ∈ ℚ·Π`.
pub fn subst_scaled_exp(f: &LogSeries, x: &Var, zeta: &ExactScalar) -> Result<LogSeries, SeriesError> {
    let q = zeta_ratio(zeta)?;
    substitute_terms(f, x, |n, k| {
        let phase = exp_zeta_times(&q, n)?;
        let mut s = LogSeries::zero(CoeffSpace::Scalar);
        for j in 0..=k {
            let c = &phase * &zeta.pow(j).scale_rat(&binom_int(k as i64, j));
            s.add_scalar_term(mono(x, n.clone(), k - j), c);
        }
        Ok(s)
    })
}

/// `f(x⁻¹)`: `x^n (log x)^m ↦ x^{−n} (−log x)^m`.
pub fn subst_x_inverse(f: &LogSeries, x: &Var) -> Result<LogSeries, SeriesError> {
    substitute_terms(f, x, |n, k| {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        Ok(LogSeries::term(mono(x, -n, k), ExactScalar::int(sign)))
    })
}

/// `((x(1−yx)⁻¹)^n, log(x(1−yx)⁻¹))` up to `y`-order `order`:
/// `Σ_k C(−n,k) x^n (−yx)^k` and `log x + Σ_{k≥1} (yx)^k/k`.
pub fn mobius_arg_powers(n: &Exponent, y: &Var, x: &Var, order: u32) -> (LogSeries, LogSeries) {
    let mneg = (-n).to_scalar();
    let mut p = LogSeries::zero(CoeffSpace::Scalar);
    let mut l = LogSeries::power(x, Exponent::zero(), 1);
    for k in 0..=order as i64 {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let m = mono(x, n.add_int(k), 0).mul(&mono(y, Exponent::int(k), 0));
        p.add_scalar_term(m.clone(), binom_general(&mneg, k as u32).scale_rat(&Rat::int(sign)));
        if k >= 1 {
            l.add_scalar_term(mono(x, Exponent::int(k), 0).mul(&mono(y, Exponent::int(k), 0)), ExactScalar::frac(1, k));
        }
    }
    (p.truncate(y, order as i64), l.truncate(y, order as i64))
}

/// `e^x − 1` up to order `order`.
pub fn exp_minus_one(x: &Var, order: u32) -> LogSeries {
    let mut s = LogSeries::zero(CoeffSpace::Scalar);
    for i in 1..=order {
        s.add_scalar_term(mono(x, Exponent::int(i as i64), 0), ExactScalar::from_rat(Rat::factorial(i).recip()));
    }
    s.truncate(x, order as i64)
}

/// `log(1 + X) = Σ_{i=1}^{order} (−1)^{i−1} X^i / i` for a truncated series `X` without constant term.
pub fn log_one_plus(big_x: &LogSeries, order: u32) -> Result<LogSeries, SeriesError> {
    let mut s = LogSeries::zero(CoeffSpace::Scalar);
    let mut p = LogSeries::one();
    for i in 1..=order as i64 {
        p = p.mul(big_x)?;
        let sign = if i % 2 == 1 { 1 } else { -1 };
        s.add_assign_checked(&p.scale(&ExactScalar::frac(sign, i)))?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests;
