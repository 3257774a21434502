//! Conjugation formulas for `𝒴` by `e^{yL(−1)}`, `y^{L(0)}`, `e^{aL(0)}` and `e^{yL(1)}`.

use alloc::format;

use super::derive::{compose_homs, subst_table};
use super::{IntertwinerError, IntertwinerTable};
use crate::logseries::{CoeffSpace, CoeffVector, LogSeries, Monomial, Var};
use crate::matrix::ExactMatrix;
use crate::mobius::{exp_series, Module};
use crate::report::Check;
use crate::scalars::{binom_general, ExactScalar, Exponent, Rat};
use crate::substitution::{mobius_arg_powers, subst_x_plus_y, subst_xy};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjFormula {
    /// `e^{yL(−1)}𝒴(w,x)e^{−yL(−1)} = 𝒴(e^{yL(−1)}w,x) = 𝒴(w,x+y)` to `y`-order `order`.
    P1 { order: u32 },
    /// `y^{L(0)}𝒴(w,x)y^{−L(0)} = 𝒴(y^{L(0)}w,xy)`, exactly.
    P2,
    /// `e^{yL(1)}𝒴(w,x)e^{−yL(1)} = 𝒴(e^{y(1−yx)L(1)}(1−yx)^{−2L(0)}w, x(1−yx)^{−1})` to `y`-order `order`.
    P3 { order: u32 },
    /// `e^{aL(0)}𝒴(w,x)e^{−aL(0)} = 𝒴(e^{aL(0)}w, e^a x)` for `a ∈ ℚ·Π`, exactly.
    AL0 { a: ExactScalar },
}

impl ConjFormula {
    pub fn id(&self) -> &'static str {
        match self {
            ConjFormula::P1 { .. } => "p1",
            ConjFormula::P2 => "p2",
            ConjFormula::P3 { .. } => "p3",
            ConjFormula::AL0 { .. } => "aL0",
        }
    }
}

fn constant(dim: usize, v: CoeffVector) -> LogSeries {
    LogSeries::vector_term(CoeffSpace::Vector(dim), Monomial::one(), v)
}

/// A matrix-valued series applied to a vector-valued series.
fn op_apply(ops: &LogSeries, s: &LogSeries) -> LogSeries {
    let CoeffSpace::Matrix(n) = ops.space() else { unreachable!("operator series are matrix-valued") };
    let mut out = LogSeries::zero(s.space());
    for (m1, a) in ops.terms() {
        let mat = a.to_matrix(n);
        for (m2, v) in s.terms() {
            out.add_term(m1.mul(m2), v.apply(&mat));
        }
    }
    for (v, o) in ops.trunc().iter().chain(s.trunc().iter()) {
        let cur = out.trunc_of(v).unwrap_or(i64::MAX);
        out.set_trunc(v, cur.min(*o));
    }
    out
}

/// `𝒴(u, x)v` for vector-valued series `u`, `v` in other variables.
fn y_apply(y: &IntertwinerTable, u: &LogSeries, v: &LogSeries, x: &Var) -> LogSeries {
    let mut out = LogSeries::zero(CoeffSpace::Vector(y.w3().dim()));
    for (mu, a) in u.terms() {
        for (mv, b) in v.terms() {
            out = out + y.series(a, b, x).shift(&mu.mul(mv));
        }
    }
    out
}

fn exp_op(m: &ExactMatrix, y: &Var, order: u32, sign: i64) -> LogSeries {
    exp_series(&m.scale(&ExactScalar::int(sign)), y, order)
}

fn compare(id: &str, pairs: &[(LogSeries, LogSeries)], what: &str) -> Check {
    for (n, (a, b)) in pairs.iter().enumerate() {
        if a != b {
            let diff = a.clone() - b.clone();
            let w = diff.terms().next().map(|(m, v)| format!("{what} #{n}: difference {v} at {m}"));
            return Check::new(id, id, false, format!("{} pair(s)", pairs.len())).with_witness(w);
        }
    }
    Check::new(id, id, true, format!("{} basis pair(s)", pairs.len()))
}

fn basis_pairs(y: &IntertwinerTable) -> impl Iterator<Item = (usize, usize)> {
    let d2 = y.w2().dim();
    (0..y.w1().dim()).flat_map(move |i| (0..d2).map(move |j| (i, j)))
}

/// `(1 − yx)^{−2L(0)} e_i` up to `y`-order `order`.
fn one_minus_yx_pow(m: &Module, i: usize, x: &Var, y: &Var, order: u32) -> LogSeries {
    let xy = |k: i64| Monomial::power(x, Exponent::int(k), 0).mul(&Monomial::power(y, Exponent::int(k), 0));
    let h = m.weight(i).to_scalar();
    let minus_2h = &ExactScalar::int(-2) * &h;
    let mut p = LogSeries::zero(CoeffSpace::Scalar);
    let mut lg = LogSeries::zero(CoeffSpace::Scalar);
    for k in 0..=order as i64 {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        p.add_scalar_term(xy(k), binom_general(&minus_2h, k as u32).scale_rat(&Rat::int(sign)));
        if k >= 1 {
            lg.add_scalar_term(xy(k), ExactScalar::frac(2, k));
        }
    }
    let p = p.truncate(y, order as i64);
    let lg = lg.truncate(y, order as i64);
    // −2 log(1−yx) = Σ 2(yx)^k/k; e^{−2N log(1−yx)} terminates.
    let nil = m.nilpotent();
    let mut out = LogSeries::zero(CoeffSpace::Vector(m.dim()));
    let mut v = CoeffVector::basis(i);
    let mut pw = LogSeries::one().truncate(y, order as i64);
    let mut a = 0u32;
    while !v.is_zero() {
        let c = ExactScalar::from_rat(Rat::factorial(a).recip());
        let term = p.mul(&pw).expect("scalar").mul(&constant(m.dim(), v.scale(&c))).expect("scalar times vector");
        out = out + term;
        v = v.apply(&nil);
        pw = pw.mul(&lg).expect("scalar");
        a += 1;
    }
    out
}

pub fn conj_formula_check(y: &IntertwinerTable, which: &ConjFormula) -> Result<Check, IntertwinerError> {
    let x = Var::new("x");
    let yv = Var::new("y");
    let (w1, w2, w3) = (y.w1(), y.w2(), y.w3());
    let (d1, d2) = (w1.dim(), w2.dim());
    let id = which.id();
    match which {
        ConjFormula::P1 { order } | ConjFormula::P3 { order } => {
            let j = if matches!(which, ConjFormula::P1 { .. }) { -1 } else { 1 };
            let o = *order as i64;
            let e3 = exp_op(w3.l(j), &yv, *order, 1);
            let e2 = exp_op(w2.l(j), &yv, *order, -1);
            let mut pairs = alloc::vec::Vec::new();
            for (i, jj) in basis_pairs(y) {
                let ei = constant(d1, CoeffVector::basis(i));
                let fj = constant(d2, CoeffVector::basis(jj));
                let lhs = op_apply(&e3, &y_apply(y, &ei, &op_apply(&e2, &fj), &x)).truncate(&yv, o);
                if j == -1 {
                    let e1 = exp_op(w1.l(-1), &yv, *order, 1);
                    let mid = y_apply(y, &op_apply(&e1, &ei), &fj, &x).truncate(&yv, o);
                    let rhs = subst_x_plus_y(&y.series(&CoeffVector::basis(i), &CoeffVector::basis(jj), &x), &x, &yv, *order)?;
                    pairs.push((lhs.clone(), mid));
                    pairs.push((lhs, rhs));
                } else {
                    // u = e^{y(1−yx)L(1)} (1−yx)^{−2L(0)} e_i.
                    let base = one_minus_yx_pow(w1, i, &x, &yv, *order);
                    let mut step = LogSeries::zero(CoeffSpace::Scalar);
                    step.add_scalar_term(Monomial::power(&yv, Exponent::int(1), 0), ExactScalar::one());
                    step.add_scalar_term(
                        Monomial::power(&yv, Exponent::int(2), 0).mul(&Monomial::power(&x, Exponent::int(1), 0)),
                        ExactScalar::int(-1),
                    );
                    let step = step.truncate(&yv, o);
                    let mut u = LogSeries::zero(CoeffSpace::Vector(d1));
                    let mut cur = base;
                    let mut pw = LogSeries::one().truncate(&yv, o);
                    let mut a = 0u32;
                    while !cur.is_zero() {
                        let c = ExactScalar::from_rat(Rat::factorial(a).recip());
                        u = u + pw.mul(&cur)?.scale(&c);
                        cur = cur.map_coeffs(cur.space(), |v| v.apply(w1.l(1)));
                        pw = pw.mul(&step)?;
                        a += 1;
                    }
                    let mut rhs = LogSeries::zero(CoeffSpace::Vector(w3.dim()));
                    for (mu, uv) in u.terms() {
                        for (key, _) in y.modes() {
                            if key.j != jj || uv.get(key.i).is_zero() {
                                continue;
                            }
                            let m = y.mode_lin(&CoeffVector::basis(key.i), &CoeffVector::basis(jj), &key.n, key.k);
                            let (xp, lx) = mobius_arg_powers(&(-&key.n.add_int(1)), &yv, &x, *order);
                            let f = xp.mul(&lx.pow(key.k)?)?;
                            let vec = constant(w3.dim(), m.scale(&uv.get(key.i)));
                            rhs = rhs + f.mul(&vec)?.shift(mu);
                        }
                    }
                    pairs.push((lhs, rhs.truncate(&yv, o)));
                }
            }
            Ok(compare(id, &pairs, "basis pair"))
        }
        ConjFormula::P2 => {
            let up3 = w3.x_pm_l0_matrix(1, &yv);
            let mut pairs = alloc::vec::Vec::new();
            for (i, jj) in basis_pairs(y) {
                let ei = constant(d1, CoeffVector::basis(i));
                let v = w2.x_pm_l0(&CoeffVector::basis(jj), -1, &yv);
                let lhs = op_apply(&up3, &y_apply(y, &ei, &v, &x));
                let mut rhs = LogSeries::zero(CoeffSpace::Vector(w3.dim()));
                for (mu, uv) in w1.x_pm_l0(&CoeffVector::basis(i), 1, &yv).terms() {
                    let s = y.series(uv, &CoeffVector::basis(jj), &x);
                    rhs = rhs + subst_xy(&s, &x, &yv)?.shift(mu);
                }
                pairs.push((lhs, rhs));
            }
            Ok(compare(id, &pairs, "basis pair"))
        }
        ConjFormula::AL0 { a } => {
            let e1 = w1.e_a_l0(a)?;
            let e2inv = w2.e_a_l0(&-a.clone())?;
            let e3 = w3.e_a_l0(a)?;
            let lhs = compose_homs(y, None, Some(&e2inv), Some(&e3));
            let rhs = subst_table(&compose_homs(y, Some(&e1), None, None), a)?;
            let w = lhs.first_difference(&rhs).map(|(k, p, q)| format!("at {k}: {p} vs {q}"));
            Ok(Check::new(id, id, w.is_none(), format!("a = {a}, {} mode(s)", y.len())).with_witness(w))
        }
    }
}
