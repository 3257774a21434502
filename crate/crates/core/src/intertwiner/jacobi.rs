//! Jacobi identity tested coefficientwise on a finite window of `x₀^a x₁^b x₂^c (log x₂)^k`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use super::{IntertwinerError, IntertwinerTable, VertexTable};
use crate::logseries::CoeffVector;
use crate::report::Check;
use crate::scalars::{binom_int, ExactScalar, Exponent};

/// Window of `x₀`, `x₁` powers and of offsets `d` around `x₂^{−p−1}` for each stored exponent `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiWindow {
    pub a: (i64, i64),
    pub b: (i64, i64),
    pub d: (i64, i64),
}

impl Default for JacobiWindow {
    fn default() -> Self {
        JacobiWindow { a: (-3, 2), b: (-3, 2), d: (-2, 2) }
    }
}

/// Residual key `(v, i, j, a, b, c, k)`.
pub type JacobiKey = (usize, usize, usize, i64, i64, Exponent, u32);

fn sign(n: i64) -> ExactScalar {
    if n.rem_euclid(2) == 0 {
        ExactScalar::one()
    } else {
        ExactScalar::int(-1)
    }
}

fn binom(n: i64, j: i64) -> ExactScalar {
    ExactScalar::from_rat(binom_int(n, j as u32))
}

/// Residuals `T₁ − T₂ − T₃` on the given `a`, `b`, `c` and `k ≤ kmax`.
pub fn jacobi_residuals(
    y: &IntertwinerTable,
    vt: &VertexTable,
    a_range: (i64, i64),
    b_range: (i64, i64),
    cs: &BTreeSet<Exponent>,
    kmax: u32,
) -> BTreeMap<JacobiKey, CoeffVector> {
    let mut out = BTreeMap::new();
    let exps: Vec<Exponent> = y.exponents().into_iter().collect();
    let (d1, d2) = (y.w1().dim(), y.w2().dim());
    for v in 0..vt.vdim() {
        for i in 0..d1 {
            let ei = CoeffVector::basis(i);
            for jj in 0..d2 {
                let fj = CoeffVector::basis(jj);
                for a in a_range.0..=a_range.1 {
                    let n = -a - 1;
                    for b in b_range.0..=b_range.1 {
                        for c in cs {
                            for k in 0..=kmax {
                                let mut r = CoeffVector::zero();
                                for p in &exps {
                                    let Some(j) = (c + p).add_int(1).to_i64() else { continue };
                                    if j < 0 {
                                        continue;
                                    }
                                    let Some(mat) = vt.get(2, v, n - j - 1 - b) else { continue };
                                    let m = y.mode(i, jj, p, k);
                                    if !m.is_zero() {
                                        r.add_scaled(&m.apply(mat), &(&binom(n, j) * &sign(j)));
                                    }
                                }
                                for (m, mat) in vt.modes_of(1, v) {
                                    let j = m + 1 + b;
                                    if j < 0 {
                                        continue;
                                    }
                                    let p = &Exponent::int(n - j - 1) - c;
                                    let t = y.mode_lin(&ei, &fj.apply(mat), &p, k);
                                    r.add_scaled(&t, &-(&(&sign(n) * &binom(n, j)) * &sign(j)));
                                }
                                for (m, mat) in vt.modes_of(0, v) {
                                    let j = a + m + 1;
                                    if j < 0 {
                                        continue;
                                    }
                                    let nn = b + j;
                                    let p = &Exponent::int(-nn - 2) - c;
                                    let t = y.mode_lin(&ei.apply(mat), &fj, &p, k);
                                    r.add_scaled(&t, &-(&binom(nn, j) * &sign(j)));
                                }
                                if !r.is_zero() {
                                    out.insert((v, i, jj, a, b, c.clone(), k), r);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// `x₂` powers `−p−1+d` for stored `p` and `d` in the window.
pub(crate) fn c_values(exps: impl IntoIterator<Item = Exponent>, d: (i64, i64)) -> BTreeSet<Exponent> {
    let mut cs = BTreeSet::new();
    for p in exps {
        for off in d.0..=d.1 {
            cs.insert((-&p).add_int(off - 1));
        }
    }
    cs
}

pub(crate) fn check_coverage(vt: &VertexTable, w: &JacobiWindow) -> Result<(), IntertwinerError> {
    if !(w.a.0 <= -1 && -1 <= w.a.1) {
        return Err(IntertwinerError::UncoveredSupport(format!("x0 window {:?} misses a = -1", w.a)));
    }
    if !(w.d.0 <= 0 && 0 <= w.d.1) {
        return Err(IntertwinerError::UncoveredSupport(format!("offset window {:?} misses 0", w.d)));
    }
    for m in 0..3 {
        for ((v, n), _) in vt.entries(m) {
            let b = -n - 1;
            if !(w.b.0 <= b && b <= w.b.1) {
                return Err(IntertwinerError::UncoveredSupport(format!("x1 window {:?} misses b = {b} needed by mode v{v}_({n})", w.b)));
            }
        }
    }
    Ok(())
}

pub fn jacobi_check_window(y: &IntertwinerTable, vt: &VertexTable, w: &JacobiWindow) -> Result<Check, IntertwinerError> {
    vt.validate([y.w1(), y.w2(), y.w3()])?;
    check_coverage(vt, w)?;
    let cs = c_values(y.exponents(), w.d);
    let res = jacobi_residuals(y, vt, w.a, w.b, &cs, y.max_log());
    let count = (w.a.1 - w.a.0 + 1) * (w.b.1 - w.b.0 + 1) * cs.len() as i64 * (y.max_log() as i64 + 1);
    let witness =
        res.iter().next().map(|((v, i, j, a, b, c, k), r)| format!("v={v} e{i} f{j} at x0^{a} x1^{b} x2^{c} log^{k}: residual {r}"));
    Ok(Check::new(
        "jacobi",
        "Jacobi identity on window",
        res.is_empty(),
        format!("{count} coefficient(s) per vector triple, {} residual(s)", res.len()),
    )
    .with_witness(witness))
}
